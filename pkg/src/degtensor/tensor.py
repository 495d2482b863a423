"""Dense tensors over a metric space, with the contractions the metric allows.

Tensors store exact components in row-major order, contravariant axes first,
optionally tagged with the basis the components refer to (None means ambient
coordinates). Mixed contraction and index lowering always make sense; raising
and the contraction of two covariant slots need the metric's inverse, which a
degenerate metric does not have. Those operations are therefore gated: they
are only performed on covariant slots that vanish against the radical, where
the canonical dual pairing makes the result independent of every auxiliary
choice. Slot numbers are 1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (
    DimensionMismatch,
    NotRadicalAnnihilator,
    SingularBasis,
    SlotOutOfRange,
    SpaceMismatch,
)
from .exact_linalg import Matrix, Vector, dot, inverse, is_invertible, vector as as_vector
from .space import Space, orthogonal_radical_basis, radical
from .dual import Covector, ScreenDecomposition, annih_view, choose_screen, extend_cometric

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Tensor:
    """A dense tensor of type (contra, cova) over a space.

    Immutable; all operations return new tensors.
    """

    space: Space
    contra: int
    cova: int
    components: tuple[Fraction, ...]
    basis: Matrix | None = None

    def __post_init__(self):
        if self.contra < 0 or self.cova < 0:
            raise DimensionMismatch("tensor type must be nonnegative")
        n = self.space.n
        expected = n ** (self.contra + self.cova)
        if len(self.components) != expected:
            raise DimensionMismatch(
                f"type ({self.contra},{self.cova}) tensor over dimension {n} needs "
                f"{expected} components, got {len(self.components)}"
            )
        if self.basis is not None and (self.basis.rows != n or self.basis.cols != n):
            raise DimensionMismatch("basis matrix must be n x n")

    @property
    def order(self) -> int:
        return self.contra + self.cova

    @property
    def dim(self) -> int:
        return self.space.n

    def get(self, *idx: int) -> Fraction:
        """Component at a full index tuple (contravariant indices first, 0-based)."""
        if len(idx) != self.order:
            raise DimensionMismatch(f"need {self.order} indices, got {len(idx)}")
        return self.components[_flat(idx, _strides(self.dim, self.order))]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.components)

    def __add__(self, other: "Tensor") -> "Tensor":
        _check_same_frame(self, other)
        if (self.contra, self.cova) != (other.contra, other.cova):
            raise DimensionMismatch("tensor types differ")
        comps = tuple(a + b for a, b in zip(self.components, other.components))
        return Tensor(self.space, self.contra, self.cova, comps, self.basis)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def __neg__(self) -> "Tensor":
        return Tensor(self.space, self.contra, self.cova, tuple(-x for x in self.components), self.basis)

    def scale(self, c: int | Fraction) -> "Tensor":
        c = Fraction(c)
        return Tensor(self.space, self.contra, self.cova, tuple(c * x for x in self.components), self.basis)


def _strides(n: int, order: int) -> tuple[int, ...]:
    return tuple(n ** (order - 1 - a) for a in range(order))


def _flat(idx: Sequence[int], strides: Sequence[int]) -> int:
    return sum(i * s for i, s in zip(idx, strides))


def _check_same_frame(a: Tensor, b: Tensor) -> None:
    if a.space != b.space or a.basis != b.basis:
        raise SpaceMismatch("tensors live over different spaces or bases")


def _contra_axis(t: Tensor, k: int) -> int:
    if not 1 <= k <= t.contra:
        raise SlotOutOfRange(f"contravariant slot {k} of a type ({t.contra},{t.cova}) tensor")
    return k - 1


def _cova_axis(t: Tensor, l: int) -> int:
    if not 1 <= l <= t.cova:
        raise SlotOutOfRange(f"covariant slot {l} of a type ({t.contra},{t.cova}) tensor")
    return t.contra + l - 1


def _gram_in_frame(t: Tensor) -> Matrix:
    g = t.space.gram
    if t.basis is None:
        return g
    return t.basis.T @ g @ t.basis


def _vector_to_frame(t: Tensor, v: Vector) -> Vector:
    """Ambient coordinates of a vector re-expressed in the tensor's basis."""
    if t.basis is None:
        return v
    return inverse(t.basis).apply(v)


def _covector_to_frame(t: Tensor, row: Vector) -> Vector:
    """Ambient components of a covector re-expressed in the tensor's basis."""
    if t.basis is None:
        return row
    return t.basis.left_apply(row)


def _sum_axis(comp: Sequence[Fraction], n: int, order: int, axis: int, weights: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Contract one axis against a weight vector; drops that axis."""
    strides = _strides(n, order)
    rem = [a for a in range(order) if a != axis]
    s = strides[axis]
    out: list[Fraction] = []
    for ridx in itertools.product(range(n), repeat=len(rem)):
        base = sum(v * strides[a] for a, v in zip(rem, ridx))
        acc = _ZERO
        for i in range(n):
            w = weights[i]
            if w:
                c = comp[base + i * s]
                if c:
                    acc += w * c
        out.append(acc)
    return tuple(out)


def _trace_axes(comp: Sequence[Fraction], n: int, order: int, ax1: int, ax2: int) -> tuple[Fraction, ...]:
    """Plain index-pair trace; drops both axes."""
    strides = _strides(n, order)
    rem = [a for a in range(order) if a not in (ax1, ax2)]
    step = strides[ax1] + strides[ax2]
    out: list[Fraction] = []
    for ridx in itertools.product(range(n), repeat=len(rem)):
        base = sum(v * strides[a] for a, v in zip(rem, ridx))
        acc = _ZERO
        for i in range(n):
            c = comp[base + i * step]
            if c:
                acc += c
        out.append(acc)
    return tuple(out)


def _form_contract_axes(
    comp: Sequence[Fraction], n: int, order: int, ax1: int, ax2: int, form: Matrix
) -> tuple[Fraction, ...]:
    """Contract an axis pair against a bilinear form's matrix; drops both axes."""
    strides = _strides(n, order)
    rem = [a for a in range(order) if a not in (ax1, ax2)]
    s1, s2 = strides[ax1], strides[ax2]
    rows = form.to_rows()
    out: list[Fraction] = []
    for ridx in itertools.product(range(n), repeat=len(rem)):
        base = sum(v * strides[a] for a, v in zip(rem, ridx))
        acc = _ZERO
        for i in range(n):
            row = rows[i]
            ci = base + i * s1
            for j in range(n):
                w = row[j]
                if w:
                    c = comp[ci + j * s2]
                    if c:
                        acc += w * c
        out.append(acc)
    return tuple(out)


def _apply_axis(comp: Sequence[Fraction], n: int, order: int, axis: int, m_rows: Sequence[Sequence[Fraction]]) -> tuple[Fraction, ...]:
    """Replace an axis by its image under a matrix: out[..p..] = sum_i M[p][i] in[..i..]."""
    strides = _strides(n, order)
    s = strides[axis]
    block = s * n
    total = len(comp)
    out = [_ZERO] * total
    for start in range(0, total, block):
        for off in range(s):
            base = start + off
            col = [comp[base + i * s] for i in range(n)]
            for p in range(n):
                acc = _ZERO
                row = m_rows[p]
                for i in range(n):
                    c = col[i]
                    if c:
                        acc += row[i] * c
                out[base + p * s] = acc
    return tuple(out)


def from_vector(space: Space, v: Sequence, basis: Matrix | None = None) -> Tensor:
    """A (1,0) tensor from coordinates in the given frame."""
    v = as_vector(v)
    if len(v) != space.n:
        raise DimensionMismatch("vector length does not match the space")
    return Tensor(space, 1, 0, v, basis)


def from_covector(omega: Covector) -> Tensor:
    """A (0,1) tensor from a covector on ambient coordinates."""
    return Tensor(omega.space, 0, 1, omega.components, None)


def gram_tensor(space: Space) -> Tensor:
    """The metric itself as a (0,2) tensor on ambient coordinates."""
    return Tensor(space, 0, 2, space.gram.entries, None)


def tensor_product(a: Tensor, b: Tensor) -> Tensor:
    """Outer product; a's axes come first inside each variance block."""
    _check_same_frame(a, b)
    n = a.dim
    r, s = a.contra + b.contra, a.cova + b.cova
    order = r + s
    a_strides = _strides(n, a.order)
    b_strides = _strides(n, b.order)
    comps: list[Fraction] = []
    for idx in itertools.product(range(n), repeat=order):
        ia = idx[: a.contra]
        ib = idx[a.contra : r]
        ja = idx[r : r + a.cova]
        jb = idx[r + a.cova :]
        av = a.components[_flat(ia + ja, a_strides)]
        if av:
            comps.append(av * b.components[_flat(ib + jb, b_strides)])
        else:
            comps.append(_ZERO)
    return Tensor(a.space, r, s, tuple(comps), a.basis)


def contract_mixed(t: Tensor, k: int, l: int) -> Tensor:
    """Trace of the k-th contravariant slot against the l-th covariant slot."""
    ax1 = _contra_axis(t, k)
    ax2 = _cova_axis(t, l)
    comps = _trace_axes(t.components, t.dim, t.order, ax1, ax2)
    return Tensor(t.space, t.contra - 1, t.cova - 1, comps, t.basis)


def insert_vector(t: Tensor, l: int, v: Sequence) -> Tensor:
    """Plug a vector (coordinates in the tensor's frame) into covariant slot l."""
    axis = _cova_axis(t, l)
    v = as_vector(v)
    if len(v) != t.dim:
        raise DimensionMismatch("vector length does not match the space")
    comps = _sum_axis(t.components, t.dim, t.order, axis, v)
    return Tensor(t.space, t.contra, t.cova - 1, comps, t.basis)


def insert_covector(t: Tensor, k: int, row: Sequence) -> Tensor:
    """Plug a covector (components in the tensor's frame) into contravariant slot k."""
    axis = _contra_axis(t, k)
    row = as_vector(row)
    if len(row) != t.dim:
        raise DimensionMismatch("covector length does not match the space")
    comps = _sum_axis(t.components, t.dim, t.order, axis, row)
    return Tensor(t.space, t.contra - 1, t.cova, comps, t.basis)


def lower_index(t: Tensor, k: int) -> Tensor:
    """Lower the k-th contravariant slot with the metric.

    The new covariant slot is appended after the existing covariant slots;
    use `reorder_slots` when another placement is needed. The result is zero
    exactly when slot k takes values in the radical.
    """
    ax = _contra_axis(t, k)
    g_rows = _gram_in_frame(t).to_rows()
    n, order = t.dim, t.order
    strides = _strides(n, order)
    rem = [a for a in range(order) if a != ax]
    s = strides[ax]
    out: list[Fraction] = []
    # output axes: remaining input axes in order, then the new covariant index
    for ridx in itertools.product(range(n), repeat=len(rem)):
        base = sum(v * strides[a] for a, v in zip(rem, ridx))
        for q in range(n):
            row = g_rows[q]
            acc = _ZERO
            for i in range(n):
                w = row[i]
                if w:
                    c = t.components[base + i * s]
                    if c:
                        acc += w * c
            out.append(acc)
    return Tensor(t.space, t.contra - 1, t.cova + 1, tuple(out), t.basis)


def is_radical_slot(t: Tensor, k: int) -> bool:
    """Does the k-th contravariant slot take values in the radical?

    Checked by contracting the slot against every basis covector of the flat
    image; all contractions must vanish.
    """
    _contra_axis(t, k)
    for omega in annih_view(t.space).basis:
        probe = _covector_to_frame(t, omega.components)
        if not insert_covector(t, k, probe).is_zero():
            return False
    return True


def is_radannih_slot(t: Tensor, l: int) -> bool:
    """Does the l-th covariant slot vanish on every radical vector?"""
    _cova_axis(t, l)
    for z in radical(t.space).basis:
        probe = _vector_to_frame(t, z)
        if not insert_vector(t, l, probe).is_zero():
            return False
    return True


def _extended_cometric_in_frame(t: Tensor, sd: ScreenDecomposition) -> Matrix:
    gstar = extend_cometric(t.space, sd)
    if t.basis is None:
        return gstar
    binv = inverse(t.basis)
    return binv @ gstar @ binv.T


def contract_covariant(t: Tensor, k: int, l: int, screen: ScreenDecomposition | None = None) -> Tensor:
    """Contract two covariant slots through the canonical dual pairing.

    Defined only when both slots vanish against the radical; then the result
    does not depend on the screen used to extend the pairing, nor on the
    basis. Anything else is refused rather than silently screen-dependent.
    Remaining covariant slots keep their relative order.
    """
    if not 1 <= k < l <= t.cova:
        raise SlotOutOfRange(
            f"covariant slot pair ({k},{l}) of a type ({t.contra},{t.cova}) tensor; need k < l"
        )
    ax1 = _cova_axis(t, k)
    ax2 = _cova_axis(t, l)
    if not is_radannih_slot(t, k):
        raise NotRadicalAnnihilator(k)
    if not is_radannih_slot(t, l):
        raise NotRadicalAnnihilator(l)
    if screen is None:
        screen = choose_screen(t.space)
    elif screen.space != t.space:
        raise SpaceMismatch("screen belongs to a different space")
    form = _extended_cometric_in_frame(t, screen)
    comps = _form_contract_axes(t.components, t.dim, t.order, ax1, ax2, form)
    return Tensor(t.space, t.contra, t.cova - 2, comps, t.basis)


def contract_with_metric(t: Tensor, k: int, v: Sequence) -> Tensor:
    """Pair slot k with the lowered vector via the covariant contraction.

    For a slot that vanishes against the radical this must equal plugging
    the vector straight into the slot (`insert_vector`), which is the
    verification the tests run.
    """
    axis_check = _cova_axis(t, k)  # noqa: F841  (raises early on bad slot)
    if not is_radannih_slot(t, k):
        raise NotRadicalAnnihilator(k)
    v = as_vector(v)
    if len(v) != t.dim:
        raise DimensionMismatch("vector length does not match the space")
    g_frame = _gram_in_frame(t)
    fv = Tensor(t.space, 0, 1, g_frame.apply(v), t.basis)
    return contract_covariant(tensor_product(t, fv), k, t.cova + 1)


def raise_index_screen(t: Tensor, l: int, sd: ScreenDecomposition | None = None) -> Tensor:
    """Raise covariant slot l using a screen (canonical screen by default).

    Only slots that vanish against the radical may be raised; then lowering
    the new slot restores the original tensor (with the restored covariant
    slot in last position; `reorder_slots` puts it back). Raisings through
    different screens differ at most by radical values in the new slot.
    """
    ax = _cova_axis(t, l)
    if not is_radannih_slot(t, l):
        raise NotRadicalAnnihilator(l)
    if sd is None:
        sd = choose_screen(t.space)
    elif sd.space != t.space:
        raise SpaceMismatch("screen belongs to a different space")
    form_rows = _extended_cometric_in_frame(t, sd).to_rows()
    n, order = t.dim, t.order
    strides = _strides(n, order)
    rem = [a for a in range(order) if a != ax]
    s = strides[ax]
    r = t.contra
    # output axes: old contravariant axes, new contravariant axis, old
    # covariant axes without l
    out: list[Fraction] = []
    rem_contra = rem[:r]
    rem_cova = rem[r:]
    for cidx in itertools.product(range(n), repeat=r):
        cbase = sum(v * strides[a] for a, v in zip(rem_contra, cidx))
        for p in range(n):
            row = form_rows[p]
            for vidx in itertools.product(range(n), repeat=len(rem_cova)):
                base = cbase + sum(v * strides[a] for a, v in zip(rem_cova, vidx))
                acc = _ZERO
                for j in range(n):
                    w = row[j]
                    if w:
                        c = t.components[base + j * s]
                        if c:
                            acc += w * c
                out.append(acc)
    return Tensor(t.space, r + 1, t.cova - 1, tuple(out), t.basis)


def reorder_slots(t: Tensor, contra_order: Sequence[int] | None = None, cova_order: Sequence[int] | None = None) -> Tensor:
    """Permute slots: new slot i holds what old slot order[i] held (1-based)."""
    contra_order = tuple(contra_order) if contra_order is not None else tuple(range(1, t.contra + 1))
    cova_order = tuple(cova_order) if cova_order is not None else tuple(range(1, t.cova + 1))
    if sorted(contra_order) != list(range(1, t.contra + 1)) or sorted(cova_order) != list(range(1, t.cova + 1)):
        raise SlotOutOfRange("slot orders must be permutations of the existing slots")
    axis_source = [k - 1 for k in contra_order] + [t.contra + l - 1 for l in cova_order]
    n, order = t.dim, t.order
    strides = _strides(n, order)
    comps: list[Fraction] = []
    for idx in itertools.product(range(n), repeat=order):
        src = [0] * order
        for out_axis, in_axis in enumerate(axis_source):
            src[in_axis] = idx[out_axis]
        comps.append(t.components[_flat(src, strides)])
    return Tensor(t.space, t.contra, t.cova, tuple(comps), t.basis)


def change_basis(t: Tensor, b: Matrix) -> Tensor:
    """Re-express the components in a new frame given relative to the current one.

    Columns of b are the new basis vectors written in the tensor's current
    frame; contravariant axes transform with the inverse, covariant axes with
    the transpose. Changing by b and then by its inverse restores the tensor
    exactly.
    """
    n = t.dim
    if b.rows != n or b.cols != n:
        raise DimensionMismatch("basis matrix must be n x n")
    if not is_invertible(b):
        raise SingularBasis("change of basis must be invertible")
    binv_rows = inverse(b).to_rows()
    bt_rows = b.T.to_rows()
    comps: Sequence[Fraction] = t.components
    for axis in range(t.contra):
        comps = _apply_axis(comps, n, t.order, axis, binv_rows)
    for axis in range(t.contra, t.order):
        comps = _apply_axis(comps, n, t.order, axis, bt_rows)
    new_basis = b if t.basis is None else t.basis @ b
    if new_basis.entries == Matrix.identity(n).entries:
        new_basis = None
    return Tensor(t.space, t.contra, t.cova, tuple(comps), new_basis)
