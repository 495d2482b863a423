"""The flat map, the radical-annihilator space and its canonical cometric.

Lowering an index with a degenerate metric is not invertible, so the dual
space carries no canonical inverse metric. What does exist canonically is a
nondegenerate pairing on the image of the flat map (the covectors that kill
the radical). This module computes that pairing, dual and annihilator bases,
the quotient by the radical, and the non-canonical extensions of the pairing
to the whole dual space that a choice of screen complement provides.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    BadScreen,
    DimensionMismatch,
    NotOrthogonal,
    NotRadicalAnnihilator,
    SingularBasis,
)
from .exact_linalg import (
    Matrix,
    Vector,
    dot,
    inverse,
    kernel,
    rank,
    rref,
    solve,
    vector as as_vector,
)
from .space import RadicalBasis, Space, Subspace, orthogonal_radical_basis


@dataclass(frozen=True)
class Covector:
    """A linear form, stored as its coordinate row on the ambient basis."""

    space: Space
    components: Vector

    def __post_init__(self):
        if len(self.components) != self.space.n:
            raise DimensionMismatch(
                f"covector of length {len(self.components)} on a {self.space.n}-dimensional space"
            )

    def __call__(self, v: Sequence) -> Fraction:
        v = as_vector(v)
        return dot(self.components, v)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.components)


def flat(space: Space, v: Sequence) -> Covector:
    """Index lowering: the covector pairing u against v through the metric.

    Zero exactly on vectors in the radical.
    """
    v = as_vector(v)
    if len(v) != space.n:
        raise DimensionMismatch(f"vector of length {len(v)} in a {space.n}-dimensional space")
    return Covector(space, space.gram.apply(v))


def in_flat_image(space: Space, omega: Covector) -> bool:
    """Does the covector lie in the image of the flat map?

    Equivalently: does it annihilate the radical?
    """
    return solve(space.gram, omega.components) is not None


@dataclass(frozen=True)
class AnnihView:
    """The image of the flat map with its canonical nondegenerate pairing.

    `basis` is the flat of the non-radical canonical diagonalizing vectors;
    `cometric` holds the pairings of those basis covectors, which equal the
    self-products of the vectors they came from.
    """

    space: Space
    basis: tuple[Covector, ...]
    cometric: Matrix


def annih_view(space: Space) -> AnnihView:
    rb = orthogonal_radical_basis(space)
    r = rb.radical_count
    nonrad = rb.vectors[r:]
    basis = tuple(flat(space, v) for v in nonrad)
    alphas = rb.alphas()[r:]
    return AnnihView(space, basis, Matrix.diagonal(alphas))


def cometric_value(space: Space, omega: Covector, tau: Covector) -> Fraction:
    """The canonical pairing of two covectors in the image of the flat map.

    Solves the metric for preimages, so the value is basis independent by
    construction. Raises NotRadicalAnnihilator when an argument is outside
    the flat image, where no canonical value exists.
    """
    u = solve(space.gram, omega.components)
    if u is None:
        raise NotRadicalAnnihilator(1)
    if solve(space.gram, tau.components) is None:
        raise NotRadicalAnnihilator(2)
    # tau(u) = <u, preimage of tau>, independent of which preimages exist
    return dot(tau.components, u)


def cometric_in_dual_basis(space: Space, basis: RadicalBasis) -> tuple[Fraction, ...]:
    """Diagonal of the canonical pairing in the dual of an orthogonal radical basis.

    The dual covectors of the non-radical vectors pair to the reciprocals of
    the vectors' self-products; radical positions carry no entry at all.
    """
    if basis.parent != space:
        raise DimensionMismatch("basis does not belong to the given space")
    gb = basis.gram_in_basis()
    if not gb.is_diagonal():
        raise NotOrthogonal("basis vectors outside the radical must be mutually orthogonal")
    alphas = gb.diagonal_entries()
    if any(a == 0 for a in alphas[basis.radical_count :]) or any(
        a != 0 for a in alphas[: basis.radical_count]
    ):
        raise NotOrthogonal("radical vectors must come first and only they may have zero self-product")
    return tuple(1 / a for a in alphas[basis.radical_count :])


def annihilator_of_subspace(sub: Subspace) -> list[Covector]:
    """Basis of the covectors vanishing on the subspace; dimension n - dim W."""
    space = sub.parent
    if not sub.basis:
        return [Covector(space, row) for row in kernel(Matrix.zero(0, space.n))]
    m = Matrix.from_rows(sub.basis)
    return [Covector(space, row) for row in kernel(m)]


def dual_basis(basis: RadicalBasis) -> list[Covector]:
    """The unique covectors pairing to the identity against the basis vectors.

    For an orthogonal radical basis the last n - r of them span the flat
    image, each being the flat of its vector divided by the self-product.
    """
    inv = inverse(basis.matrix)
    return [Covector(basis.parent, inv.row(i)) for i in range(basis.parent.n)]


@dataclass(frozen=True)
class ScreenDecomposition:
    """A complement of the radical with nondegenerate restricted metric.

    `coscreen` spans a complement of the flat image inside the dual space:
    the covectors vanishing on the screen.
    """

    space: Space
    screen: tuple[Vector, ...]
    coscreen: tuple[Covector, ...]


def choose_screen(space: Space, hint: Sequence[Sequence] | None = None) -> ScreenDecomposition:
    """Pick a screen complement of the radical, canonically or from a hint.

    Without a hint the screen is spanned by the non-radical vectors of the
    canonical diagonalizing basis. A hint must span a complement of the
    radical on which the metric stays nondegenerate.
    """
    rb = orthogonal_radical_basis(space)
    r = rb.radical_count
    if hint is None:
        screen = rb.vectors[r:]
    else:
        screen = tuple(as_vector(v) for v in hint)
        for v in screen:
            if len(v) != space.n:
                raise DimensionMismatch("screen vector of wrong length")
        if len(screen) != space.n - r:
            raise BadScreen(f"screen needs {space.n - r} vectors, got {len(screen)}")
        stacked = list(screen) + list(rb.vectors[:r])
        if stacked and rank(Matrix.from_rows(stacked)) != space.n:
            raise BadScreen("screen does not complement the radical")
        w = Matrix.from_columns(screen) if screen else Matrix.zero(space.n, 0)
        if rank(w.T @ space.gram @ w) != len(screen):
            raise BadScreen("metric restricted to the screen is degenerate")
    coscreen = annihilator_of_subspace(Subspace(space, screen))
    return ScreenDecomposition(space, screen, tuple(coscreen))


def extend_cometric(space: Space, sd: ScreenDecomposition) -> Matrix:
    """Extend the canonical pairing to all covectors, using the screen.

    Returns the symmetric matrix of the extended form on the coordinate
    dual basis. The coscreen is its radical; on flat-image covectors every
    screen gives the same values.
    """
    if sd.space != space:
        raise BadScreen("screen belongs to a different space")
    if not sd.screen:
        return Matrix.zero(space.n, space.n)
    w = Matrix.from_columns(sd.screen)
    restricted = w.T @ space.gram @ w
    try:
        hinv = inverse(restricted)
    except SingularBasis as exc:
        raise BadScreen("metric restricted to the screen is degenerate") from exc
    return w @ hinv @ w.T


def flat_star(sd: ScreenDecomposition, omega: Covector) -> Vector:
    """The screen-dependent raising of a covector to a vector.

    Lands inside the screen; composing with the flat map is the identity on
    flat-image covectors and zero on the coscreen.
    """
    gstar = extend_cometric(sd.space, sd)
    return gstar.apply(omega.components)


@dataclass(frozen=True)
class FactorPair:
    """Concrete chart for the quotient of the space by its radical.

    The chart is the coordinate subspace over the pivot columns of the Gram
    matrix's echelon form, so a nondegenerate metric gives the identity
    projection. `flat_iso` maps quotient coordinates to covector components
    (rows are the flats of the chart vectors); `sharp_iso` maps flat-image
    covector components back to quotient coordinates. They are mutually
    inverse between the quotient and the flat image.
    """

    space: Space
    dim: int
    projection: Matrix
    metric: Matrix
    flat_iso: Matrix
    sharp_iso: Matrix


def factor_pair(space: Space) -> FactorPair:
    n = space.n
    _, pivots = rref(space.gram)
    m = len(pivots)
    chart_cols = [tuple(Fraction(int(i == j)) for i in range(n)) for j in pivots]
    e = Matrix.from_columns(chart_cols) if chart_cols else Matrix.zero(n, 0)
    rad_cols = kernel(space.gram)
    full = Matrix.from_columns(chart_cols + rad_cols) if n else Matrix.zero(0, 0)
    full_inv = inverse(full)
    projection = Matrix.from_rows([full_inv.row(i) for i in range(m)]) if m else Matrix.zero(0, n)
    metric = e.T @ space.gram @ e
    flat_iso = e.T @ space.gram
    sharp_iso = inverse(metric) @ e.T if m else Matrix.zero(0, n)
    return FactorPair(space, m, projection, metric, flat_iso, sharp_iso)
