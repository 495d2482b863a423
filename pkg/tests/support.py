"""Random generators and brute-force oracles shared by the test suite.

Generators construct objects whose ground truth is known by construction
(radical dimension, which slots are radical, and so on). Oracles recompute
operation results by direct summation over index tuples, independently of
the code paths they check.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from degtensor import (
    Covector,
    Matrix,
    Space,
    Tensor,
    choose_screen,
    flat,
    from_covector,
    from_vector,
    kernel,
    orthogonal_radical_basis,
    reorder_slots,
    solve,
    tensor_product,
)
from degtensor.space import RadicalBasis

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(rng: random.Random, lo: int = -4, hi: int = 4, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def nonzero_frac(rng: random.Random, hi: int = 3, max_den: int = 2) -> Fraction:
    num = rng.choice([i for i in range(-hi, hi + 1) if i])
    return Fraction(num, rng.randint(1, max_den))


def rand_vector(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    return tuple(frac(rng) for _ in range(n))


def unimodular(rng: random.Random, n: int) -> Matrix:
    """Random invertible matrix with determinant +-1 (unit triangular product)."""
    lower = [[ONE if i == j else (Fraction(rng.randint(-2, 2)) if j < i else ZERO) for j in range(n)] for i in range(n)]
    upper = [[ONE if i == j else (Fraction(rng.randint(-2, 2)) if j > i else ZERO) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    pm = [[ONE if perm[i] == j else ZERO for j in range(n)] for i in range(n)]
    if n == 0:
        return Matrix.zero(0, 0)
    return Matrix.from_rows(lower) @ Matrix.from_rows(upper) @ Matrix.from_rows(pm)


def rand_symmetric(rng: random.Random, n: int) -> Matrix:
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = frac(rng)
    return Matrix.from_rows(rows) if n else Matrix.zero(0, 0)


def rand_space(rng: random.Random, n: int, rad: int | None = None) -> Space:
    """Space of dimension n whose radical has the requested dimension."""
    if rad is None:
        rad = rng.randint(0, n)
    diag = [ZERO] * rad + [nonzero_frac(rng) for _ in range(n - rad)]
    q = unimodular(rng, n)
    return Space(q.T @ Matrix.diagonal(diag) @ q)


def radical_vector(rng: random.Random, space: Space) -> tuple[Fraction, ...]:
    """Random element of the radical (possibly zero)."""
    basis = kernel(space.gram)
    v = [ZERO] * space.n
    for z in basis:
        c = frac(rng)
        for i in range(space.n):
            v[i] += c * z[i]
    return tuple(v)


def nonzero_radical_vector(rng: random.Random, space: Space) -> tuple[Fraction, ...]:
    while True:
        v = radical_vector(rng, space)
        if any(x != 0 for x in v):
            return v


def annih_covector(rng: random.Random, space: Space) -> Covector:
    """Random covector in the image of the flat map (possibly zero)."""
    return flat(space, rand_vector(rng, space.n))


def nonzero_annih_covector(rng: random.Random, space: Space) -> Covector:
    """Random nonzero covector in the flat image; needs rank >= 1."""
    while True:
        omega = annih_covector(rng, space)
        if not omega.is_zero():
            return omega


def nonradical_vector(rng: random.Random, space: Space) -> tuple[Fraction, ...]:
    """Random vector outside the radical; needs rank >= 1."""
    while True:
        v = rand_vector(rng, space.n)
        if not flat(space, v).is_zero():
            return v


def outside_flat_image(rng: random.Random, space: Space) -> Covector:
    """Random covector not in the flat image; needs a nontrivial radical."""
    while True:
        row = rand_vector(rng, space.n)
        if solve(space.gram, row) is None:
            return Covector(space, row)


def rand_tensor(rng: random.Random, space: Space, r: int, s: int, basis: Matrix | None = None) -> Tensor:
    comps = tuple(frac(rng) for _ in range(space.n ** (r + s)))
    return Tensor(space, r, s, comps, basis)


def zero_tensor(space: Space, r: int, s: int, basis: Matrix | None = None) -> Tensor:
    return Tensor(space, r, s, (ZERO,) * (space.n ** (r + s)), basis)


def unit_tensor(space: Space, r: int, s: int, flat_index: int) -> Tensor:
    comps = [ZERO] * (space.n ** (r + s))
    comps[flat_index] = ONE
    return Tensor(space, r, s, tuple(comps))


def _with_cova_slots_at(tail_product: Tensor, s: int, k: int, l: int) -> Tensor:
    """Reorder so the last two covariant slots land at positions k < l."""
    order = []
    base = 1
    for i in range(1, s + 1):
        if i == k:
            order.append(s - 1)
        elif i == l:
            order.append(s)
        else:
            order.append(base)
            base += 1
    return reorder_slots(tail_product, cova_order=order)


def gated_tensor(rng: random.Random, space: Space, r: int, s: int, k: int, l: int, terms: int = 2) -> Tensor:
    """Random tensor radical-annihilator in covariant slots k < l by construction."""
    total = zero_tensor(space, r, s)
    for _ in range(terms):
        base = rand_tensor(rng, space, r, s - 2)
        piece = tensor_product(
            tensor_product(base, from_covector(annih_covector(rng, space))),
            from_covector(annih_covector(rng, space)),
        )
        total = total + _with_cova_slots_at(piece, s, k, l)
    return total


def radical_slot_tensor(rng: random.Random, space: Space, r: int, s: int, k: int, terms: int = 2) -> Tensor:
    """Random tensor whose k-th contravariant slot takes radical values."""
    total = zero_tensor(space, r, s)
    for _ in range(terms):
        piece = tensor_product(from_vector(space, radical_vector(rng, space)), rand_tensor(rng, space, r - 1, s))
        order = [1 + i for i in range(1, k)] + [1] + [1 + i for i in range(k, r)]
        total = total + reorder_slots(piece, contra_order=order)
    return total


def nonradical_slot_tensor(rng: random.Random, space: Space, r: int, s: int, k: int) -> Tensor:
    """Tensor with a guaranteed non-radical component in contravariant slot k.

    Built as a sum of slot-k vectors against distinct unit tensors, so the
    lowered tensor cannot cancel; the first vector is outside the radical.
    """
    n = space.n
    rest = n ** (r - 1 + s)
    count = rng.randint(1, min(3, rest))
    slots = rng.sample(range(rest), count)
    total = zero_tensor(space, r, s)
    order = [1 + i for i in range(1, k)] + [1] + [1 + i for i in range(k, r)]
    for m, idx in enumerate(slots):
        v = nonradical_vector(rng, space) if m == 0 else rand_vector(rng, n)
        piece = tensor_product(from_vector(space, v), unit_tensor(space, r - 1, s, idx))
        total = total + reorder_slots(piece, contra_order=order)
    return total


def random_radical_basis(rng: random.Random, space: Space) -> RadicalBasis:
    """A random orthogonal radical basis, built independently of the canonical one."""
    q = unimodular(rng, space.n)
    conjugated = Space(q.T @ space.gram @ q)
    rb = orthogonal_radical_basis(conjugated)
    vectors = tuple(q.apply(v) for v in rb.vectors)
    return RadicalBasis(space, vectors, rb.radical_count)


def random_screen(rng: random.Random, space: Space):
    """A random valid screen decomposition."""
    rb = orthogonal_radical_basis(space)
    r = rb.radical_count
    base = list(rb.vectors[r:])
    m = len(base)
    mixer = unimodular(rng, m)
    mixed = []
    for j in range(m):
        w = [ZERO] * space.n
        for i in range(m):
            c = mixer[i, j]
            if c:
                for a in range(space.n):
                    w[a] += c * base[i][a]
        z = radical_vector(rng, space)
        mixed.append(tuple(w[a] + z[a] for a in range(space.n)))
    return choose_screen(space, mixed)


# ---------------------------------------------------------------------------
# brute-force oracles


def oracle_contract_mixed(t: Tensor, k: int, l: int) -> Tensor:
    """Plain index sum over the contracted pair, by explicit loops."""
    n = t.dim
    r, s = t.contra, t.cova
    ax1, ax2 = k - 1, r + l - 1
    out = []
    for idx in itertools.product(range(n), repeat=r + s - 2):
        acc = ZERO
        for i in range(n):
            rebuilt = []
            src = iter(idx)
            for a in range(r + s):
                if a == ax1 or a == ax2:
                    rebuilt.append(i)
                else:
                    rebuilt.append(next(src))
            acc += t.get(*rebuilt)
        out.append(acc)
    return Tensor(t.space, r - 1, s - 1, tuple(out), t.basis)


def oracle_lower(t: Tensor, k: int) -> Tensor:
    """Index lowering by direct summation against the metric components."""
    n = t.dim
    r, s = t.contra, t.cova
    g = t.space.gram if t.basis is None else t.basis.T @ t.space.gram @ t.basis
    ax = k - 1
    out = []
    for idx in itertools.product(range(n), repeat=r + s):
        # output layout: contra without k, old cova, new cova index last
        q = idx[-1]
        acc = ZERO
        for i in range(n):
            rebuilt = []
            src = iter(idx[:-1])
            for a in range(r + s):
                if a == ax:
                    rebuilt.append(i)
                else:
                    rebuilt.append(next(src))
            acc += t.get(*rebuilt) * g[q, i]
        out.append(acc)
    return Tensor(t.space, r - 1, s + 1, tuple(out), t.basis)


def oracle_insert_two(t: Tensor, k: int, l: int, u, w) -> Tensor:
    """Plug vectors into covariant slots k < l by explicit summation."""
    n = t.dim
    r, s = t.contra, t.cova
    ax1, ax2 = r + k - 1, r + l - 1
    out = []
    for idx in itertools.product(range(n), repeat=r + s - 2):
        acc = ZERO
        for i in range(n):
            if not u[i]:
                continue
            for j in range(n):
                if not w[j]:
                    continue
                rebuilt = []
                src = iter(idx)
                for a in range(r + s):
                    if a == ax1:
                        rebuilt.append(i)
                    elif a == ax2:
                        rebuilt.append(j)
                    else:
                        rebuilt.append(next(src))
                acc += u[i] * w[j] * t.get(*rebuilt)
        out.append(acc)
    return Tensor(t.space, r, s - 2, tuple(out), t.basis)


def oracle_covariant_trace(t: Tensor, k: int, l: int, rb: RadicalBasis) -> Tensor:
    """Covariant contraction as the weighted diagonal sum over an orthogonal
    radical basis: sum of T(..., e_a, ..., e_a, ...) / <e_a, e_a>."""
    assert t.basis is None
    out = zero_tensor(t.space, t.contra, t.cova - 2)
    alphas = rb.alphas()
    for a in range(rb.radical_count, len(rb.vectors)):
        e = rb.vectors[a]
        term = oracle_insert_two(t, k, l, e, e)
        out = out + term.scale(1 / alphas[a])
    return out


def cometric_by_expansion(space: Space, rb: RadicalBasis, omega: Covector, tau: Covector) -> Fraction:
    """Canonical dual pairing via expansion in the flats of a radical basis."""
    r = rb.radical_count
    flats = [flat(space, v).components for v in rb.vectors[r:]]
    alphas = rb.alphas()[r:]
    f = Matrix.from_columns(flats) if flats else Matrix.zero(space.n, 0)
    x = solve(f, omega.components)
    y = solve(f, tau.components)
    assert x is not None and y is not None
    return sum((x[a] * y[a] * alphas[a] for a in range(len(flats))), ZERO)
