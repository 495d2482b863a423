"""Inner product spaces with possibly degenerate metrics.

A `Space` is a dimension together with an exact symmetric Gram matrix. No
positivity is assumed: the vectors orthogonal to everything form the radical,
and the signature counts zero, negative and positive axes of a diagonalizing
basis. Subspaces are held as explicit spanning bases in ambient coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, NonSymmetric
from .exact_linalg import (
    Matrix,
    Vector,
    dot,
    kernel,
    rank,
    congruence_diagonalize,
    vector as as_vector,
)


@dataclass(frozen=True)
class Space:
    """A finite-dimensional real vector space with a symmetric bilinear form."""

    gram: Matrix

    def __post_init__(self):
        if self.gram.rows != self.gram.cols:
            raise DimensionMismatch("Gram matrix must be square")
        if not self.gram.is_symmetric():
            raise NonSymmetric("Gram matrix must be symmetric")

    @classmethod
    def from_gram(cls, rows: Sequence[Sequence]) -> "Space":
        return cls(Matrix.from_rows(rows))

    @classmethod
    def from_diagonal(cls, values: Sequence) -> "Space":
        return cls(Matrix.diagonal(values))

    @property
    def n(self) -> int:
        return self.gram.rows


@dataclass(frozen=True)
class Subspace:
    """A subspace given by an independent spanning set in ambient coordinates."""

    parent: Space
    basis: tuple[Vector, ...]

    def __post_init__(self):
        n = self.parent.n
        for v in self.basis:
            if len(v) != n:
                raise DimensionMismatch(f"basis vector of length {len(v)} in a {n}-dimensional space")
        if self.basis and rank(Matrix.from_rows(self.basis)) != len(self.basis):
            raise ValueError("spanning vectors are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)


def span(space: Space, vectors: Sequence[Sequence]) -> Subspace:
    """Subspace spanned by arbitrary vectors; keeps the earliest independent ones."""
    picked: list[Vector] = []
    r = 0
    for raw in vectors:
        v = as_vector(raw)
        if len(v) != space.n:
            raise DimensionMismatch(f"vector of length {len(v)} in a {space.n}-dimensional space")
        candidate = picked + [v]
        new_rank = rank(Matrix.from_rows(candidate))
        if new_rank > r:
            picked.append(v)
            r = new_rank
    return Subspace(space, tuple(picked))


@dataclass(frozen=True)
class RadicalBasis:
    """An ordered basis whose first `radical_count` vectors span the radical.

    When the remaining vectors are mutually orthogonal the Gram matrix in
    this basis is diagonal: zeros first, then the nonzero self-products.
    """

    parent: Space
    vectors: tuple[Vector, ...]
    radical_count: int

    def __post_init__(self):
        n = self.parent.n
        if len(self.vectors) != n:
            raise DimensionMismatch(f"{len(self.vectors)} vectors for a {n}-dimensional space")
        for v in self.vectors:
            if len(v) != n:
                raise DimensionMismatch("basis vector of wrong length")
        if n and rank(self.matrix) != n:
            raise ValueError("basis vectors are linearly dependent")
        for v in self.vectors[: self.radical_count]:
            if any(x != 0 for x in self.parent.gram.apply(v)):
                raise ValueError("leading vectors must lie in the radical")

    @property
    def matrix(self) -> Matrix:
        """Basis vectors as columns."""
        return Matrix.from_columns(self.vectors) if self.vectors else Matrix.zero(0, 0)

    def gram_in_basis(self) -> Matrix:
        b = self.matrix
        return b.T @ self.parent.gram @ b

    def is_orthogonal(self) -> bool:
        return self.gram_in_basis().is_diagonal()

    def alphas(self) -> tuple[Fraction, ...]:
        """Self inner products of the basis vectors, in order."""
        g = self.parent.gram
        return tuple(dot(v, g.apply(v)) for v in self.vectors)


def inner(space: Space, u: Sequence, v: Sequence) -> Fraction:
    """The bilinear form evaluated on two coordinate vectors."""
    u = as_vector(u)
    v = as_vector(v)
    if len(u) != space.n or len(v) != space.n:
        raise DimensionMismatch(f"vectors of lengths {len(u)}, {len(v)} in a {space.n}-dimensional space")
    return dot(u, space.gram.apply(v))


def radical(space: Space) -> Subspace:
    """All vectors orthogonal to the whole space: the kernel of the Gram matrix."""
    return Subspace(space, tuple(kernel(space.gram)))


def orth_complement(sub: Subspace) -> Subspace:
    """Vectors orthogonal to every element of the subspace."""
    space = sub.parent
    if not sub.basis:
        return Subspace(space, tuple(kernel(Matrix.zero(0, space.n))))
    m = Matrix.from_rows(sub.basis) @ space.gram
    return Subspace(space, tuple(kernel(m)))


def signature(space: Space) -> tuple[int, int, int]:
    """Counts (zero, negative, positive) of a diagonalizing basis."""
    _, d = congruence_diagonalize(space.gram)
    diag = d.diagonal_entries()
    r = sum(1 for x in diag if x == 0)
    s = sum(1 for x in diag if x < 0)
    t = sum(1 for x in diag if x > 0)
    return r, s, t


def orthogonal_radical_basis(space: Space) -> RadicalBasis:
    """The canonical diagonalizing basis, radical vectors first.

    Deterministic: comes from `congruence_diagonalize` with its fixed pivot
    policy, with the zero-product columns moved to the front.
    """
    p, d = congruence_diagonalize(space.gram)
    cols = p.columns()
    diag = d.diagonal_entries()
    rad = [cols[j] for j in range(space.n) if diag[j] == 0]
    rest = [cols[j] for j in range(space.n) if diag[j] != 0]
    return RadicalBasis(space, tuple(rad + rest), len(rad))


def span_dim(space: Space, vectors: Sequence[Vector]) -> int:
    if not vectors:
        return 0
    return rank(Matrix.from_rows(vectors))


def contains(sub: Subspace, v: Sequence) -> bool:
    """Is the vector inside the span of the subspace?"""
    v = as_vector(v)
    if len(v) != sub.parent.n:
        raise DimensionMismatch("vector length does not match the space")
    if all(x == 0 for x in v):
        return True
    if not sub.basis:
        return False
    stacked = list(sub.basis) + [v]
    return rank(Matrix.from_rows(stacked)) == len(sub.basis)


def subspaces_equal(a: Subspace, b: Subspace) -> bool:
    """Equality of spans, decided by mutual rank checks."""
    if a.parent != b.parent:
        return False
    if a.dim != b.dim:
        return False
    union = list(a.basis) + list(b.basis)
    return span_dim(a.parent, union) == a.dim


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.parent != b.parent:
        raise DimensionMismatch("subspaces of different spaces")
    return span(a.parent, list(a.basis) + list(b.basis))


def intersection_dim(a: Subspace, b: Subspace) -> int:
    """dim(A ∩ B) computed from ranks: dim A + dim B - dim(A + B)."""
    if a.parent != b.parent:
        raise DimensionMismatch("subspaces of different spaces")
    return a.dim + b.dim - span_dim(a.parent, list(a.basis) + list(b.basis))


@dataclass(frozen=True)
class DimensionReport:
    """Dimension bookkeeping for a subspace and its orthogonal complement."""

    dim_space: int
    dim_subspace: int
    dim_complement: int
    dim_radical_overlap: int
    identity_holds: bool
    radical_inside_complement: bool
    double_complement_matches: bool


def check_dimension_identity(space: Space, sub: Subspace) -> DimensionReport:
    """Verify the dimension identity relating U, its complement and the radical.

    The identity checked is

        dim U + dim U_perp == dim V + dim(rad V ∩ U).

    The overlap term must sit on the ambient side: putting it next to dim U
    fails already for U = V over a degenerate metric, so the suite pins this
    form against a brute-force oracle. Also confirms rad V <= U_perp and
    (U_perp)_perp == U + rad V.
    """
    if sub.parent != space:
        raise DimensionMismatch("subspace does not belong to the given space")
    rad = radical(space)
    perp = orth_complement(sub)
    overlap = intersection_dim(rad, sub)
    identity = sub.dim + perp.dim == space.n + overlap
    rad_inside = all(contains(perp, z) for z in rad.basis)
    double = subspaces_equal(orth_complement(perp), subspace_sum(sub, rad))
    return DimensionReport(
        dim_space=space.n,
        dim_subspace=sub.dim,
        dim_complement=perp.dim,
        dim_radical_overlap=overlap,
        identity_holds=identity,
        radical_inside_complement=rad_inside,
        double_complement_matches=double,
    )
