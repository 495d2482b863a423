"""Exact rational matrix substrate: elimination, kernels, congruence diagonalization.

All arithmetic is done with `fractions.Fraction`, so every identity downstream
can be asserted with `==` instead of a tolerance. Matrices and vectors are
immutable; operations are pure functions and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NonSymmetric, SingularBasis

Scalar = Fraction
Vector = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def scalar(value: int | str | Fraction) -> Fraction:
    """Coerce an int, a Fraction, or a "p/q" string to an exact scalar."""
    return Fraction(value)


def vector(values: Iterable[int | str | Fraction]) -> Vector:
    """Build an exact coordinate vector."""
    return tuple(Fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (_ZERO,) * n


def basis_vector(n: int, i: int) -> Vector:
    return tuple(_ONE if j == i else _ZERO for j in range(n))


def add_vectors(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"cannot add vectors of lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def scale_vector(c: Fraction | int, v: Sequence[Fraction]) -> Vector:
    c = Fraction(c)
    return tuple(c * x for x in v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"dot product of lengths {len(u)} and {len(v)}")
    total = _ZERO
    for a, b in zip(u, v):
        if a and b:
            total += a * b
    return total


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix of exact rationals, row-major storage."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | str | Fraction]]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, tuple(Fraction(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int | str | Fraction]]) -> "Matrix":
        cols = [list(c) for c in cols]
        nrows = len(cols[0]) if cols else 0
        for c in cols:
            if len(c) != nrows:
                raise DimensionMismatch("ragged columns")
        return cls(nrows, len(cols), tuple(Fraction(cols[j][i]) for i in range(nrows) for j in range(len(cols))))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(_ONE if i == j else _ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (_ZERO,) * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[int | str | Fraction]) -> "Matrix":
        vals = [Fraction(v) for v in values]
        n = len(vals)
        return cls(n, n, tuple(vals[i] if i == j else _ZERO for i in range(n) for j in range(n)))

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = _ZERO
                for k in range(self.cols):
                    a = ri[k]
                    if a:
                        b = other.entries[k * other.cols + j]
                        if b:
                            acc += a * b
                out.append(acc)
        return Matrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def apply(self, v: Sequence[Fraction]) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise DimensionMismatch(f"matrix has {self.cols} columns, vector has length {len(v)}")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def left_apply(self, v: Sequence[Fraction]) -> Vector:
        """Row vector times matrix."""
        if len(v) != self.rows:
            raise DimensionMismatch(f"matrix has {self.rows} rows, vector has length {len(v)}")
        return tuple(dot(v, self.col(j)) for j in range(self.cols))

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def diagonal_entries(self) -> Vector:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))


def _row_reduce(rows: list[list[Fraction]]) -> list[int]:
    """In-place reduced row echelon form. Returns the pivot column indices."""
    pivots: list[int] = []
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pr = 0
    for pc in range(ncols):
        pivot_row = None
        for i in range(pr, nrows):
            if rows[i][pc] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        inv = _ONE / rows[pr][pc]
        if inv != 1:
            rows[pr] = [x * inv for x in rows[pr]]
        for i in range(nrows):
            if i != pr and rows[i][pc]:
                f = rows[i][pc]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pr])]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return pivots


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns."""
    rows = m.to_rows()
    pivots = _row_reduce(rows)
    return Matrix.from_rows(rows) if rows else m, tuple(pivots)


def rank(m: Matrix) -> int:
    rows = m.to_rows()
    return len(_row_reduce(rows))


def kernel(m: Matrix) -> list[Vector]:
    """Basis of the null space {v : m v = 0}.

    One basis vector per free column, in ascending column order, with the
    free coordinate set to 1 and pivot coordinates read off the reduced
    echelon form.
    """
    rows = m.to_rows()
    pivots = _row_reduce(rows)
    pivot_set = set(pivots)
    basis: list[Vector] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [_ZERO] * m.cols
        v[free] = _ONE
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][free]
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, rhs: Sequence[Fraction]) -> Vector | None:
    """One solution of m x = rhs with free coordinates 0, or None if inconsistent."""
    if len(rhs) != m.rows:
        raise DimensionMismatch(f"matrix has {m.rows} rows, rhs has length {len(rhs)}")
    rows = [list(m.row(i)) + [Fraction(rhs[i])] for i in range(m.rows)]
    if not rows:
        return zero_vector(m.cols)
    pivots = _row_reduce(rows)
    if m.cols in pivots:
        return None
    x = [_ZERO] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][m.cols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionMismatch("only square matrices can be inverted")
    n = m.rows
    rows = [list(m.row(i)) + [_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
    pivots = _row_reduce(rows) if rows else []
    left_rank = sum(1 for p in pivots if p < n)
    if left_rank != n:
        raise SingularBasis(f"matrix of rank {left_rank} < {n} is not invertible")
    return Matrix.from_rows([r[n:] for r in rows]) if n else Matrix.zero(0, 0)


def is_invertible(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def congruence_diagonalize(g: Matrix) -> tuple[Matrix, Matrix]:
    """Diagonalize a symmetric form by congruence: p.T @ g @ p == d exactly.

    Deterministic pivot policy: at each step take the smallest remaining
    index whose diagonal entry is nonzero; if every remaining diagonal entry
    is zero but some off-diagonal entry survives, add one basis vector onto
    another first (this makes a diagonal entry equal to twice that
    off-diagonal entry). Nonzero entries of d come first, zeros last, so the
    trailing columns of p span the radical of g.
    """
    if g.rows != g.cols or not g.is_symmetric():
        raise NonSymmetric("congruence diagonalization needs a symmetric matrix")
    n = g.rows
    a = g.to_rows()
    p = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]

    def col_add(dst: int, src: int, c: Fraction) -> None:
        # basis vector dst += c * basis vector src; keeps a congruent to g
        for r in range(n):
            if p[r][src]:
                p[r][dst] += c * p[r][src]
        for r in range(n):
            if a[r][src]:
                a[r][dst] += c * a[r][src]
        for cc in range(n):
            if a[src][cc]:
                a[dst][cc] += c * a[src][cc]

    def swap(i: int, j: int) -> None:
        for r in range(n):
            p[r][i], p[r][j] = p[r][j], p[r][i]
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        a[i], a[j] = a[j], a[i]

    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            off = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0),
                None,
            )
            if off is None:
                break
            i, j = off
            col_add(i, j, _ONE)
            piv = i
        if piv != k:
            swap(k, piv)
        for j in range(k + 1, n):
            if a[k][j]:
                col_add(j, k, -a[k][j] / a[k][k])

    for i in range(n):
        for j in range(n):
            if i != j and a[i][j] != 0:
                raise AssertionError("congruence elimination left an off-diagonal entry")
    return Matrix.from_rows(p) if n else Matrix.zero(0, 0), Matrix.diagonal([a[i][i] for i in range(n)])


def square_free_split(m: int) -> tuple[int, int]:
    """Split a positive integer as m = u*u * v with v square-free."""
    if m <= 0:
        raise ValueError("need a positive integer")
    u, v = 1, 1
    d = 2
    while d * d <= m:
        e = 0
        while m % d == 0:
            m //= d
            e += 1
        u *= d ** (e // 2)
        if e % 2:
            v *= d
        d += 1
    return u, v * m


def normalize_diagonal(p: Matrix, d: Matrix) -> tuple[Matrix, Matrix]:
    """Rescale the columns of p so each nonzero diagonal entry of d becomes
    sign(entry) times the square-free part of numerator*denominator.

    Rescaling by an exact square root factor keeps everything rational, so
    the result is an orthogonal basis whose diagonal is reduced, not an
    orthonormal one (that would need irrational scalings in general).
    """
    if d.rows != d.cols or not d.is_diagonal():
        raise DimensionMismatch("second argument must be a square diagonal matrix")
    if p.cols != d.rows:
        raise DimensionMismatch("column count of p must match d")
    cols = [list(c) for c in p.columns()]
    diag = []
    for j, alpha in enumerate(d.diagonal_entries()):
        if alpha == 0:
            diag.append(_ZERO)
            continue
        u, v = square_free_split(abs(alpha.numerator) * alpha.denominator)
        factor = Fraction(alpha.denominator, u)
        cols[j] = [factor * x for x in cols[j]]
        diag.append(Fraction(v) if alpha > 0 else Fraction(-v))
    return Matrix.from_columns(cols) if cols else p, Matrix.diagonal(diag)
