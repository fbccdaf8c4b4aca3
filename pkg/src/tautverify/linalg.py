"""Exact linear algebra over the rationals.

Everything here works with `fractions.Fraction`, so all results are exact and
every comparison in the test suite is a strict equality.  Matrices are small
(a few dozen rows at most), so plain Gauss-Jordan elimination is all we need.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError

Vector = tuple[Fraction, ...]


def as_fraction(x) -> Fraction:
    """Coerce ints/strings like ``"-31/10"`` to Fraction. Floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}: {x!r}")


def as_vector(xs: Iterable) -> Vector:
    return tuple(as_fraction(x) for x in xs)


@dataclass(frozen=True)
class QMatrix:
    """Immutable rectangular matrix of exact rationals."""

    entries: tuple[Vector, ...]

    def __post_init__(self):
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise DimensionError("ragged rows in matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "QMatrix":
        return cls(tuple(as_vector(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "QMatrix":
        z = Fraction(0)
        return cls(tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def transpose(self) -> "QMatrix":
        return QMatrix(tuple(zip(*self.entries))) if self.entries else QMatrix(())

    def mul_vec(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"matrix has {self.cols} columns, vector has {len(v)}")
        return tuple(sum((row[j] * v[j] for j in range(self.cols)), Fraction(0)) for row in self.entries)

    def det3(self) -> Fraction:
        """Determinant of a 3x3 matrix (used by the basis check)."""
        if self.rows != 3 or self.cols != 3:
            raise DimensionError("det3 needs a 3x3 matrix")
        ((a, b, c), (d, e, f), (g, h, i)) = self.entries
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


@dataclass(frozen=True)
class RrefResult:
    reduced: QMatrix
    pivot_columns: tuple[int, ...]
    rank: int


@dataclass(frozen=True)
class Solution:
    """One exact solution of A x = b, plus the dimension of ker A."""

    vector: Vector
    kernel_dim: int

    @property
    def unique(self) -> bool:
        return self.kernel_dim == 0


@dataclass(frozen=True)
class Inconsistent:
    """Certificate of inconsistency: an eliminated row reading 0 = rhs with rhs != 0."""

    witness_coeffs: Vector
    witness_rhs: Fraction


def _rref_rows(rows: list[list[Fraction]], width: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form on the leftmost `width` columns.

    Columns beyond `width` (an augmented part, if any) are carried along.
    Pivots are scaled to 1 and cleared above and below; this is the canonical
    normalization fixed by the design decisions, so outputs are deterministic.
    """
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def mat_rref(m: QMatrix) -> RrefResult:
    """Unique reduced row echelon form with pivot columns and rank."""
    rows = [list(r) for r in m.entries]
    rows, pivots = _rref_rows(rows, m.cols)
    reduced = QMatrix(tuple(tuple(r) for r in rows))
    return RrefResult(reduced, tuple(pivots), len(pivots))


def solve_exact(a: QMatrix, b: Sequence) -> Solution | Inconsistent:
    """Solve A x = b exactly.

    Returns a Solution carrying one exact solution (the one with all free
    variables set to 0) and the kernel dimension, or an Inconsistent
    certificate row if elimination produces 0 = nonzero.
    """
    bvec = as_vector(b)
    if len(bvec) != a.rows:
        raise DimensionError(f"matrix has {a.rows} rows, rhs has {len(bvec)}")
    rows = [list(r) + [bvec[i]] for i, r in enumerate(a.entries)]
    rows, pivots = _rref_rows(rows, a.cols)
    for row in rows:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return Inconsistent(tuple(row[:-1]), row[-1])
    x = [Fraction(0)] * a.cols
    for r, c in enumerate(pivots):
        x[c] = rows[r][-1]
    return Solution(tuple(x), a.cols - len(pivots))


def kernel_basis(a: QMatrix) -> list[Vector]:
    """Canonical basis of the right null space of A.

    For each free column f the basis vector has a 1 in position f, the
    negated reduced-row entries in the pivot positions, and 0 elsewhere.
    Vectors are ordered by free column index; empty iff full column rank.
    """
    res = mat_rref(a)
    pivset = set(res.pivot_columns)
    basis: list[Vector] = []
    for f in range(a.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * a.cols
        v[f] = Fraction(1)
        for r, c in enumerate(res.pivot_columns):
            v[c] = -res.reduced.entries[r][f]
        basis.append(tuple(v))
    return basis


def row_space_rref(vectors: Sequence[Sequence[Fraction]]) -> QMatrix:
    """Canonical form of the span of `vectors`: RREF with zero rows dropped.

    Two families span the same subspace iff their canonical forms are equal.
    """
    if not vectors:
        return QMatrix(())
    res = mat_rref(QMatrix.from_rows(vectors))
    keep = tuple(r for r in res.reduced.entries if any(x != 0 for x in r))
    return QMatrix(keep)
