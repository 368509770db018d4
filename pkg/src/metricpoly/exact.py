"""Exact rational linear algebra.

Rationals are :class:`fractions.Fraction`, which keeps numerator and
denominator coprime with a positive denominator after every operation.
Matrices are plain row sequences; :class:`RationalMatrix` is a thin
immutable wrapper for callers that want a checked shape.

Rank is computed with fraction-free (Bareiss) elimination on integers,
after clearing the denominators of each row.  Nullspace and solve use
Gauss-Jordan elimination over :class:`~fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]
Rows = Sequence[Sequence[Number]]

# Large prime for the modular rank fast path.
_PRIME = (1 << 61) - 1


def as_fraction(value: Number | str) -> Fraction:
    """Convert an int, Fraction or "p/q" string to a Fraction.

    Floats are rejected: every coordinate in this package is exact.
    """
    if isinstance(value, float):
        raise TypeError("floating-point values are not accepted; use 'p/q' or Fraction")
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_fraction(value: Fraction) -> str:
    """'p/q', or 'p' when q == 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Rows, cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        entries = tuple(as_fraction(v) for r in rows for v in r)
        return cls(len(rows), cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, size: int) -> "RationalMatrix":
        return cls(size, size, tuple(Fraction(int(i == j))
                                     for i in range(size) for j in range(size)))

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i * self.cols + j]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, tuple(
            self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    def matvec(self, x: Sequence[Number]) -> list[Fraction]:
        if len(x) != self.cols:
            raise ValueError(f"vector of length {len(x)} for {self.cols} columns")
        return [sum((a * b for a, b in zip(self.row(i), x)), Fraction(0))
                for i in range(self.rows)]


def _shape(m: RationalMatrix | Rows, cols: int | None = None) -> tuple[list[list], int]:
    if isinstance(m, RationalMatrix):
        return m.to_rows(), m.cols
    rows = [list(r) for r in m]
    if cols is None:
        cols = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != cols:
            raise ValueError("ragged rows")
    return rows, cols


def integer_row(row: Iterable[Number]) -> list[int]:
    """Scale a rational row by the lcm of its denominators (positive factor)."""
    row = [as_fraction(v) for v in row]
    den = lcm(*(v.denominator for v in row)) if row else 1
    return [int(v * den) for v in row]


def _bareiss_rank(rows: list[list[int]], cols: int) -> int:
    a = [r[:] for r in rows]
    nrows = len(a)
    rank = 0
    prev = 1
    for c in range(cols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        prow = a[rank]
        for i in range(rank + 1, nrows):
            ri = a[i]
            f = ri[c]
            # Bareiss step: exact division by the previous pivot.
            for j in range(c + 1, cols):
                ri[j] = (p * ri[j] - f * prow[j]) // prev
            ri[c] = 0
        prev = p
        rank += 1
    return rank


def rank_mod_p(rows: Sequence[Sequence[int]], cols: int, p: int = _PRIME) -> int:
    """Rank of an integer matrix over GF(p).  Never exceeds the rational rank."""
    a = [[v % p for v in r] for r in rows]
    nrows = len(a)
    rank = 0
    for c in range(cols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        inv = pow(prow[c], -1, p)
        for i in range(rank + 1, nrows):
            ri = a[i]
            f = ri[c]
            if f:
                f = f * inv % p
                for j in range(c, cols):
                    ri[j] = (ri[j] - f * prow[j]) % p
        rank += 1
    return rank


def integer_rank(rows: Sequence[Sequence[int]], cols: int, expected: int | None = None) -> int:
    """Exact rank of an integer matrix.

    When ``expected`` is given and the modular rank already reaches it, that
    value is returned without the exact elimination: the rank over GF(p) is a
    lower bound for the rational rank, so this shortcut is only sound when the
    caller knows the rational rank cannot exceed ``expected``.
    """
    if expected is not None and rank_mod_p(rows, cols) >= expected:
        return expected
    return _bareiss_rank([list(r) for r in rows], cols)


def rank(m: RationalMatrix | Rows, cols: int | None = None) -> int:
    """Exact rank over the rationals."""
    rows, cols = _shape(m, cols)
    return _bareiss_rank([integer_row(r) for r in rows], cols)


def _rref(rows: list[list[Fraction]], cols: int) -> tuple[list[list[Fraction]], list[int]]:
    a = [[as_fraction(v) for v in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == len(a):
            break
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        if pv != 1:
            a[r] = [v / pv for v in a[r]]
        prow = a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vp for vi, vp in zip(a[i], prow)]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def nullspace_basis(m: RationalMatrix | Rows, cols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : m x = 0}, one vector per free column."""
    rows, cols = _shape(m, cols)
    reduced, pivots = _rref(rows, cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * cols
        v[free] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def solve(m: RationalMatrix | Rows, b: Sequence[Number],
          cols: int | None = None) -> list[Fraction] | None:
    """An exact solution of m x = b, or None when the system is inconsistent.

    Free variables are set to zero.
    """
    rows, cols = _shape(m, cols)
    if len(b) != len(rows):
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {len(rows)} rows")
    augmented = [list(r) + [bi] for r, bi in zip(rows, b)]
    reduced, pivots = _rref(augmented, cols + 1)
    if pivots and pivots[-1] == cols:
        return None
    x = [Fraction(0)] * cols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[cols]
    return x


def primitive(vector: Sequence[Number]) -> tuple[int, ...]:
    """Positive multiple of ``vector`` with coprime integer entries.

    Direction is preserved; the zero vector maps to itself.
    """
    ints = integer_row(vector)
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


def dot(u: Sequence[Number], v: Sequence[Number]):
    return sum(a * b for a, b in zip(u, v))
