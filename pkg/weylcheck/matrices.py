"""Exact matrices over the rationals.

Rank and determinant use fraction-free (Bareiss) elimination on rows scaled
to integers; the characteristic polynomial det(1 - t m) comes from the
Faddeev-LeVerrier recurrence; ``smith_normal_form`` diagonalises integer
matrices by unimodular row and column operations.
"""

from __future__ import annotations

import bisect
from fractions import Fraction
from math import lcm
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .algebra import LaurentPoly, Scalar


class ExactMatrix:
    """Immutable matrix with ``Fraction`` entries."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, entries: Sequence[Sequence[Scalar]], cols: Optional[int] = None):
        data = tuple(tuple(Fraction(v) for v in row) for row in entries)
        widths = {len(row) for row in data}
        if len(widths) > 1:
            raise ValueError("ragged matrix rows")
        width = widths.pop() if widths else (cols or 0)
        if cols is not None and width != cols:
            raise ValueError(f"expected {cols} columns, got {width}")
        self.rows = len(data)
        self.cols = width
        self._entries = data

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: Optional[int] = None) -> "ExactMatrix":
        if not columns:
            return cls([[] for _ in range(rows or 0)], cols=0)
        height = len(columns[0])
        return cls([[col[i] for col in columns] for i in range(height)])

    # -- access -----------------------------------------------------------

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self._entries[i][j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self._entries[i]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(row[j] for row in self._entries)

    def to_rows(self) -> List[List[Fraction]]:
        return [list(row) for row in self._entries]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self._entries for v in row)

    def to_int_rows(self) -> List[List[int]]:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return [[int(v) for v in row] for row in self._entries]

    def trace(self) -> Fraction:
        self._require_square()
        return sum((self._entries[i][i] for i in range(self.rows)), Fraction(0))

    def _require_square(self):
        if not self.is_square:
            raise ValueError(f"{self.rows}x{self.cols} matrix is not square")

    # -- arithmetic -------------------------------------------------------

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self._entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._entries, other._entries)],
            cols=self.cols,
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-v for v in row] for row in self._entries], cols=self.cols)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> "ExactMatrix":
        return ExactMatrix([[v * scalar for v in row] for row in self._entries], cols=self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        cols = [other.column(j) for j in range(other.cols)]
        return ExactMatrix(
            [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in self._entries],
            cols=other.cols,
        )

    def apply(self, vector: Sequence[Scalar]) -> List[Fraction]:
        if len(vector) != self.cols:
            raise ValueError("vector length does not match matrix")
        return [sum((a * Fraction(b) for a, b in zip(row, vector)), Fraction(0)) for row in self._entries]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._entries == other._entries and self.cols == other.cols

    def __hash__(self) -> int:
        return hash(self._entries)

    # -- exact invariants -------------------------------------------------

    def rank(self) -> int:
        return exact_rank(self)

    def det(self) -> Fraction:
        self._require_square()
        rows, scale = _integer_rows(self)
        rank, last = _bareiss(rows)
        if rank < self.rows:
            return Fraction(0)
        return Fraction(last, scale)

    def inverse(self) -> "ExactMatrix":
        self._require_square()
        n = self.rows
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self._entries)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col]), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            lead = aug[col][col]
            aug[col] = [v / lead for v in aug[col]]
            for r in range(n):
                factor = aug[r][col]
                if r != col and factor:
                    aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
        return ExactMatrix([row[n:] for row in aug])

    def char_poly(self) -> LaurentPoly:
        return char_poly(self)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in self._entries)
        return f"ExactMatrix([{body}])"


def _integer_rows(m: ExactMatrix) -> Tuple[List[List[int]], int]:
    """Scale each row by the lcm of its denominators; return rows and total scale."""
    out = []
    scale = 1
    for row in m.to_rows():
        factor = 1
        for v in row:
            factor = lcm(factor, v.denominator)
        out.append([int(v * factor) for v in row])
        scale *= factor
    return out, scale


def _bareiss(a: List[List[int]]) -> Tuple[int, int]:
    """Fraction-free elimination in place; returns (rank, signed last pivot)."""
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    rank = 0
    prev = 1
    sign = 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = next((r for r in range(rank, nrows) if a[r][col]), None)
        if pivot is None:
            continue
        if pivot != rank:
            a[rank], a[pivot] = a[pivot], a[rank]
            sign = -sign
        lead = a[rank][col]
        prow = a[rank]
        for r in range(rank + 1, nrows):
            row = a[r]
            factor = row[col]
            for c in range(col + 1, ncols):
                row[c] = (lead * row[c] - factor * prow[c]) // prev
            row[col] = 0
        prev = lead
        rank += 1
    return rank, sign * prev


def exact_rank(m: ExactMatrix) -> int:
    """Rank over the rationals."""
    if m.rows == 0 or m.cols == 0:
        return 0
    rows, _ = _integer_rows(m)
    rank, _ = _bareiss(rows)
    return rank


def char_poly(m: ExactMatrix) -> LaurentPoly:
    """det(1 - t m) as a polynomial in t."""
    if not m.is_square:
        raise ValueError(f"{m.rows}x{m.cols} matrix has no characteristic polynomial")
    n = m.rows
    ident = ExactMatrix.identity(n)
    coeffs = [Fraction(1)]
    running = ExactMatrix.zeros(n, n)
    for k in range(1, n + 1):
        running = m @ running + ident * coeffs[-1]
        coeffs.append(-(m @ running).trace() / k)
    return LaurentPoly.from_coefficients(coeffs)


def smith_normal_form(m: ExactMatrix) -> Tuple[List[int], int]:
    """Elementary divisors d_1 | d_2 | ... (zeros last) and the rank."""
    a = m.to_int_rows()
    nrows, ncols = m.rows, m.cols
    size = min(nrows, ncols)
    divisors: List[int] = []
    t = 0
    while t < size:
        entries = [(abs(a[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            lead = a[t][t]
            clean = True
            for i in range(t + 1, nrows):
                q = a[i][t] // lead
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    clean = False
            for j in range(t + 1, ncols):
                q = a[t][j] // lead
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    clean = False
            if not clean:
                # move the smallest remainder in row/column t onto the diagonal
                cands = [(abs(a[i][t]), i, t) for i in range(t + 1, nrows) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t + 1, ncols) if a[t][j]]
                _, ci, cj = min(cands)
                if cj == t:
                    a[t], a[ci] = a[ci], a[t]
                else:
                    for row in a:
                        row[t], row[cj] = row[cj], row[t]
                continue
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % lead),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        divisors.append(abs(a[t][t]))
        t += 1
    rank = len(divisors)
    return divisors + [0] * (size - rank), rank


class EchelonBasis:
    """Row-echelon basis of sparse rational vectors, grown one vector at a time.

    Vectors are dicts from comparable keys to rationals. Each stored row has
    its pivot as smallest key and pivot coefficient 1.
    """

    def __init__(self):
        self._rows: Dict[Hashable, Dict[Hashable, Fraction]] = {}
        self._pivots: List[Hashable] = []

    def __len__(self) -> int:
        return len(self._pivots)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, vector: Dict[Hashable, Scalar]) -> Dict[Hashable, Fraction]:
        v = {k: Fraction(x) for k, x in vector.items() if x}
        for pivot in self._pivots:
            coef = v.get(pivot)
            if not coef:
                continue
            for key, x in self._rows[pivot].items():
                value = v.get(key, 0) - coef * x
                if value:
                    v[key] = value
                else:
                    v.pop(key, None)
        return v

    def add(self, vector: Dict[Hashable, Scalar]) -> bool:
        """Insert ``vector``; return False when it is already in the span."""
        v = self.reduce(vector)
        if not v:
            return False
        pivot = min(v)
        lead = v[pivot]
        self._rows[pivot] = {k: x / lead for k, x in v.items()}
        bisect.insort(self._pivots, pivot)
        return True

    def contains(self, vector: Dict[Hashable, Scalar]) -> bool:
        return not self.reduce(vector)

    def rows(self) -> List[Dict[Hashable, Fraction]]:
        return [dict(self._rows[p]) for p in self._pivots]
