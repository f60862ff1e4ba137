"""Dense exact matrices over the rationals and the elimination routines on them."""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DimensionError, InvalidArgumentError


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major tuple of row tuples of Fraction

    def __post_init__(self):
        entries = tuple(tuple(Fraction(v) for v in row) for row in self.entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise DimensionError(
                f"expected {self.rows}x{self.cols} entries, got shape "
                f"{len(entries)}x{[len(r) for r in entries]}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> QMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, r: int, c: int) -> QMatrix:
        return cls(r, c, tuple((0,) * c for _ in range(r)))

    @classmethod
    def diagonal(cls, values: Sequence) -> QMatrix:
        n = len(values)
        return cls(n, n, tuple(tuple(values[i] if i == j else 0 for j in range(n))
                               for i in range(n)))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def tolist(self) -> list:
        return [list(r) for r in self.entries]

    def transpose(self) -> QMatrix:
        return QMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())

    def __add__(self, other: QMatrix) -> QMatrix:
        self._same_shape(other)
        return QMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: QMatrix) -> QMatrix:
        self._same_shape(other)
        return QMatrix(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def scale(self, c) -> QMatrix:
        c = Fraction(c)
        return QMatrix(self.rows, self.cols, tuple(tuple(c * v for v in r) for r in self.entries))

    def __matmul__(self, other: QMatrix) -> QMatrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.transpose().entries
        return QMatrix(self.rows, other.cols, tuple(
            tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols)
            for r in self.entries))

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionError("vector length does not match column count")
        return tuple(sum((a * Fraction(b) for a, b in zip(r, v)), Fraction(0))
                     for r in self.entries)

    def __pow__(self, k: int) -> QMatrix:
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        out = QMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    # -- elimination ------------------------------------------------------------
    def rref(self) -> tuple:
        """Reduced row echelon form and the list of pivot columns."""
        m = [list(r) for r in self.entries]
        pivots = []
        row = 0
        for col in range(self.cols):
            p = next((i for i in range(row, self.rows) if m[i][col]), None)
            if p is None:
                continue
            m[row], m[p] = m[p], m[row]
            inv = 1 / m[row][col]
            m[row] = [v * inv for v in m[row]]
            for i in range(self.rows):
                if i != row and m[i][col]:
                    f = m[i][col]
                    m[i] = [a - f * b for a, b in zip(m[i], m[row])]
            pivots.append(col)
            row += 1
            if row == self.rows:
                break
        return QMatrix(self.rows, self.cols, tuple(tuple(r) for r in m)), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> list:
        """Basis of the right null space, one tuple per basis vector."""
        red, pivots = self.rref()
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for i, p in enumerate(pivots):
                v[p] = -red[i, f]
            basis.append(tuple(v))
        return basis

    def det(self) -> Fraction:
        if not self.is_square:
            raise DimensionError("determinant of a non-square matrix")
        return bareiss_det([list(r) for r in self.entries], operator.truediv,
                           Fraction(0), Fraction(1))

    def inverse(self) -> QMatrix:
        if not self.is_square:
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        aug = QMatrix(n, 2 * n, tuple(
            tuple(r) + tuple(int(i == j) for j in range(n)) for i, r in enumerate(self.entries)))
        red, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise InvalidArgumentError("matrix is singular")
        return QMatrix(n, n, tuple(r[n:] for r in red.entries))


def bareiss_det(m: list, exact_div: Callable, zero, one):
    """Fraction-free determinant over any integral domain.

    ``m`` is a square list of lists (consumed), ``exact_div(a, b)`` must
    return ``a / b`` whenever the division is exact.
    """
    n = len(m)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if m[k][k] == zero:
            swap = next((i for i in range(k + 1, n) if m[i][k] != zero), None)
            if swap is None:
                return zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[i][j] * pivot - m[i][k] * m[k][j], prev)
        prev = pivot
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def span_complement(vectors: Sequence[Sequence], n: int) -> list:
    """Basis of the linear forms (as coefficient tuples) vanishing on ``vectors``."""
    if not vectors:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    return QMatrix.from_rows(vectors).kernel()
