"""Exact dense matrices over the rationals and the integers.

Entries are `fractions.Fraction` (RationalMatrix) or `int` (IntegerMatrix),
so every identity the analysis relies on can be checked with `==`.
Matrices are immutable; all routines return new objects.

Typical usage example:
    sigma = RationalMatrix([[-3, 3, 0], [3, -3, 0]])
    reduced, pivots, rank = rref(sigma)
    kernel = kernel_basis(sigma)
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Iterable, Sequence

from ..core.errors import DimensionError
from ..core.logger import get_logger

logger = get_logger(__name__)

Vector = tuple[Fraction, ...]

def to_fraction(value) -> Fraction:
    """Convert an int, Fraction, "p/q" string or sympy Rational to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if hasattr(value, "p") and hasattr(value, "q"):     # sympy Rational / Integer
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"Cannot convert {value!r} of type {type(value).__name__} to an exact rational")

def _to_int(value) -> int:
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, numbers.Integral):
        return int(value)
    q = to_fraction(value)
    if q.denominator != 1:
        raise ValueError(f"IntegerMatrix entry {q} is not an integer")
    return q.numerator

class RationalMatrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("_rows", "_shape")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        """
        Args:
            rows (Iterable[Iterable]): Row-major entries.
            ncols (int | None): Column count; required when there are no rows.
        """
        data = tuple(tuple(self._coerce(v) for v in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise DimensionError("Not all rows are of equal length")
            if ncols is not None and ncols != width:
                raise DimensionError(f"Rows have {width} entries but ncols={ncols}")
        else:
            width = ncols or 0
        self._rows = data
        self._shape = (len(data), width)

    @staticmethod
    def _coerce(value):
        return to_fraction(value)

    # ----- constructors -----
    @classmethod
    def zeros(cls, nrows: int, ncols: int):
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, n: int):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def diag(cls, values: Sequence):
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int):
        """Build a matrix whose columns are `columns` (each of length `nrows`)."""
        for col in columns:
            if len(col) != nrows:
                raise DimensionError(f"Column of length {len(col)} does not fit {nrows} rows")
        return cls([[col[i] for col in columns] for i in range(nrows)], ncols=len(columns))

    @classmethod
    def hstack(cls, *blocks: "RationalMatrix"):
        nrows = blocks[0].nrows
        if any(b.nrows != nrows for b in blocks):
            raise DimensionError("hstack needs equal row counts")
        return cls([sum((b.row(i) for b in blocks), ()) for i in range(nrows)], ncols=sum(b.ncols for b in blocks))

    @classmethod
    def vstack(cls, *blocks: "RationalMatrix"):
        ncols = blocks[0].ncols
        if any(b.ncols != ncols for b in blocks):
            raise DimensionError("vstack needs equal column counts")
        return cls([row for b in blocks for row in b.rows], ncols=ncols)

    # ----- access -----
    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def nrows(self) -> int:
        return self._shape[0]

    @property
    def ncols(self) -> int:
        return self._shape[1]

    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self._rows)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, index: tuple[int, int]):
        i, j = index
        return self._rows[i][j]

    def to_lists(self) -> list[list]:
        return [list(row) for row in self._rows]

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None):
        """Return the matrix restricted to the given row and column indices (in the given order)."""
        rows = range(self.nrows) if rows is None else rows
        cols = range(self.ncols) if cols is None else cols
        cols = list(cols)
        return type(self)([[self._rows[i][j] for j in cols] for i in rows], ncols=len(cols))

    def delete(self, rows: Iterable[int] = (), cols: Iterable[int] = ()):
        """Return the matrix with the given rows and columns removed."""
        drop_r, drop_c = set(rows), set(cols)
        return self.submatrix(
            [i for i in range(self.nrows) if i not in drop_r],
            [j for j in range(self.ncols) if j not in drop_c],
        )

    def is_zero(self) -> bool:
        return all(v == 0 for row in self._rows for v in row)

    # ----- arithmetic -----
    @property
    def T(self):
        return type(self)([self.col(j) for j in range(self.ncols)], ncols=self.nrows)

    def _result_type(self, other):
        if isinstance(self, IntegerMatrix) and isinstance(other, IntegerMatrix):
            return IntegerMatrix
        return RationalMatrix

    def __matmul__(self, other: "RationalMatrix"):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionError(f"Cannot multiply {self.shape} by {other.shape}")
        other_cols = other.columns()
        out = [[sum((a * b for a, b in zip(row, col)), 0) for col in other_cols] for row in self._rows]
        return self._result_type(other)(out, ncols=other.ncols)

    def matvec(self, vector: Sequence) -> tuple:
        """Return the product of the matrix with a vector, as a tuple."""
        if len(vector) != self.ncols:
            raise DimensionError(f"Vector of length {len(vector)} does not match {self.ncols} columns")
        return tuple(sum((a * b for a, b in zip(row, vector)), 0) for row in self._rows)

    def __add__(self, other: "RationalMatrix"):
        if self.shape != other.shape:
            raise DimensionError(f"Cannot add {self.shape} and {other.shape}")
        return self._result_type(other)(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other.rows)], ncols=self.ncols
        )

    def __sub__(self, other: "RationalMatrix"):
        return self + (-other)

    def __neg__(self):
        return type(self)([[-v for v in row] for row in self._rows], ncols=self.ncols)

    def scale(self, factor):
        factor = to_fraction(factor)
        return RationalMatrix([[factor * v for v in row] for row in self._rows], ncols=self.ncols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other.rows

    def __hash__(self) -> int:
        return hash((self._shape, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in row) for row in self._rows)
        return f"{type(self).__name__}{self._shape}[{body}]"

class IntegerMatrix(RationalMatrix):
    """RationalMatrix whose entries are Python ints."""

    __slots__ = ()

    @staticmethod
    def _coerce(value):
        return _to_int(value)

    def to_rational(self) -> RationalMatrix:
        return RationalMatrix(self.rows, ncols=self.ncols)

def as_integer_matrix(matrix: RationalMatrix) -> IntegerMatrix:
    """Return `matrix` as an IntegerMatrix; raises ValueError on a non-integer entry."""
    if isinstance(matrix, IntegerMatrix):
        return matrix
    return IntegerMatrix(matrix.rows, ncols=matrix.ncols)

def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionError(f"Vectors of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), 0)

def rref(matrix: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...], int]:
    """
    Reduced row echelon form by Gauss-Jordan elimination over the rationals.

    Args:
        matrix (RationalMatrix): Input matrix.

    Returns:
        tuple: (reduced matrix, pivot column indices, rank)
    """
    m = [list(map(to_fraction, row)) for row in matrix.rows]
    nrows, ncols = matrix.shape
    pivots: list[int] = []
    piv_r = 0
    for piv_c in range(ncols):
        if piv_r == nrows:
            break
        for i_row in range(piv_r, nrows):
            if m[i_row][piv_c] != 0:
                break
        else:
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
        fp = m[piv_r][piv_c]
        if fp != 1:
            m[piv_r] = [v / fp for v in m[piv_r]]
        pivot_row = m[piv_r]
        for r in range(nrows):
            if r == piv_r:
                continue
            fr = m[r][piv_c]
            if fr == 0:
                continue
            row = m[r]
            for c in range(piv_c, ncols):
                if pivot_row[c] != 0:
                    row[c] -= fr * pivot_row[c]
        pivots.append(piv_c)
        piv_r += 1
    return RationalMatrix(m, ncols=ncols), tuple(pivots), len(pivots)

def rank(matrix: RationalMatrix) -> int:
    """Exact rank over the rationals."""
    if matrix.nrows == 0 or matrix.ncols == 0:
        return 0
    return rref(matrix)[2]

def kernel_basis(matrix: RationalMatrix) -> list[Vector]:
    """
    Exact basis of the right kernel {v : matrix·v = 0}.

    One vector per free column of the reduced row echelon form, with a 1 in that
    column. The number of vectors is ncols - rank.
    """
    reduced, pivots, _ = rref(matrix)
    ncols = matrix.ncols
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i, free]
        basis.append(tuple(v))
    logger.debug(f"Kernel of {matrix.shape} matrix has dimension {len(basis)}")
    return basis

def row_space_basis(matrix: RationalMatrix) -> list[Vector]:
    """Nonzero rows of the reduced row echelon form."""
    reduced, _, r = rref(matrix)
    return [reduced.row(i) for i in range(r)]

def solve(matrix: RationalMatrix, rhs: Sequence) -> Vector | None:
    """
    One exact solution of matrix·x = rhs (free variables set to zero), or None if inconsistent.
    """
    if len(rhs) != matrix.nrows:
        raise DimensionError(f"Right-hand side of length {len(rhs)} for {matrix.nrows} rows")
    augmented = RationalMatrix.hstack(matrix.to_rational() if isinstance(matrix, IntegerMatrix) else matrix,
                                      RationalMatrix([[v] for v in rhs], ncols=1))
    reduced, pivots, _ = rref(augmented)
    ncols = matrix.ncols
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = reduced[i, ncols]
    return tuple(x)

def det_bareiss(matrix: RationalMatrix) -> Fraction:
    """
    Exact determinant by Bareiss fraction-free elimination.

    Rows are first scaled to integers; the scaling is divided out at the end.

    Raises:
        DimensionError: If the matrix is not square.
    """
    n, ncols = matrix.shape
    if n != ncols:
        raise DimensionError(f"Determinant of non-square {matrix.shape} matrix")
    if n == 0:
        return Fraction(1)

    scale = Fraction(1)
    a: list[list[int]] = []
    for row in matrix.rows:
        fractions = [to_fraction(v) for v in row]
        factor = math.lcm(*(v.denominator for v in fractions))
        a.append([int(v * factor) for v in fractions])
        scale *= factor

    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                # exact division is the Bareiss invariant
                row_i[j] = (row_i[j] * pivot - lead * a[k][j]) // prev
            row_i[k] = 0
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1]) / scale
