"""Integer lattices: saturated kernels, complements and primitive vectors.

Kernels are computed by integer column reduction that keeps a unimodular
transform V with M·V = H. The columns of V beyond the rank of M span the
integer kernel and form a basis of a saturated lattice, i.e. the kernel lattice
equals (kernel over Q) ∩ Z^n. The basis is then brought to Hermite normal form
so that equal lattices always yield equal matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Sequence

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_form

from ..core.logger import get_logger
from .exact import IntegerMatrix, RationalMatrix, as_integer_matrix, to_fraction

logger = get_logger(__name__)

@dataclass(frozen=True)
class ColumnEchelon:
    """
    Result of integer column reduction M·V = H.

    Attributes:
        H (IntegerMatrix): Column echelon form; column k is zero above row pivots[k][0]
            and H[pivots[k]] > 0. Columns past len(pivots) are zero.
        V (IntegerMatrix): Unimodular transform (determinant ±1).
        pivots (tuple[tuple[int, int], ...]): (row, column) of each pivot.
    """
    H: IntegerMatrix
    V: IntegerMatrix
    pivots: tuple[tuple[int, int], ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)

def clear_denominators(matrix: RationalMatrix) -> IntegerMatrix:
    """Scale every row by the lcm of its denominators; the kernel is unchanged."""
    if isinstance(matrix, IntegerMatrix):
        return matrix
    rows = []
    for row in matrix.rows:
        factor = lcm(*(to_fraction(v).denominator for v in row)) if row else 1
        rows.append([int(to_fraction(v) * factor) for v in row])
    return IntegerMatrix(rows, ncols=matrix.ncols)

def primitive_vector(vector: Sequence) -> tuple[int, ...]:
    """
    Smallest integer multiple of a rational vector with coprime entries.

    The sign is kept; the zero vector is returned unchanged.
    """
    values = [to_fraction(v) for v in vector]
    if all(v == 0 for v in values):
        return tuple(0 for _ in values)
    factor = lcm(*(v.denominator for v in values))
    ints = [int(v * factor) for v in values]
    g = gcd(*ints)
    return tuple(v // g for v in ints)

def column_echelon(matrix: RationalMatrix) -> ColumnEchelon:
    """
    Integer column reduction of an integer matrix.

    Row by row, Euclidean column operations among the not yet fixed columns
    leave a single nonzero entry, which becomes the next pivot.

    Args:
        matrix (RationalMatrix): Matrix with integer entries.

    Returns:
        ColumnEchelon: H, V and the pivots with matrix·V = H.
    """
    integer = as_integer_matrix(matrix)
    nrows, ncols = integer.shape
    a = integer.to_lists()
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def swap(c1: int, c2: int) -> None:
        for rows in (a, v):
            for row in rows:
                row[c1], row[c2] = row[c2], row[c1]

    def subtract(target: int, source: int, q: int) -> None:
        for rows in (a, v):
            for row in rows:
                if row[source]:
                    row[target] -= q * row[source]

    def negate(c: int) -> None:
        for rows in (a, v):
            for row in rows:
                row[c] = -row[c]

    pivots: list[tuple[int, int]] = []
    col = 0
    for i in range(nrows):
        if col == ncols:
            break
        while True:
            nonzero = [j for j in range(col, ncols) if a[i][j] != 0]
            if not nonzero:
                break
            smallest = min(nonzero, key=lambda j: abs(a[i][j]))
            if smallest != col:
                swap(col, smallest)
            reduced = True
            for j in range(col + 1, ncols):
                if a[i][j] != 0:
                    subtract(j, col, a[i][j] // a[i][col])
                    if a[i][j] != 0:
                        reduced = False
            if reduced:
                break
        if a[i][col] != 0:
            if a[i][col] < 0:
                negate(col)
            pivots.append((i, col))
            col += 1

    return ColumnEchelon(
        H=IntegerMatrix(a, ncols=ncols),
        V=IntegerMatrix(v, ncols=ncols),
        pivots=tuple(pivots),
    )

def hermite_basis(basis: IntegerMatrix) -> IntegerMatrix:
    """
    Canonical basis of the lattice spanned by the columns of `basis`.

    Uses the Hermite normal form from sympy. Column count is preserved for a
    basis of full column rank.
    """
    nrows, ncols = basis.shape
    if ncols == 0 or nrows == 0:
        return basis
    hnf = hermite_normal_form(Matrix(basis.to_lists()))
    if hnf.shape != basis.shape:
        logger.warning(f"Hermite form changed shape {basis.shape} -> {hnf.shape}; keeping unreduced basis")
        return basis
    return IntegerMatrix([[int(hnf[i, j]) for j in range(ncols)] for i in range(nrows)], ncols=ncols)

def integer_kernel(matrix: RationalMatrix) -> IntegerMatrix:
    """
    Basis of the saturated integer kernel {u ∈ Z^n : matrix·u = 0}.

    Args:
        matrix (RationalMatrix): An a×n matrix with rational entries.

    Returns:
        IntegerMatrix: n×k matrix whose columns are the basis, k = n - rank(matrix).
    """
    integer = clear_denominators(matrix)
    ncols = integer.ncols
    if integer.nrows == 0:
        return IntegerMatrix.identity(ncols)
    echelon = column_echelon(integer)
    free = list(range(echelon.rank, ncols))
    kernel = echelon.V.submatrix(cols=free)
    kernel = hermite_basis(kernel)
    logger.debug(f"Integer kernel of {matrix.shape} matrix: {kernel.ncols} generators")
    return kernel

def integer_complement(vectors: RationalMatrix) -> IntegerMatrix:
    """
    Integer basis of the orthogonal complement of the column space of `vectors`.

    Args:
        vectors (RationalMatrix): s×P matrix whose columns span a subspace V of Q^s.

    Returns:
        IntegerMatrix: w×s matrix whose rows form a saturated basis of
            V^⊥ ∩ Z^s, where w = s - rank(vectors).
    """
    nrows = vectors.nrows
    if vectors.ncols == 0:
        return IntegerMatrix.identity(nrows)
    return integer_kernel(vectors.T).T

def is_saturated(basis: IntegerMatrix) -> bool:
    """
    True if the lattice spanned by the columns of `basis` equals its rational span ∩ Z^n.

    Equivalent to all invariant factors of the Smith normal form being 1.
    """
    if basis.ncols == 0:
        return True
    diagonal = smith_normal_form(Matrix(basis.to_lists()), domain=ZZ)
    factors = [abs(int(diagonal[k, k])) for k in range(min(basis.shape))]
    return len(factors) == basis.ncols and all(f == 1 for f in factors)
