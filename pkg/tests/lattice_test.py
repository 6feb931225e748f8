import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from toricrn.core.logger import get_logger, set_log_level
from toricrn.linalg.exact import IntegerMatrix, RationalMatrix, det_bareiss, rank
from toricrn.linalg.lattice import (
    clear_denominators,
    column_echelon,
    hermite_basis,
    integer_complement,
    integer_kernel,
    is_saturated,
    primitive_vector,
)

import random
from fractions import Fraction

# Setup Logger
logger = get_logger(__name__)
set_log_level("DEBUG")

def random_integer_matrix(rng, nrows, ncols, low=-3, high=3):
    return IntegerMatrix([[rng.randint(low, high) for _ in range(ncols)] for _ in range(nrows)], ncols=ncols)

def test_primitive_vector():
    assert primitive_vector([Fraction(1, 2), Fraction(-3, 4)]) == (2, -3)
    assert primitive_vector([4, 6, 0]) == (2, 3, 0)
    assert primitive_vector([-2, -4]) == (-1, -2)
    assert primitive_vector([0, 0]) == (0, 0)

def test_clear_denominators_keeps_kernel():
    M = RationalMatrix([[Fraction(1, 2), Fraction(1, 3)], [1, 1]])
    cleared = clear_denominators(M)
    assert cleared.to_lists() == [[3, 2], [1, 1]]

def test_column_echelon_is_unimodular():
    rng = random.Random(3)
    for _ in range(25):
        M = random_integer_matrix(rng, rng.randint(1, 4), rng.randint(1, 5))
        echelon = column_echelon(M)
        assert M @ echelon.V == echelon.H
        assert abs(det_bareiss(echelon.V)) == 1
        assert echelon.rank == rank(M)
        for row, col in echelon.pivots:
            assert echelon.H[row, col] > 0
            assert all(echelon.H[row, j] == 0 for j in range(col + 1, M.ncols))

def test_integer_kernel_small():
    K = integer_kernel(IntegerMatrix([[2, -2]]))
    assert K.shape == (2, 1)
    assert abs(K[0, 0]) == 1 and K[0, 0] == K[1, 0]

def test_integer_kernel_random():
    rng = random.Random(5)
    for _ in range(25):
        nrows, ncols = rng.randint(1, 4), rng.randint(1, 6)
        M = random_integer_matrix(rng, nrows, ncols)
        K = integer_kernel(M)
        assert K.shape == (ncols, ncols - rank(M))
        assert (M @ K).is_zero()
        assert is_saturated(K)

def test_integer_kernel_of_empty_matrix_is_identity():
    K = integer_kernel(IntegerMatrix([], ncols=3))
    assert K == IntegerMatrix.identity(3)

def test_integer_complement():
    delta = IntegerMatrix([[2], [-2]])
    A = integer_complement(delta)
    assert A.shape == (1, 2)
    assert (A @ delta).is_zero()
    assert abs(A[0, 0]) == 1 and A[0, 0] == A[0, 1]
    assert integer_complement(IntegerMatrix.zeros(3, 0)) == IntegerMatrix.identity(3)

def test_integer_complement_random():
    rng = random.Random(8)
    for _ in range(20):
        s, p = rng.randint(2, 6), rng.randint(1, 4)
        delta = random_integer_matrix(rng, s, p)
        A = integer_complement(delta)
        assert A.shape == (s - rank(delta), s)
        assert (A @ delta).is_zero()
        assert is_saturated(A.T)

def test_is_saturated():
    assert is_saturated(IntegerMatrix([[1], [0]]))
    assert not is_saturated(IntegerMatrix([[2], [0]]))
    assert not is_saturated(IntegerMatrix([[1, 1], [1, -1]]))
    assert is_saturated(IntegerMatrix.zeros(3, 0))

def test_hermite_basis_spans_same_lattice():
    basis = IntegerMatrix([[1, 1], [1, 2], [0, 1]])
    canonical = hermite_basis(basis)
    assert canonical.shape == basis.shape
    assert rank(RationalMatrix.hstack(basis, canonical)) == 2
    assert is_saturated(canonical)
