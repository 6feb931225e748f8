import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from toricrn.core.errors import DimensionError
from toricrn.core.logger import get_logger, set_log_level
from toricrn.linalg.exact import (
    IntegerMatrix,
    RationalMatrix,
    as_integer_matrix,
    det_bareiss,
    kernel_basis,
    rank,
    row_space_basis,
    rref,
    solve,
    to_fraction,
)

import random
from fractions import Fraction

import pytest

# Setup Logger
logger = get_logger(__name__)
set_log_level("DEBUG")

def cofactor_det(rows):
    """Laplace expansion along the first row."""
    if not rows:
        return Fraction(1)
    if len(rows) == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j, value in enumerate(rows[0]):
        if value == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        total += (-1) ** j * Fraction(value) * cofactor_det(minor)
    return total

def random_matrix(rng, nrows, ncols, low=-4, high=4, rational=False):
    rows = []
    for _ in range(nrows):
        row = []
        for _ in range(ncols):
            value = Fraction(rng.randint(low, high), rng.randint(1, 3) if rational else 1)
            row.append(value)
        rows.append(row)
    return rows

def test_to_fraction_accepts_common_inputs():
    assert to_fraction(3) == Fraction(3)
    assert to_fraction("3/4") == Fraction(3, 4)
    assert to_fraction(Fraction(1, 2)) == Fraction(1, 2)
    assert to_fraction(True) == Fraction(1)
    with pytest.raises(TypeError):
        to_fraction(object())

def test_constructors_and_shapes():
    I = RationalMatrix.identity(3)
    assert I.shape == (3, 3)
    assert I @ I == I
    Z = RationalMatrix.zeros(2, 0)
    assert Z.shape == (2, 0)
    assert Z.T.shape == (0, 2)
    M = RationalMatrix.from_columns([(1, 2), (3, 4), (5, 6)], nrows=2)
    assert M.to_lists() == [[1, 3, 5], [2, 4, 6]]
    assert RationalMatrix.hstack(M, I.submatrix(rows=[0, 1], cols=[0])).shape == (2, 4)
    assert RationalMatrix.vstack(M, M).shape == (4, 3)
    with pytest.raises(DimensionError):
        RationalMatrix([[1, 2], [3]])
    with pytest.raises(DimensionError):
        M @ M

def test_integer_matrix_rejects_fractions():
    assert isinstance(as_integer_matrix(RationalMatrix([[2, 4]])), IntegerMatrix)
    with pytest.raises(ValueError):
        IntegerMatrix([[Fraction(1, 2)]])
    product = IntegerMatrix([[1, 2]]) @ IntegerMatrix([[3], [4]])
    assert isinstance(product, IntegerMatrix)
    assert product.to_lists() == [[11]]

def test_delete_and_submatrix():
    M = RationalMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert M.delete(rows=[1], cols=[0]).to_lists() == [[2, 3], [8, 9]]
    assert M.submatrix(rows=[2], cols=[2, 0]).to_lists() == [[9, 7]]

def test_rref_of_rank_deficient_matrix():
    M = RationalMatrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    reduced, pivots, r = rref(M)
    assert r == 2
    assert pivots == (0, 1)
    assert reduced.row(2) == (0, 0, 0)

def test_kernel_basis_random():
    rng = random.Random(7)
    for _ in range(30):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 6)
        M = RationalMatrix(random_matrix(rng, nrows, ncols, rational=True))
        kernel = kernel_basis(M)
        assert len(kernel) == ncols - rank(M)
        for vec in kernel:
            assert all(v == 0 for v in M.matvec(vec))
        if kernel:
            assert rank(RationalMatrix(kernel)) == len(kernel)

def test_row_space_basis_spans_rows():
    M = RationalMatrix([[1, 1, 0], [0, 1, 1], [1, 2, 1]])
    basis = row_space_basis(M)
    assert len(basis) == 2
    assert rank(RationalMatrix(list(basis) + list(M.rows))) == 2

def test_solve_consistent_and_inconsistent():
    M = RationalMatrix([[1, 1], [1, -1]])
    assert solve(M, [3, 1]) == (2, 1)
    singular = RationalMatrix([[1, 1], [2, 2]])
    assert solve(singular, [1, 3]) is None
    x = solve(singular, [1, 2])
    assert singular.matvec(x) == (1, 2)
    with pytest.raises(DimensionError):
        solve(M, [1])

def test_det_bareiss_matches_cofactor_expansion():
    rng = random.Random(11)
    for size in range(1, 6):
        for _ in range(40):
            rows = random_matrix(rng, size, size, rational=True)
            assert det_bareiss(RationalMatrix(rows)) == cofactor_det(rows)

def test_det_bareiss_singular_and_non_square():
    assert det_bareiss(RationalMatrix([[1, 2], [2, 4]])) == 0
    with pytest.raises(DimensionError):
        det_bareiss(RationalMatrix([[1, 2, 3]]))

def test_matrices_are_value_objects():
    a = RationalMatrix([[1, Fraction(1, 2)]])
    b = RationalMatrix([["1", "1/2"]])
    assert a == b
    assert hash(a) == hash(b)
    assert (a - b).is_zero()
    assert (-a).scale(2) == RationalMatrix([[-2, -1]])
