import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from toricrn.analysis.toric import (
    Condition1Failure,
    ToricCertificate,
    binomial_generators,
    build_condition3,
    certificate_from_partition,
    check_condition2,
    check_condition2_determinant,
    check_condition3,
    find_certificate,
    sign_obstruction,
)
from toricrn.core.errors import ConditionError, DimensionError
from toricrn.core.logger import get_logger, set_log_level
from toricrn.linalg.exact import RationalMatrix, kernel_basis, rank
from toricrn.network.fixtures import load_fixture
from toricrn.network.model import build_matrices, random_rates, unit_rates

import random
from fractions import Fraction

import pytest

# Setup Logger
logger = get_logger(__name__)
set_log_level("DEBUG")

def block_matrix(vectors, blocks, m):
    """Σ whose kernel is spanned by `vectors`, vector k supported on blocks[k]."""
    rows = []
    for vector, block in zip(vectors, blocks):
        first = block[0]
        for idx in range(1, len(block)):
            row = [Fraction(0)] * m
            row[block[idx]] = Fraction(vector[0])
            row[first] = -Fraction(vector[idx])
            rows.append(row)
    return RationalMatrix(rows, ncols=m) if rows else RationalMatrix.zeros(1, m)

def random_block_system(rng, signed):
    m = rng.randint(2, 7)
    order = list(range(m))
    rng.shuffle(order)
    blocks, start = [], 0
    while start < m:
        size = rng.randint(1, m - start)
        blocks.append(sorted(order[start:start + size]))
        start += size
    vectors = []
    for block in blocks:
        sign = rng.choice((1, -1))
        vectors.append([
            sign * (rng.choice((1, -1)) if signed else 1) * Fraction(rng.randint(1, 9), rng.randint(1, 4))
            for _ in block
        ])
    return block_matrix(vectors, blocks, m), blocks, vectors

def test_triangle_condition1_iff_equal_rates():
    net = load_fixture("triangle")
    rng = random.Random(11)
    for _ in range(50):
        rates = random_rates(net, rng)
        equal = rates.replace(k32=rates["k31"])
        unequal = rates.replace(k32=rates["k31"] + 1)
        cert = find_certificate(build_matrices(net, equal).sigma, net.complexes)
        assert isinstance(cert, ToricCertificate)
        assert cert.partition() == [[1, 2], [3]]
        assert check_condition2(cert)
        failure = find_certificate(build_matrices(net, unequal).sigma, net.complexes)
        assert isinstance(failure, Condition1Failure)

def test_triangle_binomial_at_unit_rates():
    net = load_fixture("triangle")
    cert = find_certificate(build_matrices(net, unit_rates(net)).sigma, net.complexes)
    (binomial,) = binomial_generators(cert)
    assert binomial.pair == (0, 1)
    assert binomial.evaluate([3, 3]) == 0
    assert binomial.evaluate([1, 2]) != 0
    assert str(binomial.expression(["A", "B"])) in ("-A**2 + B**2", "B**2 - A**2")

def test_sf_fails_condition1_for_any_rates():
    net = load_fixture("sf")
    rng = random.Random(5)
    for _ in range(20):
        sigma = build_matrices(net, random_rates(net, rng)).sigma
        assert isinstance(find_certificate(sigma, net.complexes), Condition1Failure)

def test_sf_kernel_contains_complexes_without_outflow():
    net = load_fixture("sf")
    sigma = build_matrices(net, unit_rates(net)).sigma
    assert len(kernel_basis(sigma)) == 6
    for complex_number in (4, 7, 10, 13):
        assert all(v == 0 for v in sigma.col(complex_number - 1))

def test_random_block_systems_recover_their_partition():
    rng = random.Random(21)
    for trial in range(40):
        sigma, blocks, vectors = random_block_system(rng, signed=trial % 2 == 1)
        cert = find_certificate(sigma)
        assert isinstance(cert, ToricCertificate)
        assert [list(b) for b in cert.blocks] == sorted(blocks, key=lambda b: b[0])
        cert.validate(sigma)
        sign_constant = all(len({v > 0 for v in vec}) == 1 for vec in vectors)
        assert check_condition2(cert) == sign_constant
        assert check_condition2_determinant(sigma, cert) == sign_constant

def test_sign_obstruction_is_reported():
    sigma = RationalMatrix([[1, 1]])
    cert = find_certificate(sigma, [(1, 0), (0, 1)])
    assert isinstance(cert, ToricCertificate)
    assert not check_condition2(cert)
    assert not check_condition2_determinant(sigma, cert)
    obstruction = sign_obstruction(cert)
    assert (obstruction.first, obstruction.second) == (0, 1)
    assert obstruction.c1 * obstruction.c2 < 0
    with pytest.raises(ConditionError):
        build_condition3(cert)

def test_zero_coordinate_failure():
    failure = find_certificate(RationalMatrix([[1, 0], [0, 1]]))
    assert isinstance(failure, Condition1Failure)
    assert failure.reason == "zero_coordinate"
    assert failure.coordinate == 0
    assert "coordinate 1" in failure.message

def test_exponent_count_must_match():
    with pytest.raises(DimensionError):
        find_certificate(RationalMatrix([[1, -1]]), [(1,)])

def two_block_system(b):
    # x2 = 2 x1 and x2^2 = b x1^2 share a positive zero exactly when b = 4
    exponents = [(1, 0), (0, 1), (2, 0), (0, 2)]
    sigma = block_matrix([[1, 2], [1, b]], [[0, 1], [2, 3]], 4)
    return find_certificate(sigma, exponents)

def test_condition3_on_the_exponent_lattice():
    consistent = build_condition3(two_block_system(4))
    assert consistent.U.ncols == 1
    assert check_condition3(consistent)
    assert not check_condition3(build_condition3(two_block_system(3)))

def test_binomials_span_the_row_space():
    rng = random.Random(8)
    for name in ("triangle", "phos1", "phos2"):
        net = load_fixture(name)
        rates = random_rates(net, rng)
        if name == "triangle":
            rates = rates.replace(k32=rates["k31"])
        sigma = build_matrices(net, rates).sigma
        cert = find_certificate(sigma, net.complexes)
        binomials = binomial_generators(cert)
        B = RationalMatrix([b.coefficient_vector(net.m) for b in binomials], ncols=net.m)
        assert rank(B) == rank(sigma) == rank(RationalMatrix.vstack(sigma, B))

def test_certificate_from_partition():
    sigma = block_matrix([[1, 2], [3]], [[0, 2], [1]], 3)
    cert = certificate_from_partition(sigma, [(1, 0), (0, 1), (1, 1)], [[2, 0], [1]])
    assert cert.blocks == ((0, 2), (1,))
    with pytest.raises(ConditionError):
        certificate_from_partition(sigma, [(1, 0), (0, 1), (1, 1)], [[0, 1], [2]])
    with pytest.raises(ConditionError):
        certificate_from_partition(sigma, [(1, 0), (0, 1), (1, 1)], [[0]])

def test_condition2_tests_agree_on_phos2():
    net = load_fixture("phos2")
    rng = random.Random(29)
    for _ in range(50):
        sigma = build_matrices(net, random_rates(net, rng)).sigma
        cert = find_certificate(sigma, net.complexes)
        assert isinstance(cert, ToricCertificate)
        assert check_condition2(cert)
        assert check_condition2_determinant(sigma, cert)
