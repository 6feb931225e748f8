import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from toricrn.analysis.enlarge import Multiplier, enlarge, enlarge_system, monomials_up_to, search_multipliers
from toricrn.analysis.toric import ToricCertificate, find_certificate
from toricrn.core.errors import DimensionError
from toricrn.core.logger import get_logger, set_log_level
from toricrn.linalg.exact import RationalMatrix
from toricrn.network.fixtures import load_fixture
from toricrn.network.model import build_matrices, random_rates, unit_rates

import random

import pytest

# Setup Logger
logger = get_logger(__name__)
set_log_level("DEBUG")

X7 = (0, 0, 0, 0, 0, 0, 1, 0, 0)
SF_MULTIPLIERS = [Multiplier(X7, i) for i in (0, 2, 7, 8)]
SF_PARTITION = [[1, 2, 3, 5, 6, 7, 8, 9, 11, 12], [4], [10], [13], [14, 15], [16, 17]]

def test_monomials_up_to_order():
    assert list(monomials_up_to(2, 2)) == [(0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
    assert list(monomials_up_to(3, 0)) == []

def test_enlarge_appends_new_monomials():
    sigma = RationalMatrix([[1, -1, 0], [0, 2, -2]])
    exponents = [(1, 0), (0, 1), (1, 1)]
    system = enlarge(sigma, exponents, [Multiplier((1, 0), 0)])
    assert system.sigma.shape == (3, 4)
    assert system.exponents == ((1, 0), (0, 1), (1, 1), (2, 0))
    assert system.sigma.row(2) == (0, 0, -1, 1)
    assert system.original_m == 3
    assert system.to_json()["new_monomials"] == [[2, 0]]

def test_enlarge_rejects_bad_multipliers():
    sigma = RationalMatrix([[1, -1]])
    exponents = [(1, 0), (0, 1)]
    with pytest.raises(DimensionError):
        enlarge(sigma, exponents, [Multiplier((1, 0), 1)])
    with pytest.raises(DimensionError):
        enlarge(sigma, exponents, [Multiplier((1,), 0)])
    with pytest.raises(DimensionError):
        enlarge(sigma, exponents, [Multiplier((-1, 0), 0)])

def test_sf_enlarged_by_y_p_has_six_blocks():
    net = load_fixture("sf")
    rng = random.Random(3)
    for rates in [unit_rates(net)] + [random_rates(net, rng) for _ in range(3)]:
        system = enlarge_system(build_matrices(net, rates), SF_MULTIPLIERS)
        assert system.sigma.shape == (13, 17)
        assert system.exponents[13:] == (
            (1, 0, 0, 0, 0, 0, 2, 0, 0),
            (0, 0, 0, 0, 0, 0, 1, 0, 1),
            (0, 0, 1, 0, 0, 0, 2, 0, 0),
            (0, 0, 0, 0, 0, 0, 1, 1, 0),
        )
        cert = find_certificate(system.sigma, system.exponents)
        assert isinstance(cert, ToricCertificate)
        assert cert.partition() == SF_PARTITION

def test_search_finds_a_degree_one_multiplier_for_sf():
    net = load_fixture("sf")
    found = search_multipliers(build_matrices(net, unit_rates(net)), bound=1)
    assert found is not None
    system, cert = found
    cert.validate(system.sigma)
    assert all(sum(mult.alpha) == 1 for mult in system.multipliers)

def test_search_disabled_with_bound_zero():
    net = load_fixture("sf")
    assert search_multipliers(build_matrices(net, unit_rates(net)), bound=0) is None
