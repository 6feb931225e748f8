import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from toricrn.analysis.parametrize import build_parametrization, eval_parametrization, verify_parametrization
from toricrn.analysis.phospho import explicit_steady_state, generate, raw_basis
from toricrn.analysis.toric import ToricCertificate, binomial_generators, build_condition3, find_certificate
from toricrn.core.errors import ConditionError, DimensionError
from toricrn.core.logger import get_logger, set_log_level
from toricrn.linalg.exact import RationalMatrix, rank
from toricrn.network.fixtures import load_fixture, multisite_network
from toricrn.network.model import RateAssignment, build_matrices, differential, random_rates, unit_rates

import math
import random
from fractions import Fraction

import pytest

# Setup Logger
logger = get_logger(__name__)
set_log_level("DEBUG")

def parametrize(net, rates):
    matrices = build_matrices(net, rates)
    cert = find_certificate(matrices.sigma, matrices.exponents)
    data = build_condition3(cert)
    return matrices, binomial_generators(cert), data, build_parametrization(cert, data)

def random_t(rng, w):
    return [Fraction(rng.randint(1, 6), rng.randint(1, 4)) for _ in range(w)]

def test_triangle_unit_rates_is_exact():
    net = load_fixture("triangle")
    matrices, binomials, data, par = parametrize(net, unit_rates(net))
    assert par.exact
    assert par.x_tilde == (1, 1)
    assert par.A.shape == (1, 2)
    assert abs(par.A[0, 0]) == 1 and par.A[0, 0] == par.A[0, 1]
    x = eval_parametrization(par, [Fraction(3)])
    assert x[0] == x[1]
    assert differential(matrices, x) == (0, 0)

def test_irrational_root_falls_back_to_floats():
    net = load_fixture("triangle")
    rates = RateAssignment({"k12": 1, "k13": 1, "k21": 2, "k23": 2, "k31": 1, "k32": 1})
    matrices, binomials, data, par = parametrize(net, rates)
    assert not par.exact
    assert par.residual <= 1e-10
    assert abs(par.x_tilde[1] / par.x_tilde[0] - 2 ** -0.5) < 1e-12
    assert verify_parametrization(matrices, binomials, par, [1.7])["passed"]

def test_parametrization_closes_exactly_on_phosphorylation():
    rng = random.Random(17)
    for n in (1, 2, 3, 4):
        net = multisite_network(n)
        matrices, binomials, data, par = parametrize(net, random_rates(net, rng))
        assert par.w == 3
        assert (par.A @ data.delta).is_zero()
        for _ in range(20):
            result = verify_parametrization(matrices, binomials, par, random_t(rng, par.w))
            assert result["passed"]
            if par.exact:
                assert all(v == 0 for v in differential(matrices, result["x"]))

def test_triangle_with_equal_rates_closes():
    rng = random.Random(4)
    net = load_fixture("triangle")
    for _ in range(5):
        rates = random_rates(net, rng)
        rates = rates.replace(k32=rates["k31"])
        matrices, binomials, data, par = parametrize(net, rates)
        for _ in range(20):
            assert verify_parametrization(matrices, binomials, par, random_t(rng, par.w))["passed"]

def test_eval_parametrization_checks_parameters():
    net = load_fixture("triangle")
    _, _, _, par = parametrize(net, unit_rates(net))
    with pytest.raises(DimensionError):
        eval_parametrization(par, [1, 2])
    with pytest.raises(ValueError):
        eval_parametrization(par, [0])

def test_refuses_failed_conditions():
    sigma = RationalMatrix([[1, 1]])
    cert = find_certificate(sigma, [(1, 0), (0, 1)])
    two_block = find_certificate(RationalMatrix([[-2, 1, 0, 0], [0, 0, -3, 1]]), [(1, 0), (0, 1), (2, 0), (0, 2)])
    with pytest.raises(ConditionError):
        build_parametrization(cert, build_condition3(two_block))
    with pytest.raises(ConditionError):
        build_parametrization(two_block, build_condition3(two_block))

def test_two_site_reproduces_the_closed_form():
    rng = random.Random(31)
    net = multisite_network(2)
    for _ in range(10):
        rates = random_rates(net, rng)
        matrices = build_matrices(net, rates)
        cert = find_certificate(matrices.sigma, matrices.exponents)
        assert isinstance(cert, ToricCertificate)
        for closed in raw_basis(generate(2, rates)):
            support = [i for i, v in enumerate(closed) if v != 0]
            (vector,) = [vec for vec in cert.basis if [i for i, v in enumerate(vec) if v != 0] == support]
            ratios = {vector[i] / closed[i] for i in support}
            assert len(ratios) == 1 and ratios.pop() > 0
        data = build_condition3(cert)
        assert rank(data.delta) == 6
        assert data.U.ncols == 0
        par = build_parametrization(cert, data)
        assert par.exact
        assert par.x_tilde == explicit_steady_state(generate(2, rates))

def _ratio_power(x1, x2, exponents, exact):
    if exact:
        value = Fraction(1)
        for a, b, e in zip(x1, x2, exponents):
            value *= (b / a) ** e
        return value
    return math.prod((b / a) ** e for a, b, e in zip(x1, x2, exponents))

def test_log_differences_lie_in_the_image_of_A():
    rng = random.Random(37)
    triangle = load_fixture("triangle")
    equal = random_rates(triangle, rng)
    cases = [(triangle, unit_rates(triangle)), (triangle, equal.replace(k32=equal["k31"]))]
    cases += [(multisite_network(n), random_rates(multisite_network(n), rng)) for n in (1, 2, 3)]
    for net, rates in cases:
        _, _, data, par = parametrize(net, rates)
        for _ in range(10):
            t1, t2 = random_t(rng, par.w), random_t(rng, par.w)
            x1, x2 = eval_parametrization(par, t1), eval_parametrization(par, t2)
            # x2/x1 = (t2/t1)^A coordinatewise
            for i in range(len(x1)):
                column = [par.A[k, i] for k in range(par.w)]
                expected = _ratio_power(t1, t2, column, exact=True)
                if par.exact:
                    assert x2[i] / x1[i] == expected
                else:
                    assert math.isclose(x2[i] / x1[i], float(expected), rel_tol=1e-9)
            # (x2/x1)^(y_first - y_other) = 1 for every pair inside a block
            for p in range(data.delta.ncols):
                exponents = [data.delta[i, p] for i in range(len(x1))]
                value = _ratio_power(x1, x2, exponents, par.exact)
                if par.exact:
                    assert value == 1
                else:
                    assert math.isclose(value, 1.0, rel_tol=1e-9)
