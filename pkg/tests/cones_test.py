import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from toricrn.analysis.cones import cone_membership, extreme_rays
from toricrn.core.logger import get_logger, set_log_level
from toricrn.linalg.exact import IntegerMatrix, kernel_basis
from toricrn.linalg.lattice import primitive_vector
from toricrn.network.fixtures import load_fixture
from toricrn.text.parser import parse_network

import itertools
import random

# Setup Logger
logger = get_logger(__name__)
set_log_level("DEBUG")

def rays_by_support(N):
    """Extreme rays from every support whose kernel is one nonnegative line of full support."""
    r = N.ncols
    rays = set()
    for size in range(1, r + 1):
        for support in itertools.combinations(range(r), size):
            kernel = kernel_basis(N.submatrix(cols=support))
            if len(kernel) != 1:
                continue
            (vector,) = kernel
            if all(v > 0 for v in vector) or all(v < 0 for v in vector):
                full = [0] * r
                for j, v in zip(support, vector):
                    full[j] = abs(v)
                rays.add(primitive_vector(full))
    return rays

def test_reversible_pair_has_one_ray():
    cone = extreme_rays(IntegerMatrix([[1, -1]]))
    assert cone.rays == [(1, 1)]
    assert not cone.degenerate

def test_irreversible_reaction_is_degenerate():
    cone = extreme_rays(IntegerMatrix([[-1], [1]]))
    assert cone.rays == []
    assert cone.degenerate
    assert cone.zero_coordinates == (0,)
    assert cone.to_json()["zero_coordinates"] == [1]

def test_rays_match_support_enumeration():
    for name in ("triangle", "phos1", "phos2"):
        N = load_fixture(name).stoichiometric_matrix()
        cone = extreme_rays(N)
        assert set(cone.rays) == rays_by_support(N)
        assert len(cone.rays) == len(set(cone.rays))
        assert cone.rays == sorted(cone.rays, reverse=True)
        for ray in cone.rays:
            assert all(v >= 0 for v in ray)
            assert all(v == 0 for v in N.matvec(ray))

def test_random_matrices_match_support_enumeration():
    rng = random.Random(31)
    for _ in range(25):
        s, r = rng.randint(1, 3), rng.randint(2, 6)
        N = IntegerMatrix([[rng.randint(-2, 2) for _ in range(r)] for _ in range(s)])
        cone = extreme_rays(N)
        assert set(cone.rays) == rays_by_support(N)

def test_phos1_cone_is_not_degenerate():
    cone = extreme_rays(load_fixture("phos1").stoichiometric_matrix())
    assert not cone.degenerate
    assert cone.M.nrows == 6

def test_chain_without_return_is_degenerate():
    net = parse_network("A <-> B ; k1, k2\nB -> C ; k3\n")
    cone = extreme_rays(net.stoichiometric_matrix())
    assert cone.rays == [(1, 1, 0)]
    assert cone.zero_coordinates == (2,)

def test_cone_membership():
    cone = extreme_rays(load_fixture("triangle").stoichiometric_matrix())
    total = [sum(ray[j] for ray in cone.rays) for j in range(6)]
    assert cone_membership(cone, total) is not None
    assert cone_membership(cone, [1, 0, 0, 0, 0, 0]) is None
    assert cone_membership(cone, [-1, -1, 0, 0, 0, 0]) is None
