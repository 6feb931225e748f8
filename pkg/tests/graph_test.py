import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from toricrn.core.logger import get_logger, set_log_level
from toricrn.linalg.exact import rank
from toricrn.network.fixtures import load_fixture, multisite_network
from toricrn.network.graph import graph_summary, linkage_classes, reaction_graph, terminal_classes
from toricrn.text.parser import parse_network

# Setup Logger
logger = get_logger(__name__)
set_log_level("DEBUG")

def test_triangle_summary():
    summary = graph_summary(load_fixture("triangle"))
    assert summary.linkage_classes == ((0, 1, 2),)
    assert summary.terminal_classes == ((0, 1, 2),)
    assert summary.stoichiometric_dimension == 1
    assert summary.deficiency == 1
    assert summary.weakly_reversible
    assert summary.conservation.shape == (2, 1)
    assert abs(summary.conservation[0, 0]) == 1 and summary.conservation[0, 0] == summary.conservation[1, 0]

def test_phos1_is_regular_with_deficiency_one():
    net = load_fixture("phos1")
    summary = graph_summary(net)
    assert len(summary.linkage_classes) == 2
    assert len(summary.terminal_classes) == 2
    assert summary.deficiency == 1
    assert summary.formula_valid
    assert summary.unique_terminal
    assert summary.positive_flux
    assert summary.regular
    assert not summary.weakly_reversible

def test_multisite_deficiency_grows_with_sites():
    for n in range(1, 6):
        net = multisite_network(n)
        summary = graph_summary(net)
        assert summary.stoichiometric_dimension == 3 * n
        assert summary.deficiency == n
        assert summary.conservation.shape == (3 * n + 3, 3)
        assert (net.stoichiometric_matrix().T @ summary.conservation).is_zero()

def test_conservation_has_full_rank():
    for name in ("triangle", "phos1", "phos2", "sf"):
        net = load_fixture(name)
        summary = graph_summary(net)
        Z = summary.conservation
        assert Z.ncols == net.s - summary.stoichiometric_dimension
        if Z.ncols:
            assert rank(Z) == Z.ncols

def test_terminal_classes_of_a_chain():
    net = parse_network("A -> B ; k1\nB -> C ; k2\n")
    graph = reaction_graph(net)
    assert linkage_classes(graph) == [(0, 1, 2)]
    assert terminal_classes(graph) == [(2,)]
    summary = graph_summary(net)
    assert not summary.positive_flux
    assert not summary.regular

def test_summary_json_uses_one_based_indices():
    data = graph_summary(load_fixture("triangle")).to_json()
    assert data["deficiency"] == 1
    assert data["weakly_reversible"] is True
