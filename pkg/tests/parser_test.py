import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from toricrn.core.errors import ParseError
from toricrn.core.logger import get_logger, set_log_level
from toricrn.network.fixtures import FIXTURES, PHOS1_SOURCE, load_fixture, multisite_network
from toricrn.text.parser import SourceDocument, parse_network, parse_rates, render_network, render_rates

import random
import re
from fractions import Fraction

import pytest

# Setup Logger
logger = get_logger(__name__)
set_log_level("DEBUG")

def reaction_labels(net):
    return [(net.complex_label(r.educt), net.complex_label(r.product), r.rate) for r in net.reactions]

def test_reversible_pairs_expand_forward_then_backward():
    net = parse_network("2A <-> A + B ; kf, kb\nA + B -> 2B ; k3\n")
    assert net.species == ("A", "B")
    assert net.complexes == ((2, 0), (1, 1), (0, 2))
    assert reaction_labels(net) == [("2A", "A + B", "kf"), ("A + B", "2A", "kb"), ("A + B", "2B", "k3")]

def test_comments_and_blank_lines_are_ignored():
    net = parse_network("# header\n\nA -> B ; k1   # trailing\n\n")
    assert net.r == 1

def test_species_header_pins_order():
    net = parse_network("species: B, A\nA -> B ; k\n")
    assert net.species == ("B", "A")
    assert net.complexes == ((0, 1), (1, 0))

def test_repeated_species_in_a_complex_add_up():
    net = parse_network("A + A -> B ; k\n")
    assert net.complexes[0] == (2, 0)

def test_phos1_source_matches_generated_network():
    parsed = parse_network(PHOS1_SOURCE, name="phos1")
    generated = multisite_network(1)
    assert parsed.species == generated.species
    assert parsed.rate_names == generated.rate_names
    assert parsed.stoichiometric_matrix() == generated.stoichiometric_matrix()

@pytest.mark.parametrize(
    "text, message, line, column",
    [
        ("A -> -B ; k\n", "negative stoichiometric coefficient", 1, 6),
        ("A -> 2.5B ; k\n", "non-integer stoichiometric coefficient", 1, 6),
        ("A -> 0B ; k\n", "stoichiometric coefficient must be positive", 1, 6),
        ("A -> B ; k1\nB -> B ; k2\n", "reaction from a complex to itself", 2, 3),
        ("A -> B ; k\nB -> A ; k\n", "duplicate rate name", 2, 10),
        ("A -> B\n", "expected ';'", 1, 7),
        ("A <-> B ; k\n", "needs 2 rate name(s)", 1, 11),
        ("A -> B ; k1\nspecies: A, B\n", "species header must come first", 2, 1),
        ("species: A\nA -> B ; k\n", "missing from the species header", 2, 3),
        ("A => B ; k\n", "unexpected character", 1, 4),
    ],
)
def test_network_errors_carry_position(text, message, line, column):
    with pytest.raises(ParseError) as info:
        parse_network(text, name="bad.crn")
    error = info.value
    assert message in error.message
    assert (error.line, error.column) == (line, column)
    assert str(error).startswith(f"bad.crn:{line}:{column}: ")

def test_unused_header_species():
    with pytest.raises(ParseError, match="used in no reaction"):
        parse_network("species: A, B, C\nA -> B ; k\n")

def test_render_round_trip_keeps_the_network():
    for name in FIXTURES:
        net = load_fixture(name)
        again = parse_network(render_network(net))
        assert again.species == net.species
        assert reaction_labels(again) == reaction_labels(net)
        assert again.stoichiometric_matrix() == net.stoichiometric_matrix()

LINE_TOKEN_RE = re.compile(r"<->|->|\d+|[A-Za-z_]\w*|[+;,:]")

def reformat(text: str, rng: random.Random) -> str:
    """Same network with random spacing, blank lines and comments."""
    lines = []
    for line in text.splitlines():
        for _ in range(rng.randint(0, 2)):
            lines.append(rng.choice(["", "   ", "# note", "  #  -> ; 2A"]))
        tokens = LINE_TOKEN_RE.findall(line)
        pieces = [rng.choice(["", " ", "\t"]) + tokens[0]]
        for before, token in zip(tokens, tokens[1:]):
            glued = not (re.match(r"\w", before[-1]) and re.match(r"\w", token[0]))
            pieces.append(rng.choice(["", " ", "  ", "\t"] if glued else [" ", "  ", "\t "]) + token)
        trailing = rng.choice(["", " ", "  # comment after the reaction", "#"])
        lines.append("".join(pieces) + trailing)
    return "\n".join(lines) + rng.choice(["", "\n", "\n\n# end\n"])

def test_parsing_ignores_spacing_and_comments():
    rng = random.Random(61)
    for name in FIXTURES:
        net = load_fixture(name)
        text = render_network(net)
        for _ in range(10):
            again = parse_network(reformat(text, rng))
            assert again.species == net.species
            assert again.complexes == net.complexes
            assert reaction_labels(again) == reaction_labels(net)
            assert again.stoichiometric_matrix() == net.stoichiometric_matrix()

def test_render_groups_reversible_pairs():
    text = render_network(load_fixture("triangle"))
    assert text.splitlines() == [
        "species: A, B",
        "2A <-> 2B ; k12, k21",
        "2A <-> A + B ; k13, k31",
        "2B <-> A + B ; k23, k32",
    ]

def test_parse_rates_is_exact():
    rates = parse_rates(SourceDocument("k1 = 0.25\nk2 = 3/2\n# comment\nk3 = 2e-1\nk4=7\n", "x.rates"))
    assert rates["k1"] == Fraction(1, 4)
    assert rates["k2"] == Fraction(3, 2)
    assert rates["k3"] == Fraction(1, 5)
    assert rates["k4"] == 7
    assert dict(parse_rates(render_rates(rates)).values) == dict(rates.values)

@pytest.mark.parametrize(
    "text, message, column",
    [
        ("k1 = -1\n", "rate must be positive", 6),
        ("k1 = 0\n", "rate must be positive", 6),
        ("k1 = 1/0\n", "zero denominator", 6),
        ("k1 = abc\n", "cannot read rate value", 6),
        ("k1 1\n", "expected 'name = value'", 1),
        ("1k = 1\n", "invalid rate name", 1),
    ],
)
def test_rate_errors(text, message, column):
    with pytest.raises(ParseError) as info:
        parse_rates(text)
    assert message in info.value.message
    assert (info.value.line, info.value.column) == (1, column)

def test_duplicate_rate_in_rates_file():
    with pytest.raises(ParseError, match="duplicate rate name") as info:
        parse_rates("k = 1\nk = 2\n")
    assert info.value.line == 2
