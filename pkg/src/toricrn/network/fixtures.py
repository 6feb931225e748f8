"""Named example networks.

TRIANGLE
    Three complexes 2A, 2B and A+B, pairwise reversible.
PHOS1, PHOS2
    The sequential, distributive multisite phosphorylation network with one
    and two sites, built by `multisite_network`.
SF
    A two-component signalling network with a bifunctional sensor kinase;
    fourteen reactions over nine species.
"""

from __future__ import annotations

from ..core.errors import CRNError
from .model import Reaction, ReactionNetwork

TRIANGLE_SOURCE = """\
# 2A, 2B and A+B, pairwise reversible
2A <-> 2B ; k12, k21
2A <-> A + B ; k13, k31
2B <-> A + B ; k23, k32
"""

PHOS1_SOURCE = """\
# one-site phosphorylation
species: S0, S1, ES0, FS1, E, F
S0 + E -> ES0 ; kon0
ES0 -> S0 + E ; koff0
ES0 -> S1 + E ; kcat0
S1 + F -> FS1 ; lon0
FS1 -> S1 + F ; loff0
FS1 -> S0 + F ; lcat0
"""

SF_SOURCE = """\
# sensor kinase X with ADP/ATP forms, response regulator Y
XD <-> X ; k12, k21
X <-> XT ; k23, k32
XT -> X_p ; k34
X_p + Y <-> X_pY ; k56, k65
X_pY -> X + Y_p ; k67
XT + Y_p <-> XTY_p ; k89, k98
XTY_p -> XT + Y ; k9_10
XD + Y_p <-> XDY_p ; k11_12, k12_11
XDY_p -> XD + Y ; k12_13
"""

def multisite_species(n: int) -> tuple[str, ...]:
    """S0..Sn, ES0..ES{n-1}, FS1..FSn, E, F."""
    return (
        tuple(f"S{i}" for i in range(n + 1))
        + tuple(f"ES{i}" for i in range(n))
        + tuple(f"FS{i}" for i in range(1, n + 1))
        + ("E", "F")
    )

def multisite_rate_names(n: int) -> tuple[str, ...]:
    """Rate names in reaction order: kon/koff/kcat per E step, then lon/loff/lcat per F step."""
    kinase = tuple(name for j in range(n) for name in (f"kon{j}", f"koff{j}", f"kcat{j}"))
    phosphatase = tuple(name for j in range(n) for name in (f"lon{j}", f"loff{j}", f"lcat{j}"))
    return kinase + phosphatase

def multisite_network(n: int) -> ReactionNetwork:
    """
    The n-site sequential distributive phosphorylation network.

    Species are ordered S0..Sn, ES0..ES{n-1}, FS1..FSn, E, F (s = 3n+3) and
    complexes S_i+E (i = 0..n), ES_i, S_i+F (i = 0..n), FS_i (m = 4n+2).
    Reactions: S_{j}+E <-> ES_j -> S_{j+1}+E and S_{j+1}+F <-> FS_{j+1} -> S_j+F.

    Raises:
        CRNError: If n < 1.
    """
    if n < 1:
        raise CRNError(f"Number of phosphorylation sites must be at least 1, got {n}")
    species = multisite_species(n)
    s = len(species)
    index = {name: i for i, name in enumerate(species)}

    def unit(*names: str) -> tuple[int, ...]:
        vec = [0] * s
        for name in names:
            vec[index[name]] += 1
        return tuple(vec)

    complexes = (
        [unit(f"S{i}", "E") for i in range(n + 1)]
        + [unit(f"ES{i}") for i in range(n)]
        + [unit(f"S{i}", "F") for i in range(n + 1)]
        + [unit(f"FS{i}") for i in range(1, n + 1)]
    )
    # complex offsets: S_i+E at i, ES_i at n+1+i, S_i+F at 2n+1+i, FS_i at 3n+1+i
    es, sf, fs = n + 1, 2 * n + 1, 3 * n + 1

    reactions = []
    for j in range(n):
        reactions += [
            Reaction(j, es + j, f"kon{j}"),
            Reaction(es + j, j, f"koff{j}"),
            Reaction(es + j, j + 1, f"kcat{j}"),
        ]
    for j in range(n):
        reactions += [
            Reaction(sf + j + 1, fs + j + 1, f"lon{j}"),
            Reaction(fs + j + 1, sf + j + 1, f"loff{j}"),
            Reaction(fs + j + 1, sf + j, f"lcat{j}"),
        ]
    return ReactionNetwork(species=species, complexes=tuple(complexes), reactions=tuple(reactions))

def triangle() -> ReactionNetwork:
    from ..text.parser import parse_network
    return parse_network(TRIANGLE_SOURCE, name="triangle")

def phos1() -> ReactionNetwork:
    return multisite_network(1)

def phos2() -> ReactionNetwork:
    return multisite_network(2)

def shinar_feinberg() -> ReactionNetwork:
    from ..text.parser import parse_network
    return parse_network(SF_SOURCE, name="sf")

FIXTURES = {
    "triangle": triangle,
    "phos1": phos1,
    "phos2": phos2,
    "sf": shinar_feinberg,
}

def load_fixture(name: str) -> ReactionNetwork:
    """
    Look up a named example network.

    Raises:
        CRNError: If `name` is unknown.
    """
    try:
        return FIXTURES[name.lower()]()
    except KeyError:
        raise CRNError(f"Unknown example network '{name}'. Known: {', '.join(FIXTURES)}") from None
