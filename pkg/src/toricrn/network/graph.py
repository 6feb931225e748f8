"""Structural invariants of the reaction graph.

The complexes are the nodes and the reactions the directed edges of a
networkx DiGraph. Linkage classes are its weakly connected components and the
terminal strong linkage classes are the sinks of its condensation.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from ..core.constants import Sign
from ..core.logger import get_logger
from ..linalg.exact import IntegerMatrix, rank
from ..linalg.lattice import integer_kernel
from ..linalg.simplex import lp_feasible
from .model import ReactionNetwork

logger = get_logger(__name__)

@dataclass(frozen=True)
class GraphSummary:
    """
    Rate-independent invariants of a network.

    Attributes:
        linkage_classes (tuple[tuple[int, ...], ...]): Complex indices per linkage class.
        terminal_classes (tuple[tuple[int, ...], ...]): Complex indices per terminal strong linkage class.
        stoichiometric_dimension (int): dim S = rank N.
        deficiency (int): m - l - dim S.
        formula_valid (bool): Whether every linkage class has exactly one
            terminal class, the case in which the deficiency formula counts the
            dimension of ker(Y^t) ∩ im(𝓘).
        conservation (IntegerMatrix): Z, s×(s - dim S) saturated basis of ker(N^t).
        positive_flux (bool): Some flux vector in ker(N) is strictly positive.
        unique_terminal (bool): Every linkage class contains exactly one terminal class.
        terminal_cut (bool): Inside every terminal class, removing the edges
            between any two adjacent complexes disconnects their linkage class.
    """
    linkage_classes: tuple[tuple[int, ...], ...]
    terminal_classes: tuple[tuple[int, ...], ...]
    stoichiometric_dimension: int
    deficiency: int
    formula_valid: bool
    conservation: IntegerMatrix
    positive_flux: bool
    unique_terminal: bool
    terminal_cut: bool

    @property
    def weakly_reversible(self) -> bool:
        """Every linkage class is a single strongly connected component."""
        return set(self.linkage_classes) == set(self.terminal_classes)

    @property
    def regular(self) -> bool:
        return self.positive_flux and self.unique_terminal and self.terminal_cut

    def to_json(self) -> dict:
        return {
            "linkage_classes": [[i + 1 for i in cls] for cls in self.linkage_classes],
            "terminal_classes": [[i + 1 for i in cls] for cls in self.terminal_classes],
            "stoichiometric_dimension": self.stoichiometric_dimension,
            "deficiency": self.deficiency,
            "formula_valid": self.formula_valid,
            "conservation": self.conservation.T.to_lists(),
            "weakly_reversible": self.weakly_reversible,
            "regular": self.regular,
            "regularity": {
                "positive_flux": self.positive_flux,
                "unique_terminal": self.unique_terminal,
                "terminal_cut": self.terminal_cut,
            },
        }

def reaction_graph(net: ReactionNetwork) -> nx.DiGraph:
    """Directed graph on complex indices with one edge per reaction."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(net.m))
    for reaction in net.reactions:
        graph.add_edge(reaction.educt, reaction.product, rate=reaction.rate)
    return graph

def linkage_classes(graph: nx.DiGraph) -> list[tuple[int, ...]]:
    classes = [tuple(sorted(c)) for c in nx.weakly_connected_components(graph)]
    return sorted(classes)

def terminal_classes(graph: nx.DiGraph) -> list[tuple[int, ...]]:
    condensation = nx.condensation(graph)
    classes = [
        tuple(sorted(condensation.nodes[node]["members"]))
        for node in condensation.nodes
        if condensation.out_degree(node) == 0
    ]
    return sorted(classes)

def _terminal_edges_cut(graph: nx.DiGraph, linkage: list[tuple[int, ...]], terminal: list[tuple[int, ...]]) -> bool:
    undirected = graph.to_undirected()
    owner = {node: cls for cls in linkage for node in cls}
    for cls in terminal:
        members = set(cls)
        for u, v in undirected.edges(cls):
            if v not in members or u > v:
                continue
            component = undirected.subgraph(owner[u]).copy()
            component.remove_edge(u, v)
            if nx.is_connected(component):
                logger.debug(f"Terminal edge {u + 1}-{v + 1} is not a bridge of its linkage class")
                return False
    return True

def graph_summary(net: ReactionNetwork) -> GraphSummary:
    """
    Linkage classes, terminal classes, deficiency, conservation laws and regularity of `net`.

    Args:
        net (ReactionNetwork): The network.

    Returns:
        GraphSummary: The rate-independent invariants.
    """
    graph = reaction_graph(net)
    linkage = linkage_classes(graph)
    terminal = terminal_classes(graph)
    N = net.stoichiometric_matrix()
    dim_s = rank(N)
    terminal_count = {cls: sum(1 for t in terminal if set(t) <= set(cls)) for cls in linkage}
    unique_terminal = all(count == 1 for count in terminal_count.values())

    positive_flux = lp_feasible(N, [Sign.POSITIVE] * net.r) is not None if net.r else False
    summary = GraphSummary(
        linkage_classes=tuple(linkage),
        terminal_classes=tuple(terminal),
        stoichiometric_dimension=dim_s,
        deficiency=net.m - len(linkage) - dim_s,
        formula_valid=unique_terminal,
        conservation=integer_kernel(N.T),
        positive_flux=positive_flux,
        unique_terminal=unique_terminal,
        terminal_cut=_terminal_edges_cut(graph, linkage, terminal),
    )
    logger.debug(
        f"Graph summary: l={len(linkage)}, t={len(terminal)}, dim S={dim_s}, deficiency={summary.deficiency}"
    )
    return summary
