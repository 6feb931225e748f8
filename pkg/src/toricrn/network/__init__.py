# Reaction networks, their matrices and graph invariants
from .graph import GraphSummary, graph_summary
from .model import (
    NetworkMatrices,
    RateAssignment,
    Reaction,
    ReactionNetwork,
    build_matrices,
    differential,
    educt_monomials,
    eval_monomials,
    flux_form,
    random_rates,
    unit_rates,
)

__all__ = [
    "GraphSummary",
    "NetworkMatrices",
    "RateAssignment",
    "Reaction",
    "ReactionNetwork",
    "build_matrices",
    "differential",
    "educt_monomials",
    "eval_monomials",
    "flux_form",
    "graph_summary",
    "random_rates",
    "unit_rates",
]
