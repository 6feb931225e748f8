# Toric steady states, the multisite phosphorylation family and multistationarity
from .cones import ConeData, cone_membership, extreme_rays
from .enlarge import EnlargedSystem, Multiplier, enlarge, search_multipliers
from .multistat import (
    MultistatAnalysis,
    MultistatWitness,
    analyze_multistationarity,
    find_witness,
    probe_partition,
    reconstruct_rates,
    sign_vectors_of_image,
    verify_witness,
    witness_converse,
)
from .parametrize import Parametrization, build_parametrization, eval_parametrization, verify_parametrization
from .pipeline import ToricAnalysis, run_toric_analysis, toric_analyze
from .toric import (
    BinomialSystem,
    Condition1Failure,
    ToricCertificate,
    binomial_generators,
    certificate_from_partition,
    find_certificate,
)

__all__ = [
    "BinomialSystem",
    "Condition1Failure",
    "ConeData",
    "EnlargedSystem",
    "Multiplier",
    "MultistatAnalysis",
    "MultistatWitness",
    "Parametrization",
    "ToricAnalysis",
    "ToricCertificate",
    "analyze_multistationarity",
    "binomial_generators",
    "build_parametrization",
    "certificate_from_partition",
    "cone_membership",
    "enlarge",
    "eval_parametrization",
    "extreme_rays",
    "find_certificate",
    "find_witness",
    "probe_partition",
    "reconstruct_rates",
    "run_toric_analysis",
    "search_multipliers",
    "sign_vectors_of_image",
    "toric_analyze",
    "verify_parametrization",
    "verify_witness",
    "witness_converse",
]
