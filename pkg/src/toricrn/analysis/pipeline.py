"""The full toric analysis of a network at fixed rate constants.

Stages run in order: matrices, optional enlargement, Condition 1, Condition 2,
Condition 3, binomials and the parametrization. The first failing stage stops
the pipeline and is recorded in the result; nothing later is computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..core.constants import Stage
from ..core.errors import ParametrizationError
from ..core.logger import get_logger
from ..core.timer import Timer
from ..network.graph import GraphSummary, graph_summary
from ..network.model import NetworkMatrices, RateAssignment, ReactionNetwork, build_matrices
from ..text.report import AnalysisReport
from .enlarge import EnlargedSystem, Multiplier, enlarge_system, search_multipliers
from .parametrize import Parametrization, build_parametrization
from .toric import (
    BinomialSystem,
    Condition1Failure,
    ConditionThreeData,
    SignObstruction,
    ToricCertificate,
    binomial_generators,
    build_condition3,
    check_condition2,
    check_condition2_determinant,
    check_condition3,
    find_certificate,
    sign_obstruction,
)

logger = get_logger(__name__)

@dataclass
class ToricAnalysis:
    """Everything computed by `run_toric_analysis`; later fields stay None after a failure."""
    network: ReactionNetwork
    matrices: NetworkMatrices
    summary: GraphSummary
    enlarged: EnlargedSystem | None = None
    certificate: ToricCertificate | None = None
    failure: Condition1Failure | None = None
    obstruction: SignObstruction | None = None
    condition2_determinant: bool | None = None
    condition3: ConditionThreeData | None = None
    binomials: BinomialSystem | None = None
    parametrization: Parametrization | None = None
    failed_stage: Stage | None = None
    reason: str | None = None
    stages: dict[str, str] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    elapsed: float | None = None

    @property
    def toric(self) -> bool:
        """Conditions 1 to 3 hold and a parametrization was built."""
        return self.failed_stage is None and self.parametrization is not None

    def fail(self, stage: Stage, reason: str) -> None:
        self.failed_stage = stage
        self.reason = reason
        self.stages[stage.value] = "failed"
        logger.info(f"Toric analysis stopped at {stage.value}: {reason}")

    def to_report(self) -> AnalysisReport:
        net = self.network
        report = AnalysisReport()
        report.add("network", {
            "species": list(net.species),
            "complexes": [net.complex_label(i) for i in range(net.m)],
            "reactions": [
                {"educt": r.educt + 1, "product": r.product + 1, "rate": r.rate} for r in net.reactions
            ],
        })
        report.add("rates", dict(zip(net.rate_names, self.matrices.rates)))
        report.add("summary", self.summary)
        report.add("stages", self.stages)
        report.add("failed_stage", self.failed_stage)
        report.add("reason", self.reason)
        report.add("toric", self.toric)
        if self.enlarged is not None:
            report.add("enlargement", self.enlarged)
        if self.failure is not None:
            report.add("condition1_failure", self.failure)
        if self.certificate is not None:
            report.add("certificate", self.certificate)
        if self.obstruction is not None:
            report.add("sign_obstruction", self.obstruction)
        if self.condition2_determinant is not None:
            report.add("condition2_determinant", self.condition2_determinant)
        if self.binomials is not None:
            report.add("binomials", self.binomials)
        if self.condition3 is not None:
            report.add("condition3", self.condition3)
        if self.parametrization is not None:
            report.add("parametrization", self.parametrization)
        return report

def run_toric_analysis(
    net: ReactionNetwork,
    rates: RateAssignment,
    multipliers: Sequence[Multiplier] | None = None,
    enlarge_bound: int = 0,
    max_multiplier_rows: int = 6,
    residual_tolerance: float = 1e-10,
) -> ToricAnalysis:
    """
    Run every stage of the toric analysis.

    Args:
        net (ReactionNetwork): The network.
        rates (RateAssignment): Rate constants for every reaction of `net`.
        multipliers (Sequence[Multiplier] | None): Enlarge by these multiples first.
        enlarge_bound (int): If Condition 1 fails on the unenlarged system, search
            multiples x^α·f_i with |α| up to this bound.
        max_multiplier_rows (int): Largest set of equations tried per α.
        residual_tolerance (float): Relative residual accepted for a float x̃.

    Returns:
        ToricAnalysis: The collected results.

    Raises:
        RateError: If `rates` misses a rate constant of `net`.
    """
    timer = Timer("toric")
    try:
        with timer.stage(Stage.MATRICES.value):
            matrices = build_matrices(net, rates)
            matrices.check_identities()
            summary = graph_summary(net)
        analysis = ToricAnalysis(network=net, matrices=matrices, summary=summary)
        analysis.stages[Stage.MATRICES.value] = "passed"
        _run_conditions(analysis, timer, multipliers, enlarge_bound, max_multiplier_rows, residual_tolerance)
    finally:
        elapsed = timer.stop()
    analysis.timings = dict(timer.stages)
    analysis.elapsed = elapsed
    return analysis

def _run_conditions(
    analysis: ToricAnalysis,
    timer: Timer,
    multipliers: Sequence[Multiplier] | None,
    enlarge_bound: int,
    max_multiplier_rows: int,
    residual_tolerance: float,
) -> None:
    """Enlargement, Conditions 1 to 3, binomials and parametrization; stops at the first failure."""
    matrices = analysis.matrices
    sigma, exponents = matrices.sigma, matrices.exponents
    with timer.stage(Stage.ENLARGEMENT.value):
        if multipliers:
            analysis.enlarged = enlarge_system(matrices, multipliers)
            sigma, exponents = analysis.enlarged.sigma, analysis.enlarged.exponents
            analysis.stages[Stage.ENLARGEMENT.value] = "passed"

    with timer.stage(Stage.CONDITION1.value):
        result = find_certificate(sigma, exponents)
        if isinstance(result, Condition1Failure) and not multipliers and enlarge_bound > 0:
            found = search_multipliers(matrices, enlarge_bound, max_multiplier_rows)
            if found is not None:
                analysis.enlarged, result = found
                sigma, exponents = analysis.enlarged.sigma, analysis.enlarged.exponents
                analysis.stages[Stage.ENLARGEMENT.value] = "passed"
            else:
                analysis.stages[Stage.ENLARGEMENT.value] = "failed"
    if isinstance(result, Condition1Failure):
        analysis.failure = result
        analysis.fail(Stage.CONDITION1, result.message)
        return
    analysis.stages[Stage.CONDITION1.value] = "passed"

    with timer.stage(Stage.CONDITION2.value):
        cond2 = check_condition2(result)
        analysis.condition2_determinant = check_condition2_determinant(sigma, result)
        if cond2 != analysis.condition2_determinant:
            logger.warning("Sign test and determinant test of Condition 2 disagree")
    if not cond2:
        analysis.certificate = result.with_flags(cond2=False)
        analysis.obstruction = sign_obstruction(result)
        analysis.fail(Stage.CONDITION2, "basis vectors are not sign-constant on their blocks")
        return
    analysis.stages[Stage.CONDITION2.value] = "passed"

    with timer.stage(Stage.BINOMIALS.value):
        analysis.binomials = binomial_generators(result)
    analysis.stages[Stage.BINOMIALS.value] = "passed"

    with timer.stage(Stage.CONDITION3.value):
        analysis.condition3 = build_condition3(result)
        cond3 = check_condition3(analysis.condition3)
    analysis.certificate = result.with_flags(cond2=True, cond3=cond3)
    if not cond3:
        analysis.fail(Stage.CONDITION3, "coefficient ratios are inconsistent on the kernel of Δ")
        return
    analysis.stages[Stage.CONDITION3.value] = "passed"

    with timer.stage(Stage.PARAMETRIZATION.value):
        try:
            analysis.parametrization = build_parametrization(result, analysis.condition3, residual_tolerance)
        except ParametrizationError as e:
            analysis.fail(Stage.PARAMETRIZATION, str(e))
    if analysis.parametrization is not None:
        analysis.stages[Stage.PARAMETRIZATION.value] = "passed"

def toric_analyze(
    net: ReactionNetwork,
    rates: RateAssignment,
    multipliers: Sequence[Multiplier] | None = None,
    enlarge_bound: int = 0,
    **options,
) -> AnalysisReport:
    """Run the toric analysis and return its report."""
    return run_toric_analysis(net, rates, multipliers, enlarge_bound, **options).to_report()
