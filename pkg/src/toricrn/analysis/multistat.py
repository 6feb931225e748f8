"""Capacity for multistationarity of networks with toric steady states.

For a network whose positive steady states are x̃ ∘ t^A for every choice of
rate constants, two distinct positive steady states x¹, x² with
x² − x¹ ∈ ker(Z^t) exist for some rates exactly when some nonzero vector
α ∈ im(A^t) and some σ ∈ ker(Z^t) share their sign vector. From such a pair

    x¹_i = σ_i / (e^{α_i} − 1)   (x¹_i = 1 where α_i = 0)
    x²   = diag(e^α) x¹
    k    = diag(φ(x¹))^{-1} M λ

is a witness, M being the extreme rays of the flux cone and λ ≥ 0 any vector
with M λ > 0.

Typical usage example:
    result = analyze_multistationarity(load_fixture("PHOS2"))
    if result.witness is not None:
        print(result.verification["passed"])
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..core.constants import SIGN_ORDER, Sign
from ..core.errors import CRNError, DegenerateConeError, DimensionError
from ..core.logger import get_logger
from ..linalg.exact import IntegerMatrix, RationalMatrix, kernel_basis, rank, solve
from ..linalg.simplex import lp_feasible
from ..network.graph import graph_summary
from ..network.model import (
    NetworkMatrices,
    RateAssignment,
    ReactionNetwork,
    build_matrices,
    differential,
    educt_monomials,
    eval_monomials,
    random_rates,
    unit_rates,
)
from ..text.report import AnalysisReport
from .cones import ConeData, extreme_rays
from .pipeline import ToricAnalysis, run_toric_analysis
from .toric import Condition1Failure, find_certificate

logger = get_logger(__name__)

SignVector = tuple[Sign, ...]

# Bound on |x²_i - x¹_i - σ_i| relative to max(x¹_i, x²_i)
CONSISTENCY_TOLERANCE = 1e-12

@dataclass(frozen=True)
class MultistatWitness:
    """
    Two distinct positive steady states of one system in one class x + ker(Z^t).

    Attributes:
        omega (SignVector): Common sign vector of α and σ.
        alpha (tuple[Fraction, ...]): Exact vector in im(A^t); x² = diag(e^α) x¹.
        tau (tuple[Fraction, ...]): Some τ with A^t τ = α.
        sigma (tuple[Fraction, ...]): Exact vector in ker(Z^t); x² − x¹ = σ.
        x1 (tuple[Fraction, ...]): First steady state, exact.
        x2 (tuple[float, ...]): Second steady state.
        rates (tuple[Fraction, ...]): Rate constants in reaction order, exact.
        lam (tuple[Fraction, ...]): Weights of the extreme rays used for the rates.
    """
    omega: SignVector
    alpha: tuple[Fraction, ...]
    tau: tuple[Fraction, ...]
    sigma: tuple[Fraction, ...]
    x1: tuple[Fraction, ...]
    x2: tuple[float, ...]
    rates: tuple[Fraction, ...]
    lam: tuple[Fraction, ...]

    def rate_assignment(self, net: ReactionNetwork) -> RateAssignment:
        return RateAssignment(dict(zip(net.rate_names, self.rates)))

    def to_json(self) -> dict:
        return {
            "omega": "".join(sign.value for sign in self.omega),
            "alpha": list(self.alpha),
            "tau": list(self.tau),
            "sigma": list(self.sigma),
            "x1": [float(v) for v in self.x1],
            "x1_exact": list(self.x1),
            "x2": list(self.x2),
            "rates": list(self.rates),
            "lambda": list(self.lam),
        }

def reconstruct_rates(net: ReactionNetwork, x: Sequence, lam: Sequence, cone: ConeData) -> tuple[Fraction, ...]:
    """
    Rate constants for which `x` is a steady state: k = diag(φ(x))^{-1} M λ.

    Args:
        net (ReactionNetwork): The network.
        x (Sequence): Positive point, exact.
        lam (Sequence): Nonnegative weights, one per extreme ray.
        cone (ConeData): Extreme rays of the flux cone of `net`.

    Returns:
        tuple[Fraction, ...]: Exact positive rates in reaction order.

    Raises:
        DimensionError: If `x` or `lam` has the wrong length.
        CRNError: If x is not positive or M λ has a zero coordinate.
    """
    if len(x) != net.s:
        raise DimensionError(f"Point of length {len(x)} for {net.s} species")
    if len(lam) != cone.M.ncols:
        raise DimensionError(f"{len(lam)} weights for {cone.M.ncols} extreme rays")
    x = tuple(Fraction(v) for v in x)
    if any(v <= 0 for v in x):
        raise CRNError("Rate reconstruction needs a strictly positive point")
    flux = cone.M.matvec([Fraction(v) for v in lam])
    for i, v in enumerate(flux):
        if v <= 0:
            raise CRNError(f"Mλ not strictly positive at reaction {i + 1}")
    return tuple(v / phi for v, phi in zip(flux, educt_monomials(net, x)))

def sign_vectors_of_image(A: IntegerMatrix, max_rank: int = 8, include_zero: bool = False) -> dict[SignVector, tuple[Fraction, ...]]:
    """
    Every sign vector of the row space of A, with one exact representative each.

    The coordinates are fixed one at a time to +, - or 0; a partial pattern is
    extended only while an exact LP finds a vector of im(A^t) that follows it.

    Args:
        A (IntegerMatrix): w×s matrix.
        max_rank (int): Refuse when rank(A) exceeds this.
        include_zero (bool): Also return the all-zero sign vector.

    Returns:
        dict[SignVector, tuple[Fraction, ...]]: Sign vector -> α ∈ im(A^t) with that sign vector.

    Raises:
        CRNError: If rank(A) > max_rank.
    """
    s = A.ncols
    w = rank(A)
    if w > max_rank:
        raise CRNError(
            f"im(A^t) has dimension {w} > {max_rank}; raise ms_max_image_rank to enumerate its sign vectors"
        )
    # im(A^t) = {α : B α = 0} with the rows of B spanning ker(A)
    B = RationalMatrix(kernel_basis(A), ncols=s)
    found: dict[SignVector, tuple[Fraction, ...]] = {}
    checked = 0

    def extend(prefix: list[Sign]) -> None:
        nonlocal checked
        for sign in (Sign.POSITIVE, Sign.NEGATIVE, Sign.ZERO):
            pattern = prefix + [sign] + [None] * (s - len(prefix) - 1)
            checked += 1
            alpha = lp_feasible(B, pattern)
            if alpha is None:
                continue
            if len(prefix) + 1 == s:
                found[tuple(pattern)] = alpha
            else:
                extend(prefix + [sign])

    if s:
        extend([])
    if not include_zero:
        found.pop(tuple(Sign.ZERO for _ in range(s)), None)
    logger.debug(f"im(A^t) of dimension {w} meets {len(found)} orthants ({checked} partial patterns checked)")
    return found

def _search_order(omega: SignVector) -> tuple:
    return (sum(sign == Sign.ZERO for sign in omega), tuple(SIGN_ORDER[sign] for sign in omega))

def find_witness(
    net: ReactionNetwork,
    A: IntegerMatrix,
    Z: IntegerMatrix,
    cone: ConeData,
    max_rank: int = 8,
    image: dict[SignVector, tuple[Fraction, ...]] | None = None,
) -> MultistatWitness | None:
    """
    Search the orthants met by im(A^t) for one also met by ker(Z^t).

    Sign vectors are tried by number of zeros, then with + before - before 0.

    Args:
        net (ReactionNetwork): The network.
        A (IntegerMatrix): w×s exponent matrix of the parametrization.
        Z (IntegerMatrix): s×q matrix; steady states are compared modulo ker(Z^t).
        cone (ConeData): Extreme rays of the flux cone.
        max_rank (int): Guard passed to `sign_vectors_of_image`.
        image (dict | None): Precomputed result of `sign_vectors_of_image(A)`.

    Returns:
        MultistatWitness | None: The first witness in search order, or None if
            there is no capacity for multistationarity.

    Raises:
        DegenerateConeError: If the flux cone is degenerate.
        DimensionError: If A or Z does not have s rows / columns.
    """
    if cone.degenerate:
        raise DegenerateConeError(list(cone.zero_coordinates))
    s = net.s
    if A.ncols != s or Z.nrows != s:
        raise DimensionError(f"A is {A.shape} and Z is {Z.shape} for {s} species")

    if image is None:
        image = sign_vectors_of_image(A, max_rank)
    for omega in sorted(image, key=_search_order):
        sigma = lp_feasible(Z.T, omega)
        if sigma is None:
            continue
        alpha = image[omega]
        tau = solve(A.T, alpha)
        x1 = []
        for a, v in zip(alpha, sigma):
            if a == 0:
                x1.append(Fraction(1))
            else:
                x1.append(Fraction(float(v) / math.expm1(float(a))))
        x2 = tuple(float(v) * math.exp(float(a)) for v, a in zip(x1, alpha))
        lam = tuple(Fraction(1) for _ in range(cone.M.ncols))
        rates = reconstruct_rates(net, x1, lam, cone)
        logger.info(f"Multistationarity witness found for sign vector {''.join(sign.value for sign in omega)}")
        return MultistatWitness(
            omega=tuple(omega),
            alpha=tuple(alpha),
            tau=tuple(tau) if tau is not None else (),
            sigma=tuple(sigma),
            x1=tuple(x1),
            x2=x2,
            rates=rates,
            lam=lam,
        )
    logger.info(f"None of the {len(image)} orthants met by im(A^t) meets ker(Z^t)")
    return None

def witness_converse(witness: MultistatWitness) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Recover α′ = ln x² − ln x¹ and σ′ = x² − x¹ from the two steady states."""
    alpha = tuple(math.log(b) - math.log(float(a)) for a, b in zip(witness.x1, witness.x2))
    sigma = tuple(b - float(a) for a, b in zip(witness.x1, witness.x2))
    return alpha, sigma

def relative_residual(matrices: NetworkMatrices, x: Sequence) -> float:
    """max_j |f_j(x)| / Σ_l |Σ_jl| Ψ_l(x), in floating point."""
    point = [float(v) for v in x]
    psi = eval_monomials(matrices.exponents, point)
    worst = 0.0
    for row in matrices.sigma.rows:
        value = sum(float(c) * p for c, p in zip(row, psi))
        scale = sum(abs(float(c)) * p for c, p in zip(row, psi))
        if scale > 0:
            worst = max(worst, abs(value) / scale)
    return worst

def verify_witness(net: ReactionNetwork, witness: MultistatWitness, Z: IntegerMatrix, tolerance: float = 1e-9) -> dict:
    """
    Check a witness independently of how it was built.

    Returns:
        dict: One boolean per check, the residuals, and "passed".
    """
    checks: dict = {}
    checks["signs"] = all(Sign.of(a) == Sign.of(v) == o for a, v, o in zip(witness.alpha, witness.sigma, witness.omega))
    checks["positive"] = (
        all(v > 0 for v in witness.x1) and all(v > 0 for v in witness.x2) and all(k > 0 for k in witness.rates)
    )
    checks["distinct"] = any(v != 0 for v in witness.sigma) and tuple(map(float, witness.x1)) != witness.x2
    checks["conserved"] = all(v == 0 for v in Z.T.matvec(witness.sigma))
    checks["difference"] = all(
        abs(b - float(a) - float(v)) <= CONSISTENCY_TOLERANCE * max(1.0, float(a), b)
        for a, b, v in zip(witness.x1, witness.x2, witness.sigma)
    )

    matrices = build_matrices(net, witness.rate_assignment(net))
    exact = differential(matrices, witness.x1)
    checks["residual_x1"] = relative_residual(matrices, witness.x1)
    checks["residual_x2"] = relative_residual(matrices, witness.x2)
    checks["steady_x1"] = all(v == 0 for v in exact)
    checks["steady_x2"] = checks["residual_x2"] <= tolerance

    alpha, sigma = witness_converse(witness)
    scale = max(1.0, *witness.x2) * max((sum(abs(v) for v in row) for row in Z.T.rows), default=1)
    checks["converse"] = all(Sign.of(a) == Sign.of(v) for a, v in zip(alpha, sigma)) and all(
        abs(float(v)) <= CONSISTENCY_TOLERANCE * scale for v in Z.T.matvec(sigma)
    )

    checks["passed"] = all(
        checks[key] for key in ("signs", "positive", "distinct", "conserved", "difference", "steady_x1", "steady_x2", "converse")
    )
    if not checks["passed"]:
        failed = [key for key, value in checks.items() if value is False]
        logger.warning(f"Witness verification failed: {failed}")
    return checks

def probe_partition(
    net: ReactionNetwork,
    draws: int = 2,
    seed: int = 2010,
    rates: RateAssignment | None = None,
) -> list[list[int]] | None:
    """
    Condition-1 partition at the given (or unit) rates, cross-checked at random rates.

    Random draws at which Condition 1 fails are logged and skipped; they only
    show that toric steady states need special rates.

    Returns:
        list[list[int]] | None: The 0-based partition, or None if Condition 1
            fails at the base rates.

    Raises:
        CRNError: If a random draw satisfies Condition 1 with another partition.
    """
    base_rates = rates if rates is not None else unit_rates(net)
    matrices = build_matrices(net, base_rates)
    base = find_certificate(matrices.sigma, matrices.exponents)
    if isinstance(base, Condition1Failure):
        logger.info(f"Condition 1 fails at the base rates: {base.message}")
        return None
    partition = [list(block) for block in base.blocks]

    rng = random.Random(seed)
    for draw in range(draws):
        sample = random_rates(net, rng)
        result = find_certificate(build_matrices(net, sample).sigma, matrices.exponents)
        if isinstance(result, Condition1Failure):
            logger.warning(f"Condition 1 fails at random rate draw {draw + 1}; toric steady states depend on the rates")
            continue
        if [list(block) for block in result.blocks] != partition:
            raise CRNError(
                f"Condition-1 partition changes with the rate constants "
                f"({_one_based(partition)} vs {result.partition()} at draw {draw + 1})"
            )
    logger.debug(f"Partition {_one_based(partition)} confirmed over {draws} random draws")
    return partition

def _one_based(partition: list[list[int]]) -> list[list[int]]:
    return [[i + 1 for i in block] for block in partition]

@dataclass
class MultistatAnalysis:
    """Result of `analyze_multistationarity`; `verdict` is one of
    "witness", "no_capacity", "toric_failed" or "degenerate"."""
    network: ReactionNetwork
    cone: ConeData
    Z: IntegerMatrix
    verdict: str
    partition: list[list[int]] | None = None
    toric: ToricAnalysis | None = None
    orthants: int | None = None
    witness: MultistatWitness | None = None
    verification: dict | None = None
    reason: str | None = None

    def to_report(self) -> AnalysisReport:
        net = self.network
        report = AnalysisReport()
        report.add("network", {"species": list(net.species), "reactions": net.r})
        report.add("verdict", self.verdict)
        report.add("reason", self.reason)
        report.add("cone", self.cone)
        report.add("Z", self.Z.T.to_lists())
        if self.partition is not None:
            report.add("partition", _one_based(self.partition))
        if self.toric is not None and self.toric.parametrization is not None:
            report.add("A", self.toric.parametrization.A)
        if self.orthants is not None:
            report.add("orthants", self.orthants)
        if self.witness is not None:
            report.add("witness", self.witness)
            report.add("witness_rates", dict(zip(net.rate_names, self.witness.rates)))
        if self.verification is not None:
            report.add("verification", self.verification)
        return report

def analyze_multistationarity(
    net: ReactionNetwork,
    Z: IntegerMatrix | None = None,
    rates: RateAssignment | None = None,
    tolerance: float = 1e-9,
    max_image_rank: int = 8,
    probe_draws: int = 2,
    probe_seed: int = 2010,
    enlarge_bound: int = 0,
) -> MultistatAnalysis:
    """
    Decide the capacity for multistationarity of `net` and build a witness.

    Args:
        net (ReactionNetwork): The network.
        Z (IntegerMatrix | None): s×q matrix; defaults to the conservation laws.
        rates (RateAssignment | None): Rates for the toric analysis; unit rates by default.
        tolerance (float): Relative residual accepted at the float steady state x².
        max_image_rank (int): Guard on the dimension of im(A^t).
        probe_draws (int): Random rate draws used to confirm the partition.
        probe_seed (int): Seed of those draws.
        enlarge_bound (int): Multiplier search bound for the toric analysis.

    Returns:
        MultistatAnalysis: The verdict and everything computed for it.
    """
    cone = extreme_rays(net.stoichiometric_matrix())
    if Z is None:
        Z = graph_summary(net).conservation
    if Z.nrows != net.s:
        raise DimensionError(f"Z has {Z.nrows} rows for {net.s} species")
    result = MultistatAnalysis(network=net, cone=cone, Z=Z, verdict="degenerate")
    if cone.degenerate:
        result.reason = str(DegenerateConeError(list(cone.zero_coordinates)))
        logger.info(result.reason)
        return result

    base_rates = rates if rates is not None else unit_rates(net)
    probe_partition(net, probe_draws, probe_seed, base_rates)
    result.toric = run_toric_analysis(net, base_rates, enlarge_bound=enlarge_bound)
    if not result.toric.toric:
        result.verdict = "toric_failed"
        result.reason = f"no toric steady states at the probe rates: {result.toric.reason}"
        return result

    result.partition = [list(block) for block in result.toric.certificate.blocks]
    A = result.toric.parametrization.A
    image = sign_vectors_of_image(A, max_image_rank)
    result.orthants = len(image)
    result.witness = find_witness(net, A, Z, cone, max_image_rank, image)
    if result.witness is None:
        result.verdict = "no_capacity"
        result.reason = "no orthant meets both im(A^t) and ker(Z^t)"
        return result
    result.verdict = "witness"
    result.verification = verify_witness(net, result.witness, Z, tolerance)
    return result
