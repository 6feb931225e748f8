"""Monomial parametrization of the positive steady states.

When Conditions 1 to 3 hold, the positive steady states are the points
x = x̃ ∘ t^A for t > 0, where the rows of the integer matrix A span the
orthogonal complement of the exponent differences and x̃ is one positive
solution of the binomials.

x̃ is found exactly whenever the binomial equations x^{Δ_p} = r_p can be
solved with rational roots; otherwise a floating point solution is computed
by least squares on logarithms and accepted only if every binomial holds to a
relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy import integer_nthroot

from ..core.errors import ConditionError, DimensionError, InvariantViolation, ParametrizationError
from ..core.logger import get_logger
from ..linalg.exact import IntegerMatrix, rank
from ..linalg.lattice import column_echelon, integer_complement
from ..network.model import NetworkMatrices, differential
from .toric import BinomialSystem, ConditionThreeData, ToricCertificate, check_condition3, sign_obstruction

logger = get_logger(__name__)

@dataclass(frozen=True)
class Parametrization:
    """
    x(t) = x̃ ∘ t^A.

    Attributes:
        A (IntegerMatrix): w×s exponent matrix; ker(A) is spanned by the exponent differences.
        x_tilde (tuple): Particular positive steady state (Fractions when exact, floats otherwise).
        exact (bool): Whether x_tilde is exact.
        residual (float | None): Largest relative binomial residual in float mode.
        free (tuple[int, ...]): Coordinates of x̃ fixed to 1.
    """
    A: IntegerMatrix
    x_tilde: tuple
    exact: bool
    residual: float | None = None
    free: tuple[int, ...] = ()

    @property
    def w(self) -> int:
        return self.A.nrows

    def to_json(self) -> dict:
        return {
            "A": self.A,
            "w": self.w,
            "x_tilde": list(self.x_tilde),
            "exact": self.exact,
            "residual": self.residual,
            "free": [i + 1 for i in self.free],
        }

def _rational_root(value: Fraction, degree: int) -> Fraction | None:
    """The positive rational `degree`-th root of `value`, or None if it is irrational."""
    if degree == 1:
        return value
    num, num_exact = integer_nthroot(value.numerator, degree)
    den, den_exact = integer_nthroot(value.denominator, degree)
    if num_exact and den_exact:
        return Fraction(int(num), int(den))
    return None

def _free_coordinates(delta: IntegerMatrix, exponents: Sequence[Sequence[int]]) -> list[int]:
    """
    Coordinates fixed to 1 in x̃.

    Species occurring in the most monomials are preferred (ties by index); a
    coordinate is taken while the remaining columns of Δ^t keep full rank.
    """
    s, target = delta.nrows, rank(delta) if delta.ncols else 0
    occurrences = [sum(1 for y in exponents if y[i] > 0) for i in range(s)]
    order = sorted(range(s), key=lambda i: (-occurrences[i], i))
    delta_t = delta.T
    free: list[int] = []
    for i in order:
        if len(free) == s - target:
            break
        remaining = [c for c in range(s) if c not in free and c != i]
        if not delta.ncols or rank(delta_t.submatrix(cols=remaining)) == target:
            free.append(i)
    return sorted(free)

def _solve_exact(delta: IntegerMatrix, ratios: Sequence[Fraction], free: list[int]) -> tuple[Fraction, ...] | None:
    s = delta.nrows
    x = [Fraction(1)] * s
    if not delta.ncols:
        return tuple(x)
    determined = [i for i in range(s) if i not in free]
    B = delta.T.submatrix(cols=determined)           # P × r, full column rank
    echelon = column_echelon(B)
    H, V = echelon.H, echelon.V
    z: list[Fraction] = []
    for k, (row, col) in enumerate(echelon.pivots):
        value = ratios[row]
        for prev in range(k):
            if H[row, prev]:
                value /= z[prev] ** H[row, prev]
        root = _rational_root(value, H[row, col])
        if root is None:
            logger.debug(f"Pivot {k + 1} needs an irrational root of degree {H[row, col]}")
            return None
        z.append(root)
    for p in range(B.nrows):
        product = Fraction(1)
        for k in range(len(z)):
            if H[p, k]:
                product *= z[k] ** H[p, k]
        if product != ratios[p]:
            raise InvariantViolation(f"Binomial {p + 1} inconsistent although Condition 3 holds")
    for idx, i in enumerate(determined):
        value = Fraction(1)
        for k in range(len(z)):
            if V[idx, k]:
                value *= z[k] ** V[idx, k]
        x[i] = value
    return tuple(x)

def _solve_float(delta: IntegerMatrix, ratios: Sequence[Fraction], free: list[int], tolerance: float) -> tuple[tuple[float, ...], float]:
    s = delta.nrows
    determined = [i for i in range(s) if i not in free]
    B = np.array([[float(delta[i, p]) for i in determined] for p in range(delta.ncols)], dtype=float)
    logs = np.array([math.log(r.numerator) - math.log(r.denominator) for r in ratios], dtype=float)
    solution, *_ = np.linalg.lstsq(B, logs, rcond=None)
    log_x = np.zeros(s)
    log_x[determined] = solution
    full = np.array([[float(v) for v in delta.col(p)] for p in range(delta.ncols)], dtype=float)
    residual = float(np.max(np.abs(np.expm1(full @ log_x - logs)))) if delta.ncols else 0.0
    if residual > tolerance:
        raise ParametrizationError(f"Float solution of the binomials has relative residual {residual:.3e} > {tolerance:.1e}")
    return tuple(float(v) for v in np.exp(log_x)), residual

def build_parametrization(
    cert: ToricCertificate,
    data: ConditionThreeData,
    tolerance: float = 1e-10,
) -> Parametrization:
    """
    Exponent matrix A and a particular positive steady state x̃.

    Args:
        cert (ToricCertificate): Certificate satisfying Condition 2.
        data (ConditionThreeData): Δ and ratios satisfying Condition 3.
        tolerance (float): Relative residual accepted for a float x̃.

    Raises:
        ConditionError: If Condition 2 or 3 fails.
        ParametrizationError: If neither an exact nor a certified float x̃ exists.
    """
    if sign_obstruction(cert) is not None:
        raise ConditionError("Condition 2 fails; no positive steady states to parametrize")
    if not check_condition3(data):
        raise ConditionError("Condition 3 fails; the binomials have no positive common zero")
    A = integer_complement(data.delta)
    free = _free_coordinates(data.delta, cert.exponents)
    x_tilde = _solve_exact(data.delta, data.ratios, free)
    if x_tilde is not None:
        logger.debug(f"Exact particular steady state with free coordinates {[i + 1 for i in free]}")
        return Parametrization(A=A, x_tilde=x_tilde, exact=True, free=tuple(free))
    x_float, residual = _solve_float(data.delta, data.ratios, free, tolerance)
    logger.info(f"Particular steady state in floating point, relative residual {residual:.2e}")
    return Parametrization(A=A, x_tilde=x_float, exact=False, residual=residual, free=tuple(free))

def eval_parametrization(par: Parametrization, t: Sequence) -> tuple:
    """
    x_i = x̃_i ∏_k t_k^{A_ki}.

    Raises:
        DimensionError: If len(t) differs from w.
        ValueError: If some t_k is not strictly positive.
    """
    if len(t) != par.w:
        raise DimensionError(f"Parameter vector of length {len(t)}, expected {par.w}")
    if any(v <= 0 for v in t):
        raise ValueError("Parameters must be strictly positive")
    x = []
    for i, base in enumerate(par.x_tilde):
        value = base
        for k, tk in enumerate(t):
            power = par.A[k, i]
            if power:
                value = value * tk ** power
        x.append(value)
    return tuple(x)

def verify_parametrization(
    matrices: NetworkMatrices,
    binomials: BinomialSystem,
    par: Parametrization,
    t: Sequence,
    tolerance: float = 1e-10,
) -> dict:
    """
    Check that x(t) zeroes every binomial and the mass-action right-hand side.

    Exact comparison when x(t) is exact, relative residuals otherwise. Only
    meaningful when the binomials come from the unenlarged system of `matrices`
    or an enlargement of it.

    Returns:
        dict: {"x": ..., "exact": bool, "binomial_residual": ..., "differential_residual": ..., "passed": bool}
    """
    x = eval_parametrization(par, t)
    exact = par.exact and all(isinstance(v, (int, Fraction)) for v in t)
    binomial_values = binomials.evaluate(x)
    rhs = differential(matrices, x)
    if exact:
        passed = all(v == 0 for v in binomial_values) and all(v == 0 for v in rhs)
        return {"x": x, "exact": True, "binomial_residual": 0 if passed else None,
                "differential_residual": 0 if passed else None, "passed": passed}

    def relative(values, scales):
        return max((abs(float(v)) / max(float(s), 1e-300) for v, s in zip(values, scales)), default=0.0)

    binomial_scale = [abs(float(b.c1)) * _monomial(x, b.exponent1) + abs(float(b.c2)) * _monomial(x, b.exponent2) for b in binomials]
    psi = [_monomial(x, y) for y in matrices.exponents]
    rhs_scale = [sum(abs(float(c)) * p for c, p in zip(row, psi)) for row in matrices.sigma.rows]
    binomial_residual = relative(binomial_values, binomial_scale)
    differential_residual = relative(rhs, rhs_scale)
    passed = binomial_residual <= tolerance and differential_residual <= tolerance
    return {"x": tuple(float(v) for v in x), "exact": False, "binomial_residual": binomial_residual,
            "differential_residual": differential_residual, "passed": passed}

def _monomial(x: Sequence, exponent: Sequence[int]) -> float:
    value = 1.0
    for xi, yi in zip(x, exponent):
        if yi:
            value *= float(xi) ** yi
    return value
