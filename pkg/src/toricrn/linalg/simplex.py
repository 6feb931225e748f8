"""Exact feasibility linear programs.

All arithmetic is done with Fractions. Phase I of the simplex method with
Bland's rule decides whether {x ≥ 0 : A x = b} is empty, so no cycling can occur
and a returned point satisfies the constraints exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..core.constants import Sign
from ..core.errors import DimensionError
from ..core.logger import get_logger
from .exact import RationalMatrix, to_fraction

logger = get_logger(__name__)

def nonnegative_solution(matrix: RationalMatrix, rhs: Sequence) -> tuple[Fraction, ...] | None:
    """
    Find x ≥ 0 with matrix·x = rhs.

    Args:
        matrix (RationalMatrix): q×n constraint matrix.
        rhs (Sequence): Right-hand side of length q.

    Returns:
        tuple[Fraction, ...] | None: A basic feasible solution, or None if infeasible.
    """
    q, n = matrix.shape
    if len(rhs) != q:
        raise DimensionError(f"Right-hand side of length {len(rhs)} for {q} constraints")
    a = [[to_fraction(v) for v in row] for row in matrix.rows]
    b = [to_fraction(v) for v in rhs]
    for i in range(q):
        if b[i] < 0:
            a[i] = [-v for v in a[i]]
            b[i] = -b[i]
    return _phase_one(a, b, n)

def _phase_one(a: list[list[Fraction]], b: list[Fraction], n: int) -> tuple[Fraction, ...] | None:
    """Phase I simplex on the tableau [A | I | b] with b ≥ 0, minimizing the artificial sum."""
    q = len(a)
    if q == 0:
        return tuple(Fraction(0) for _ in range(n))

    width = n + q
    tableau = [a[i] + [Fraction(1 if k == i else 0) for k in range(q)] + [b[i]] for i in range(q)]
    basis = [n + i for i in range(q)]
    # reduced costs of the phase I objective; the last entry is minus the objective value
    cost = [-sum((tableau[i][j] for i in range(q)), Fraction(0)) for j in range(n)] + [Fraction(0)] * q
    cost.append(-sum(b, Fraction(0)))

    iterations = 0
    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leaving_row = None
        best: tuple[Fraction, int] | None = None
        for i in range(q):
            coeff = tableau[i][entering]
            if coeff > 0:
                key = (tableau[i][-1] / coeff, basis[i])
                if best is None or key < best:
                    best, leaving_row = key, i
        if leaving_row is None:
            # phase I objective is bounded below by zero
            raise ArithmeticError("Unbounded phase I direction")
        _pivot(tableau, cost, leaving_row, entering)
        basis[leaving_row] = entering
        iterations += 1

    logger.debug(f"Phase I finished after {iterations} pivots, objective {-cost[-1]}")
    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tableau[i][-1]
    return tuple(x)

def _pivot(tableau: list[list[Fraction]], cost: list[Fraction], row: int, col: int) -> None:
    pivot = tableau[row][col]
    tableau[row] = [v / pivot for v in tableau[row]]
    pivot_row = tableau[row]
    for i, other in enumerate(tableau):
        if i != row and other[col] != 0:
            factor = other[col]
            tableau[i] = [v - factor * p for v, p in zip(other, pivot_row)]
    if cost[col] != 0:
        factor = cost[col]
        cost[:] = [v - factor * p for v, p in zip(cost, pivot_row)]

def lp_feasible(
    equalities: RationalMatrix,
    pattern: Sequence[Sign | None],
    margin: Fraction | int = 1,
) -> tuple[Fraction, ...] | None:
    """
    Find σ with equalities·σ = 0 and sign(σ) following `pattern`.

    Strict signs are enforced with a margin: σ_i ≥ margin for "+" and
    σ_i ≤ -margin for "-". Since the constraint set is a cone, any strictly
    signed solution can be rescaled to meet the margin. A `None` entry leaves
    the coordinate free.

    Args:
        equalities (RationalMatrix): q×n matrix B.
        pattern (Sequence[Sign | None]): Target sign per coordinate.
        margin (Fraction | int): Positive lower bound on |σ_i| for strict signs.

    Returns:
        tuple[Fraction, ...] | None: An exact feasible σ, or None.
    """
    q, n = equalities.shape
    if len(pattern) != n:
        raise DimensionError(f"Sign pattern of length {len(pattern)} for {n} coordinates")
    margin = to_fraction(margin)

    # σ_i = offset_i + Σ coefficient * variable, with variables ≥ 0
    columns: list[tuple[int, Fraction]] = []
    offset = [Fraction(0)] * n
    for i, sign in enumerate(pattern):
        if sign is None:
            columns.append((i, Fraction(1)))
            columns.append((i, Fraction(-1)))
        elif sign == Sign.POSITIVE:
            offset[i] = margin
            columns.append((i, Fraction(1)))
        elif sign == Sign.NEGATIVE:
            offset[i] = -margin
            columns.append((i, Fraction(-1)))

    rows = [[to_fraction(v) for v in row] for row in equalities.rows]
    a = [[row[i] * coeff for i, coeff in columns] for row in rows]
    b = [-sum((row[i] * offset[i] for i in range(n)), Fraction(0)) for row in rows]
    for k in range(q):
        if b[k] < 0:
            a[k] = [-v for v in a[k]]
            b[k] = -b[k]

    solution = _phase_one(a, b, len(columns))
    if solution is None:
        return None
    sigma = list(offset)
    for value, (i, coeff) in zip(solution, columns):
        sigma[i] += coeff * value
    return tuple(sigma)
