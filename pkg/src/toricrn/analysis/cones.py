"""Extreme rays of the flux cone ker(N) ∩ R^r_≥0.

The cone is described in coordinates c of a kernel basis K of N, where it is
{c : K c ≥ 0}. Extreme rays are found by the double description method: the
inequalities are added one at a time, starting from the whole space; pairs of
rays on opposite sides of a new hyperplane are combined when they are adjacent
(no third ray vanishes on every processed inequality both of them vanish on).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..core.errors import InvariantViolation
from ..core.logger import get_logger
from ..linalg.exact import IntegerMatrix, RationalMatrix, dot, kernel_basis
from ..linalg.lattice import primitive_vector
from ..linalg.simplex import nonnegative_solution

logger = get_logger(__name__)

@dataclass(frozen=True)
class ConeData:
    """
    Generators of the flux cone.

    Attributes:
        M (IntegerMatrix): r×p matrix whose columns are the extreme rays, integer-primitive.
        zero_coordinates (tuple[int, ...]): Reactions whose flux is zero on the whole cone.
    """
    M: IntegerMatrix
    zero_coordinates: tuple[int, ...]

    @property
    def degenerate(self) -> bool:
        """Some reaction carries zero flux on the whole cone; then no positive steady state exists."""
        return bool(self.zero_coordinates)

    @property
    def rays(self) -> list[tuple[int, ...]]:
        return self.M.columns()

    def to_json(self) -> dict:
        return {
            "rays": [list(ray) for ray in self.rays],
            "degenerate": self.degenerate,
            "zero_coordinates": [i + 1 for i in self.zero_coordinates],
        }

def _zero_set(constraints: Sequence[tuple[Fraction, ...]], processed: Sequence[int], ray: Sequence) -> frozenset[int]:
    return frozenset(j for j in processed if dot(constraints[j], ray) == 0)

def _scaled(vector: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in primitive_vector(vector))

def _project(a: Sequence, pivot: Sequence, vector: Sequence) -> tuple[Fraction, ...]:
    """Move `vector` along `pivot` onto the hyperplane a·x = 0."""
    t = Fraction(dot(a, vector)) / dot(a, pivot)
    return tuple(v - t * p for v, p in zip(vector, pivot))

def extreme_rays(N: RationalMatrix) -> ConeData:
    """
    Extreme rays of {v ∈ ker(N) : v ≥ 0}.

    Args:
        N (RationalMatrix): s×r stoichiometric matrix.

    Returns:
        ConeData: The rays as columns of M and the coordinates zero on every ray.
    """
    r = N.ncols
    kernel = kernel_basis(N)
    dk = len(kernel)
    # constraint i: v_i = Σ_k c_k kernel[k][i] ≥ 0
    constraints = [tuple(vec[i] for vec in kernel) for i in range(r)]

    lineality: list[tuple[Fraction, ...]] = [
        tuple(Fraction(int(i == k)) for i in range(dk)) for k in range(dk)
    ]
    rays: list[tuple[Fraction, ...]] = []
    processed: list[int] = []

    for i, a in enumerate(constraints):
        pivot = next((l for l in lineality if dot(a, l) != 0), None)
        if pivot is not None:
            if dot(a, pivot) < 0:
                pivot = tuple(-v for v in pivot)
            # the pivot itself projects to zero and leaves the lineality space
            lineality = [v for v in (_project(a, pivot, l) for l in lineality) if any(x != 0 for x in v)]
            rays = [_scaled(v) for v in (_project(a, pivot, ray) for ray in rays) if any(x != 0 for x in v)]
            rays.append(_scaled(pivot))
        else:
            values = [dot(a, ray) for ray in rays]
            positive = [ray for ray, v in zip(rays, values) if v > 0]
            negative = [ray for ray, v in zip(rays, values) if v < 0]
            kept = [ray for ray, v in zip(rays, values) if v >= 0]
            zero_sets = {ray: _zero_set(constraints, processed, ray) for ray in rays}
            combined = []
            for p in positive:
                for q in negative:
                    common = zero_sets[p] & zero_sets[q]
                    if any(other not in (p, q) and common <= zero_sets[other] for other in rays):
                        continue
                    ray = tuple(dot(a, p) * qv - dot(a, q) * pv for pv, qv in zip(p, q))
                    if any(v != 0 for v in ray):
                        combined.append(_scaled(ray))
            rays = list(dict.fromkeys(kept + combined))
        processed.append(i)
        logger.debug(f"Double description: inequality {i + 1}/{r}, {len(rays)} rays, lineality {len(lineality)}")

    if lineality:
        raise InvariantViolation("Flux cone has a lineality space although K has full column rank")

    fluxes = set()
    for ray in rays:
        flux = tuple(sum((c * vec[j] for c, vec in zip(ray, kernel)), Fraction(0)) for j in range(r))
        if any(v != 0 for v in flux):
            fluxes.add(primitive_vector(flux))
    columns = sorted(fluxes, reverse=True)
    zero = tuple(j for j in range(r) if all(col[j] == 0 for col in columns))
    M = IntegerMatrix.from_columns(columns, nrows=r) if columns else IntegerMatrix.zeros(r, 0)
    logger.debug(f"Flux cone has {len(columns)} extreme rays; zero coordinates {[j + 1 for j in zero]}")
    return ConeData(M=M, zero_coordinates=zero)

def cone_membership(cone: ConeData, v: Sequence) -> tuple[Fraction, ...] | None:
    """λ ≥ 0 with M λ = v, or None if v is not in the cone."""
    return nonnegative_solution(cone.M, list(v))
