"""Enlarging the steady state system by monomial multiples of its equations.

Adding x^α·f_i to f_1 = ... = f_s = 0 leaves the ideal unchanged but can make
the larger coefficient matrix Σ' satisfy the disjoint-support condition when Σ
itself does not. `search_multipliers` looks for such multiples by brute force
over small monomials and small sets of equations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from ..core.errors import DimensionError
from ..core.logger import get_logger
from ..linalg.exact import RationalMatrix
from ..network.model import NetworkMatrices
from .toric import ToricCertificate, find_certificate

logger = get_logger(__name__)

Exponent = tuple[int, ...]

@dataclass(frozen=True)
class Multiplier:
    """The equation x^alpha · f_equation (0-based equation index)."""
    alpha: Exponent
    equation: int

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "equation": self.equation + 1}

@dataclass(frozen=True)
class EnlargedSystem:
    """
    Coefficient matrix of the enlarged system.

    Attributes:
        sigma (RationalMatrix): (s + len(multipliers))×m' matrix.
        exponents (tuple[Exponent, ...]): The m' monomials; the first m are the original ones.
        multipliers (tuple[Multiplier, ...]): Added equations, in row order.
        original_m (int): Number of monomials of the unenlarged system.
    """
    sigma: RationalMatrix
    exponents: tuple[Exponent, ...]
    multipliers: tuple[Multiplier, ...]
    original_m: int

    def to_json(self) -> dict:
        return {
            "multipliers": [mult.to_json() for mult in self.multipliers],
            "equations": self.sigma.nrows,
            "monomials": self.sigma.ncols,
            "new_monomials": [list(y) for y in self.exponents[self.original_m:]],
        }

def _shifted_row(row: Sequence[Fraction], exponents: Sequence[Exponent], alpha: Exponent) -> dict[Exponent, Fraction]:
    """Monomial -> coefficient of x^alpha · f for the equation with coefficient row `row`."""
    shifted: dict[Exponent, Fraction] = {}
    for coefficient, y in zip(row, exponents):
        if coefficient != 0:
            shifted[tuple(a + b for a, b in zip(y, alpha))] = coefficient
    return shifted

def enlarge(sigma: RationalMatrix, exponents: Sequence[Sequence[int]], multipliers: Sequence[Multiplier]) -> EnlargedSystem:
    """
    Append the rows x^α·f_i to Σ.

    New monomials are appended after the original ones in order of first
    occurrence; monomials only reached with coefficient zero are not added.

    Raises:
        DimensionError: If an equation index or the length of α is out of range.
    """
    exponents = [tuple(int(v) for v in y) for y in exponents]
    s = sigma.nrows
    size = len(exponents[0]) if exponents else 0
    index = {y: i for i, y in enumerate(exponents)}
    shifted_rows = []
    for mult in multipliers:
        if not 0 <= mult.equation < s:
            raise DimensionError(f"Equation index {mult.equation + 1} outside 1..{s}")
        if len(mult.alpha) != size or any(a < 0 for a in mult.alpha):
            raise DimensionError(f"Multiplier exponent {mult.alpha} must be a nonnegative vector of length {size}")
        row = _shifted_row(sigma.row(mult.equation), exponents, tuple(mult.alpha))
        for y in row:
            if y not in index:
                index[y] = len(exponents)
                exponents.append(y)
        shifted_rows.append(row)

    width = len(exponents)
    rows = [list(r) + [Fraction(0)] * (width - sigma.ncols) for r in sigma.rows]
    for row in shifted_rows:
        dense = [Fraction(0)] * width
        for y, coefficient in row.items():
            dense[index[y]] = coefficient
        rows.append(dense)
    return EnlargedSystem(
        sigma=RationalMatrix(rows, ncols=width),
        exponents=tuple(exponents),
        multipliers=tuple(multipliers),
        original_m=sigma.ncols,
    )

def enlarge_system(matrices: NetworkMatrices, multipliers: Sequence[Multiplier]) -> EnlargedSystem:
    """Enlarge the mass-action system Σ·Ψ of `matrices` by the given multiples."""
    return enlarge(matrices.sigma, matrices.exponents, multipliers)

def monomials_up_to(size: int, bound: int) -> Iterator[Exponent]:
    """Exponent vectors of total degree 1..bound, by degree, then in ascending lex order."""
    for degree in range(1, bound + 1):
        vectors = []
        for combo in itertools.combinations_with_replacement(range(size), degree):
            vec = [0] * size
            for i in combo:
                vec[i] += 1
            vectors.append(tuple(vec))
        yield from sorted(vectors)

def search_multipliers(
    matrices: NetworkMatrices,
    bound: int,
    max_rows: int = 6,
) -> tuple[EnlargedSystem, ToricCertificate] | None:
    """
    Find monomial multiples of equations for which Condition 1 holds.

    Candidates are tried in a fixed order: total degree of α, then α in
    ascending lex order, then sets of equations by size and in lex order.
    A set is skipped when none of its shifted rows shares a monomial with the
    original system, or when one of the monomials it introduces occurs in only
    one of its rows. The search is incomplete.

    Args:
        matrices (NetworkMatrices): The system to enlarge.
        bound (int): Largest total degree of α; 0 disables the search.
        max_rows (int): Largest number of equations multiplied by one α.

    Returns:
        tuple[EnlargedSystem, ToricCertificate] | None: First success in search order.
    """
    sigma, exponents = matrices.sigma, [tuple(y) for y in matrices.exponents]
    original = set(exponents)
    tried = 0
    for alpha in monomials_up_to(matrices.network.s, bound):
        shifted = {
            i: _shifted_row(sigma.row(i), exponents, alpha)
            for i in range(sigma.nrows)
            if any(v != 0 for v in sigma.row(i))
        }
        touching = {i for i, row in shifted.items() if original.intersection(row)}
        if not touching:
            continue
        candidates = sorted(shifted)
        for size in range(1, min(max_rows, len(candidates)) + 1):
            for subset in itertools.combinations(candidates, size):
                if not touching.intersection(subset):
                    continue
                counts: dict[Exponent, int] = {}
                for i in subset:
                    for y in shifted[i]:
                        if y not in original:
                            counts[y] = counts.get(y, 0) + 1
                if any(c == 1 for c in counts.values()):
                    continue
                tried += 1
                system = enlarge(sigma, exponents, [Multiplier(alpha, i) for i in subset])
                result = find_certificate(system.sigma, system.exponents)
                if isinstance(result, ToricCertificate):
                    logger.info(
                        f"Condition 1 holds after multiplying equations {[i + 1 for i in subset]} "
                        f"by x^{list(alpha)} ({tried} candidates tried)"
                    )
                    return system, result
    logger.info(f"No enlargement found with degree <= {bound} ({tried} candidates tried)")
    return None
