"""Reaction networks, rate assignments and the matrices of mass-action kinetics.

A network is a list of species, a list of distinct complexes (nonnegative
integer exponent vectors over the species) and a list of reactions between
complexes. Indices are 0-based everywhere in the code; reports print them
1-based.

Typical usage example:
    net = ReactionNetwork(
        species=("A", "B"),
        complexes=((2, 0), (0, 2), (1, 1)),
        reactions=(Reaction(0, 1, "k12"), Reaction(1, 0, "k21")),
    )
    matrices = build_matrices(net, unit_rates(net))
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

from ..core.errors import CRNError, DimensionError, InvariantViolation, RateError
from ..core.logger import get_logger
from ..linalg.exact import IntegerMatrix, RationalMatrix, to_fraction

logger = get_logger(__name__)

Exponent = tuple[int, ...]

@dataclass(frozen=True)
class Reaction:
    """
    A reaction educt -> product between complexes, labelled by its rate-constant name.

    Attributes:
        educt (int): Index of the educt complex.
        product (int): Index of the product complex.
        rate (str): Name of the rate constant.
    """
    educt: int
    product: int
    rate: str

@dataclass(frozen=True)
class ReactionNetwork:
    """
    Species, complexes and reactions of a chemical reaction network.

    Raises:
        CRNError: If an exponent vector has the wrong length or a negative entry,
            complexes repeat, a reaction is a self-loop or points outside the
            complex list, rate names repeat, or some species occurs in no complex.
    """
    species: tuple[str, ...]
    complexes: tuple[Exponent, ...]
    reactions: tuple[Reaction, ...]

    def __post_init__(self):
        object.__setattr__(self, "species", tuple(self.species))
        object.__setattr__(self, "complexes", tuple(tuple(int(v) for v in c) for c in self.complexes))
        object.__setattr__(self, "reactions", tuple(self.reactions))
        self._validate()

    def _validate(self) -> None:
        s, m = len(self.species), len(self.complexes)
        if len(set(self.species)) != s:
            raise CRNError(f"Duplicate species name in {self.species}")
        for idx, complex_ in enumerate(self.complexes):
            if len(complex_) != s:
                raise CRNError(f"Complex {idx + 1} has {len(complex_)} entries, expected {s}")
            if any(v < 0 for v in complex_):
                raise CRNError(f"Complex {idx + 1} has a negative stoichiometric coefficient")
        if len(set(self.complexes)) != m:
            raise CRNError("Complexes must be pairwise distinct")
        names = set()
        for reaction in self.reactions:
            if not (0 <= reaction.educt < m and 0 <= reaction.product < m):
                raise CRNError(f"Reaction '{reaction.rate}' refers to a complex outside 1..{m}")
            if reaction.educt == reaction.product:
                raise CRNError(f"Reaction '{reaction.rate}' is a self-loop")
            if reaction.rate in names:
                raise CRNError(f"Duplicate rate name '{reaction.rate}'")
            names.add(reaction.rate)
        for i, name in enumerate(self.species):
            if not any(c[i] > 0 for c in self.complexes):
                raise CRNError(f"Species '{name}' occurs in no complex")

    @property
    def s(self) -> int:
        return len(self.species)

    @property
    def m(self) -> int:
        return len(self.complexes)

    @property
    def r(self) -> int:
        return len(self.reactions)

    @property
    def rate_names(self) -> tuple[str, ...]:
        return tuple(reaction.rate for reaction in self.reactions)

    def complex_label(self, index: int) -> str:
        """Human readable form of a complex, e.g. "2A + B"."""
        terms = []
        for name, coeff in zip(self.species, self.complexes[index]):
            if coeff == 1:
                terms.append(name)
            elif coeff > 1:
                terms.append(f"{coeff}{name}")
        return " + ".join(terms) if terms else "0"

    def complex_matrix(self) -> IntegerMatrix:
        """Y, the m×s matrix whose rows are the complexes."""
        return IntegerMatrix(self.complexes, ncols=self.s)

    def incidence_matrix(self) -> IntegerMatrix:
        """m×r matrix with -1 at the educt and +1 at the product of each reaction."""
        rows = [[0] * self.r for _ in range(self.m)]
        for j, reaction in enumerate(self.reactions):
            rows[reaction.educt][j] = -1
            rows[reaction.product][j] = 1
        return IntegerMatrix(rows, ncols=self.r)

    def educt_selector(self) -> IntegerMatrix:
        """m×r matrix whose column j is the unit vector of the educt of reaction j."""
        rows = [[0] * self.r for _ in range(self.m)]
        for j, reaction in enumerate(self.reactions):
            rows[reaction.educt][j] = 1
        return IntegerMatrix(rows, ncols=self.r)

    def stoichiometric_matrix(self) -> IntegerMatrix:
        """N = Y^t 𝓘, the s×r matrix of reaction vectors. Independent of rates."""
        return self.complex_matrix().T @ self.incidence_matrix()

    def educt_matrix(self) -> IntegerMatrix:
        """s×r matrix whose column j is the exponent vector of the educt of reaction j."""
        return self.complex_matrix().T @ self.educt_selector()

@dataclass(frozen=True)
class RateAssignment:
    """
    Positive rational values for rate-constant names.

    Attributes:
        values (Mapping[str, Fraction]): Read-only name -> value mapping.
    """
    values: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        converted = {}
        for name, value in dict(self.values).items():
            try:
                q = to_fraction(value)
            except (TypeError, ValueError, ZeroDivisionError) as e:
                raise RateError(name, f"cannot read value {value!r}") from e
            if q <= 0:
                raise RateError(name, f"value {q} is not strictly positive")
            converted[name] = q
        object.__setattr__(self, "values", MappingProxyType(converted))

    def __getitem__(self, name: str) -> Fraction:
        return self.values[name]

    def __contains__(self, name: str) -> bool:
        return name in self.values

    def __len__(self) -> int:
        return len(self.values)

    def names(self) -> tuple[str, ...]:
        return tuple(self.values)

    def for_network(self, net: ReactionNetwork) -> tuple[Fraction, ...]:
        """
        Rate constants of `net` in reaction order.

        Raises:
            RateError: If a reaction's rate name has no value.
        """
        missing = [name for name in net.rate_names if name not in self.values]
        if missing:
            raise RateError(missing[0], "no value given")
        extra = set(self.values) - set(net.rate_names)
        if extra:
            logger.debug(f"Ignoring rate values not used by the network: {sorted(extra)}")
        return tuple(self.values[name] for name in net.rate_names)

    def replace(self, **updates) -> "RateAssignment":
        merged = dict(self.values)
        merged.update(updates)
        return RateAssignment(merged)

def unit_rates(net: ReactionNetwork) -> RateAssignment:
    """All rate constants equal to 1."""
    return RateAssignment({name: 1 for name in net.rate_names})

def random_rates(net: ReactionNetwork, rng: random.Random, max_numerator: int = 30, max_denominator: int = 10) -> RateAssignment:
    """Random positive rationals p/q with 1 <= p <= max_numerator and 1 <= q <= max_denominator."""
    return RateAssignment({
        name: Fraction(rng.randint(1, max_numerator), rng.randint(1, max_denominator))
        for name in net.rate_names
    })

@dataclass(frozen=True)
class NetworkMatrices:
    """
    Matrices of the mass-action system of a network at fixed rate constants.

    Attributes:
        network (ReactionNetwork): The network.
        rates (tuple[Fraction, ...]): Rate constants in reaction order.
        Y (IntegerMatrix): m×s complex matrix.
        laplacian (RationalMatrix): A_κ, m×m with (i, j) = κ_{ij} off the diagonal
            and zero row sums.
        sigma (RationalMatrix): Σ = Y^t A_κ^t, s×m.
        incidence (IntegerMatrix): m×r incidence matrix.
        N (IntegerMatrix): s×r stoichiometric matrix.
        educts (IntegerMatrix): s×r educt matrix.
    """
    network: ReactionNetwork
    rates: tuple[Fraction, ...]
    Y: IntegerMatrix
    laplacian: RationalMatrix
    sigma: RationalMatrix
    incidence: IntegerMatrix
    N: IntegerMatrix
    educts: IntegerMatrix

    @property
    def exponents(self) -> tuple[Exponent, ...]:
        """Exponent vectors of the monomials Ψ, one per complex."""
        return self.network.complexes

    def check_identities(self) -> None:
        """
        Verify A_κ^t = 𝓘 diag(k) D^t and Σ = N diag(k) D^t exactly, D being the educt selector.

        Raises:
            InvariantViolation: If an identity does not hold.
        """
        selector = self.network.educt_selector()
        diag_k = RationalMatrix.diag(self.rates)
        if self.laplacian.T != self.incidence @ diag_k @ selector.T:
            raise InvariantViolation("A_κ^t differs from 𝓘 diag(k) D^t")
        if self.sigma != self.N @ diag_k @ selector.T:
            raise InvariantViolation("Σ differs from N diag(k) D^t")
        if any(sum(row, Fraction(0)) != 0 for row in self.laplacian.rows):
            raise InvariantViolation("A_κ has a nonzero row sum")

def build_matrices(net: ReactionNetwork, rates: RateAssignment) -> NetworkMatrices:
    """
    Assemble Y, A_κ, Σ, 𝓘, N and 𝒴 for `net` at the given rates.

    Raises:
        RateError: If a rate constant of `net` is missing.
    """
    k = rates.for_network(net)
    m = net.m
    lap = [[Fraction(0)] * m for _ in range(m)]
    for value, reaction in zip(k, net.reactions):
        lap[reaction.educt][reaction.product] += value
        lap[reaction.educt][reaction.educt] -= value
    laplacian = RationalMatrix(lap, ncols=m)
    Y = net.complex_matrix()
    sigma = Y.T @ laplacian.T
    matrices = NetworkMatrices(
        network=net,
        rates=k,
        Y=Y,
        laplacian=laplacian,
        sigma=sigma,
        incidence=net.incidence_matrix(),
        N=net.stoichiometric_matrix(),
        educts=net.educt_matrix(),
    )
    logger.debug(f"Built matrices for network with s={net.s}, m={m}, r={net.r}")
    return matrices

def eval_monomials(exponents: Sequence[Sequence[int]], x: Sequence) -> tuple:
    """
    Evaluate the monomials x^y for every exponent vector y.

    Exact for rational x, floating point for float x.

    Raises:
        DimensionError: If an exponent vector and x differ in length.
    """
    values = []
    for y in exponents:
        if len(y) != len(x):
            raise DimensionError(f"Exponent vector of length {len(y)} for point of length {len(x)}")
        value = 1
        for xi, yi in zip(x, y):
            if yi:
                value *= xi ** yi
        values.append(value)
    return tuple(values)

def educt_monomials(net: ReactionNetwork, x: Sequence) -> tuple:
    """φ(x): the educt monomial of every reaction."""
    return eval_monomials([net.complexes[reaction.educt] for reaction in net.reactions], x)

def differential(matrices: NetworkMatrices, x: Sequence) -> tuple:
    """Right-hand side Σ·Ψ(x) of the mass-action system."""
    return matrices.sigma.matvec(eval_monomials(matrices.exponents, x))

def flux_form(matrices: NetworkMatrices, x: Sequence) -> tuple:
    """Right-hand side written as N·diag(k)·φ(x); equals `differential`."""
    fluxes = [k * phi for k, phi in zip(matrices.rates, educt_monomials(matrices.network, x))]
    return matrices.N.matvec(fluxes)
