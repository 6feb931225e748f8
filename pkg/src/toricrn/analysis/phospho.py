"""Closed-form analysis of n-site sequential distributive phosphorylation.

Complexes are referred to by their 1-based numbers:
    1..n+1        S_{i-1} + E
    n+2..2n+1     ES_0 .. ES_{n-1}
    2n+2..3n+2    S_{i-(2n+2)} + F
    3n+3..4n+2    FS_1 .. FS_n

Σ'_n is Σ_n without the rows of S_0, E and F and without the columns of the
complexes n+1 and 2n+2; Σ''_n is its leading square block. The kernel of Σ_n
has a basis supported on I_j = {j, n+j+1, 2n+j+2, 3n+j+2} (j = 1..n) plus the
two singletons {n+1} and {2n+2}, with entries given by determinants
D = det Σ''_n and D_ℓ = -det(Σ''_n with column ℓ replaced by column 3n+j+2).

Typical usage example:
    system = generate(2, rates)
    dets = determinants(system)
    x = explicit_steady_state(system)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..core.errors import CRNError, DimensionError, InvariantViolation
from ..core.logger import get_logger
from ..linalg.exact import IntegerMatrix, RationalMatrix, det_bareiss, rank
from ..network.fixtures import multisite_network, multisite_rate_names
from ..network.model import NetworkMatrices, RateAssignment, ReactionNetwork, build_matrices, differential, unit_rates
from .toric import BinomialSystem, ToricCertificate, binomial_generators, normalize_basis_vector

logger = get_logger(__name__)

@dataclass(frozen=True)
class PhosphoSystem:
    """The n-site network with rate constants and its matrices."""
    n: int
    network: ReactionNetwork
    rates: RateAssignment
    matrices: NetworkMatrices

    @property
    def s(self) -> int:
        return 3 * self.n + 3

    @property
    def m(self) -> int:
        return 4 * self.n + 2

@dataclass(frozen=True)
class PhosphoDeterminants:
    """
    D and the 3n determinants D_ℓ, keyed by 1-based complex number ℓ.

    Attributes:
        n (int): Number of sites.
        D (Fraction): det Σ''_n.
        values (dict[int, Fraction]): D_j, D_{n+j+1}, D_{2n+j+2} for j = 1..n.
    """
    n: int
    D: Fraction
    values: dict[int, Fraction]

    def __getitem__(self, index: int) -> Fraction:
        return self.values[index]

    @property
    def sign(self) -> int:
        return 1 if self.D > 0 else -1

    def to_json(self) -> dict:
        return {"D": self.D, "D_l": {str(k): v for k, v in sorted(self.values.items())}}

def generate(n: int, rates: RateAssignment | None = None) -> PhosphoSystem:
    """
    Build the n-site system; unit rates when `rates` is None.

    Raises:
        CRNError: If n < 1.
        RateError: If `rates` misses one of kon_j, koff_j, kcat_j, lon_j, loff_j, lcat_j.
    """
    network = multisite_network(n)
    rates = rates if rates is not None else unit_rates(network)
    return PhosphoSystem(n=n, network=network, rates=rates, matrices=build_matrices(network, rates))

def determinant_indices(n: int, j: int) -> tuple[int, int, int]:
    """ℓ(j) ∈ {j, n+j+1, 2n+j+2}: the three complexes of I_j other than the FS complex."""
    if not 1 <= j <= n:
        raise CRNError(f"Site index {j} outside 1..{n}")
    return j, n + j + 1, 2 * n + j + 2

def partition_blocks(n: int) -> tuple[tuple[int, ...], ...]:
    """I_1..I_n, {n+1}, {2n+2} with 1-based complex numbers, sorted by smallest element."""
    blocks = [determinant_indices(n, j) + (3 * n + j + 2,) for j in range(1, n + 1)]
    return tuple(blocks) + ((n + 1,), (2 * n + 2,))

def sigma_prime_column(n: int, complex_number: int) -> int:
    """
    0-based column of Σ'_n holding the 1-based complex `complex_number`.

    Raises:
        CRNError: For the deleted complexes n+1 and 2n+2, or a number outside 1..4n+2.
    """
    if complex_number in (n + 1, 2 * n + 2) or not 1 <= complex_number <= 4 * n + 2:
        raise CRNError(f"Complex {complex_number} has no column in Σ'_{n}")
    if complex_number < n + 1:
        return complex_number - 1
    if complex_number < 2 * n + 2:
        return complex_number - 2
    return complex_number - 3

def sigma_blocks(system: PhosphoSystem) -> tuple[RationalMatrix, RationalMatrix, RationalMatrix]:
    """(Σ_n, Σ'_n, Σ''_n)."""
    n, sigma = system.n, system.matrices.sigma
    s = sigma.nrows
    prime = sigma.delete(rows=[0, s - 2, s - 1], cols=[n, 2 * n + 1])
    double_prime = prime.submatrix(cols=range(3 * n))
    return sigma, prime, double_prime

def determinants(system: PhosphoSystem) -> PhosphoDeterminants:
    """
    D and every D_ℓ(j).

    Raises:
        InvariantViolation: If some value is zero or the signs differ.
    """
    n = system.n
    _, prime, double_prime = sigma_blocks(system)
    D = det_bareiss(double_prime)
    values: dict[int, Fraction] = {}
    for j in range(1, n + 1):
        replacement = prime.col(sigma_prime_column(n, 3 * n + j + 2))
        for ell in determinant_indices(n, j):
            target = sigma_prime_column(n, ell)
            rows = [list(row) for row in double_prime.rows]
            for i, value in enumerate(replacement):
                rows[i][target] = value
            values[ell] = -det_bareiss(RationalMatrix(rows, ncols=3 * n))
    signs = {value > 0 for value in values.values()} | {D > 0}
    if D == 0 or any(value == 0 for value in values.values()) or len(signs) != 1:
        raise InvariantViolation(f"Determinants of the {n}-site system are not nonzero and sign-constant")
    logger.debug(f"{n}-site determinants computed, common sign {'+' if D > 0 else '-'}")
    return PhosphoDeterminants(n=n, D=D, values=values)

def raw_basis(system: PhosphoSystem, dets: PhosphoDeterminants | None = None) -> list[tuple[Fraction, ...]]:
    """Kernel vectors b^1..b^n with determinant entries, then e_{n+1} and e_{2n+2}."""
    n, m = system.n, system.m
    dets = dets or determinants(system)
    vectors = []
    for j in range(1, n + 1):
        vec = [Fraction(0)] * m
        for ell in determinant_indices(n, j):
            vec[ell - 1] = dets[ell]
        vec[3 * n + j + 1] = dets.D
        vectors.append(tuple(vec))
    for single in (n + 1, 2 * n + 2):
        vec = [Fraction(0)] * m
        vec[single - 1] = Fraction(1)
        vectors.append(tuple(vec))
    return vectors

def _certificate(system: PhosphoSystem, vectors: Sequence[tuple[Fraction, ...]]) -> ToricCertificate:
    blocks = tuple(tuple(sorted(i - 1 for i in block)) for block in partition_blocks(system.n))
    cert = ToricCertificate(blocks=blocks, basis=tuple(vectors), exponents=system.network.complexes)
    cert.validate(system.matrices.sigma)
    return cert

def canonical_certificate(system: PhosphoSystem, normalize: bool = True) -> ToricCertificate:
    """
    Certificate with partition I_1..I_n, {n+1}, {2n+2}, validated against Σ_n.

    Args:
        system (PhosphoSystem): The system.
        normalize (bool): Integer-primitive vectors with positive leading entry
            (as `find_certificate` returns them) instead of raw determinants.
    """
    vectors = raw_basis(system)
    if normalize:
        vectors = [normalize_basis_vector(vec) for vec in vectors]
    return _certificate(system, vectors)

def binomials_closed_form(system: PhosphoSystem) -> BinomialSystem:
    """Binomials D_j·x^{y_ℓ} - D_ℓ·x^{y_j} of the canonical certificate."""
    return binomial_generators(canonical_certificate(system, normalize=False))

def vanishing_minors_check(system: PhosphoSystem, j: int) -> bool:
    """True iff removing any two columns of I_j from Σ'_n leaves rank < 3n."""
    n = system.n
    _, prime, _ = sigma_blocks(system)
    block = determinant_indices(n, j) + (3 * n + j + 2,)
    columns = [sigma_prime_column(n, ell) for ell in block]
    return all(rank(prime.delete(cols=pair)) < 3 * n for pair in combinations(columns, 2))

def _species(n: int) -> dict[str, list[int]]:
    """0-based species positions: s_0..s_n, c_0..c_{n-1}, d_1..d_n, e, f."""
    return {
        "s": list(range(n + 1)),
        "c": list(range(n + 1, 2 * n + 1)),
        "d": list(range(2 * n + 1, 3 * n + 1)),
        "e": [3 * n + 1],
        "f": [3 * n + 2],
    }

def explicit_steady_state(system: PhosphoSystem, dets: PhosphoDeterminants | None = None) -> tuple[Fraction, ...]:
    """
    Particular positive steady state with s_0 = e = f = 1.

    s_j = s_{j-1}·D_{2n+j+2}/D_j, c_{j-1} = s_{j-1}·D_{n+j+1}/D_j and
    d_j = s_{j-1}·D/D_j for j = 1..n.
    """
    n = system.n
    dets = dets or determinants(system)
    idx = _species(n)
    x = [Fraction(1)] * system.s
    for j in range(1, n + 1):
        previous = x[idx["s"][j - 1]]
        x[idx["s"][j]] = previous * dets[2 * n + j + 2] / dets[j]
        x[idx["c"][j - 1]] = previous * dets[n + j + 1] / dets[j]
        x[idx["d"][j - 1]] = previous * dets.D / dets[j]
    return tuple(x)

def phospho_exponent_matrix(n: int) -> IntegerMatrix:
    """
    3×(3n+3) exponent matrix of the parametrization.

    s_j ~ t1^j t3, c_{j-1} ~ t1^j t2 t3, d_j ~ t1^j t2 t3, e ~ t1 t2, f ~ t2.
    """
    t1 = list(range(n + 1)) + list(range(1, n + 1)) + list(range(1, n + 1)) + [1, 0]
    t2 = [0] * (n + 1) + [1] * (2 * n) + [1, 1]
    t3 = [1] * (3 * n + 1) + [0, 0]
    return IntegerMatrix([t1, t2, t3], ncols=3 * n + 3)

def phospho_parametrization(system: PhosphoSystem, t: Sequence, dets: PhosphoDeterminants | None = None) -> tuple:
    """
    x(t) = x̃ ∘ t^A for t = (t1, t2, t3).

    Raises:
        DimensionError: If t does not have three entries.
        ValueError: If an entry of t is not strictly positive.
    """
    if len(t) != 3:
        raise DimensionError(f"The parametrization takes 3 parameters, got {len(t)}")
    if any(v <= 0 for v in t):
        raise ValueError("Parameters must be strictly positive")
    x_tilde = explicit_steady_state(system, dets)
    A = phospho_exponent_matrix(system.n)
    x = []
    for i, base in enumerate(x_tilde):
        value = base
        for k in range(3):
            if A[k, i]:
                value = value * t[k] ** A[k, i]
        x.append(value)
    return tuple(x)

def conservation_values(system: PhosphoSystem, x: Sequence) -> tuple:
    """
    (E_tot, F_tot, S_tot) = (e + Σc, f + Σd, Σs + Σc + Σd).

    Raises:
        DimensionError: If x does not have 3n+3 entries.
    """
    if len(x) != system.s:
        raise DimensionError(f"Point of length {len(x)}, expected {system.s}")
    idx = _species(system.n)
    total = {key: sum((x[i] for i in positions), 0) for key, positions in idx.items()}
    return (
        total["e"] + total["c"],
        total["f"] + total["d"],
        total["s"] + total["c"] + total["d"],
    )

def shifted_rates(rates: RateAssignment, n: int) -> RateAssignment:
    """
    Rates of the (n-1)-site system obtained by dropping index 0 and renumbering.

    Raises:
        CRNError: If n < 2.
    """
    if n < 2:
        raise CRNError("Shifting needs at least two sites")
    shifted = {}
    for name in multisite_rate_names(n - 1):
        stem, index = name.rstrip("0123456789"), int(name[len(name.rstrip("0123456789")):])
        shifted[name] = rates[f"{stem}{index + 1}"]
    return RateAssignment(shifted)

def phospho_report(system: PhosphoSystem, sample_t: Sequence = (2, 3, 5)) -> dict:
    """Closed-form results for the CLI: determinants, certificate, x̃, A and a sample point."""
    dets = determinants(system)
    x_tilde = explicit_steady_state(system, dets)
    sample = phospho_parametrization(system, [Fraction(v) for v in sample_t], dets)
    residual_zero = all(v == 0 for v in differential(system.matrices, sample))
    return {
        "n": system.n,
        "counts": {"s": system.s, "m": system.m, "r": system.network.r},
        "determinants": dets,
        "certificate": canonical_certificate(system),
        "raw_basis": [list(vec) for vec in raw_basis(system, dets)],
        "vanishing_minors": all(vanishing_minors_check(system, j) for j in range(1, system.n + 1)),
        "x_tilde": list(x_tilde),
        "A": phospho_exponent_matrix(system.n),
        "sample": {"t": [Fraction(v) for v in sample_t], "x": list(sample),
                   "conservation": list(conservation_values(system, sample)), "steady_state": residual_zero},
    }
