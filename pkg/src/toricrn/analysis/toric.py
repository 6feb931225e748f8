"""Disjoint-support kernel bases and the binomials they produce.

A polynomial system f = Σ·Ψ(x) has a binomial steady state ideal when ker(Σ)
has a basis of vectors with pairwise disjoint supports that cover every
monomial (Condition 1). The coefficients of each basis vector then give one
binomial per pair of monomials in its support. Condition 2 asks that every basis
vector be sign-constant so those binomials have positive zeros, and Condition 3
that the coefficient ratios be consistent across the exponent lattice.

Typical usage example:
    result = find_certificate(matrices.sigma, matrices.exponents)
    if isinstance(result, ToricCertificate) and check_condition2(result):
        binomials = binomial_generators(result)
        data = build_condition3(result)
        holds = check_condition3(data)
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import Rational, symbols

from ..core.errors import ConditionError, DimensionError, InvariantViolation
from ..core.logger import get_logger
from ..linalg.exact import IntegerMatrix, RationalMatrix, det_bareiss, kernel_basis, rank, rref
from ..linalg.lattice import integer_kernel, primitive_vector

logger = get_logger(__name__)

Exponent = tuple[int, ...]

@dataclass(frozen=True)
class ToricCertificate:
    """
    A kernel basis of Σ with disjoint supports.

    Attributes:
        blocks (tuple[tuple[int, ...], ...]): Partition of the monomial indices,
            sorted by smallest element; each block sorted.
        basis (tuple[tuple[Fraction, ...], ...]): One kernel vector per block,
            supported exactly on it, integer-primitive with a positive entry
            at the block's smallest index.
        exponents (tuple[Exponent, ...]): Exponent vectors of the monomials Σ acts on.
        cond2 (bool | None): Condition 2, once checked.
        cond3 (bool | None): Condition 3, once checked.
    """
    blocks: tuple[tuple[int, ...], ...]
    basis: tuple[tuple[Fraction, ...], ...]
    exponents: tuple[Exponent, ...] = ()
    cond2: bool | None = None
    cond3: bool | None = None

    @property
    def d(self) -> int:
        return len(self.blocks)

    @property
    def m(self) -> int:
        return sum(len(block) for block in self.blocks)

    def block_of(self, index: int) -> int:
        return next(k for k, block in enumerate(self.blocks) if index in block)

    def with_flags(self, **flags) -> "ToricCertificate":
        return dataclasses.replace(self, **flags)

    def validate(self, sigma: RationalMatrix) -> None:
        """
        Assert every certificate invariant exactly.

        Raises:
            InvariantViolation: If blocks overlap or miss an index, a support
                differs from its block, a vector is not in ker(Σ), or the basis
                size differs from dim ker(Σ).
        """
        m = sigma.ncols
        covered = sorted(i for block in self.blocks for i in block)
        if covered != list(range(m)):
            raise InvariantViolation(f"Blocks {self.partition()} do not partition 1..{m}")
        if len(self.basis) != len(self.blocks):
            raise InvariantViolation("One basis vector per block is required")
        for block, vector in zip(self.blocks, self.basis):
            support = tuple(i for i, v in enumerate(vector) if v != 0)
            if support != block:
                raise InvariantViolation(f"Support {[i + 1 for i in support]} differs from block {[i + 1 for i in block]}")
            if any(v != 0 for v in sigma.matvec(vector)):
                raise InvariantViolation(f"Basis vector of block {[i + 1 for i in block]} is not in ker(Σ)")
        if len(self.blocks) != m - rank(sigma):
            raise InvariantViolation(f"{len(self.blocks)} blocks but dim ker(Σ) = {m - rank(sigma)}")

    def partition(self) -> list[list[int]]:
        """Blocks with 1-based indices."""
        return [[i + 1 for i in block] for block in self.blocks]

    def to_json(self) -> dict:
        return {
            "partition": self.partition(),
            "basis": [list(vector) for vector in self.basis],
            "cond2": self.cond2,
            "cond3": self.cond3,
        }

@dataclass(frozen=True)
class Condition1Failure:
    """
    Proof that no disjoint-support kernel basis exists.

    Attributes:
        reason (str): "zero_coordinate", "block_dimension" or "block_count".
        coordinate (int | None): Index vanishing on all of ker(Σ).
        block (tuple[int, ...] | None): Block whose restricted kernel is not a line
            spanned by a vector of full support.
        dimension (int | None): Dimension of that restricted kernel, or the number
            of blocks found for "block_count".
    """
    reason: str
    coordinate: int | None = None
    block: tuple[int, ...] | None = None
    dimension: int | None = None

    @property
    def message(self) -> str:
        if self.reason == "zero_coordinate":
            return f"coordinate {self.coordinate + 1} is zero on every kernel vector of Σ"
        if self.reason == "block_dimension":
            listed = ", ".join(str(i + 1) for i in self.block)
            return f"kernel vectors supported on {{{listed}}} span dimension {self.dimension}, not a line of full support"
        return f"{self.dimension} candidate blocks but dim ker(Σ) differs"

    def to_json(self) -> dict:
        return {
            "reason": self.reason,
            "coordinate": None if self.coordinate is None else self.coordinate + 1,
            "block": None if self.block is None else [i + 1 for i in self.block],
            "dimension": self.dimension,
            "message": self.message,
        }

@dataclass(frozen=True)
class SignObstruction:
    """
    Two coefficients of opposite sign within one block.

    The binomial c1·x^a - c2·x^b with c1·c2 < 0 has no positive zero.
    """
    block: tuple[int, ...]
    first: int
    second: int
    c1: Fraction
    c2: Fraction

    def to_json(self) -> dict:
        return {
            "block": [i + 1 for i in self.block],
            "indices": [self.first + 1, self.second + 1],
            "coefficients": [self.c1, self.c2],
            "message": (
                f"binomial with coefficients {self.c1} and {self.c2} of opposite sign has no positive zero"
            ),
        }

@dataclass(frozen=True)
class Binomial:
    """c1·x^exponent1 - c2·x^exponent2, from the block pair (first, second)."""
    c1: Fraction
    exponent1: Exponent
    c2: Fraction
    exponent2: Exponent
    pair: tuple[int, int]

    def evaluate(self, x: Sequence):
        term1, term2 = self.c1, self.c2
        for xi, a, b in zip(x, self.exponent1, self.exponent2):
            if a:
                term1 = term1 * xi ** a
            if b:
                term2 = term2 * xi ** b
        return term1 - term2

    def coefficient_vector(self, m: int) -> tuple[Fraction, ...]:
        """β = c1·e_second - c2·e_first, the row of this binomial over the m monomials."""
        vec = [Fraction(0)] * m
        first, second = self.pair
        vec[second] += self.c1
        vec[first] -= self.c2
        return tuple(vec)

    def expression(self, names: Sequence[str] | None = None):
        """The binomial as a sympy expression in x1..xs or the given names."""
        names = names or [f"x{i + 1}" for i in range(len(self.exponent1))]
        xs = symbols(list(names), positive=True)
        term1 = Rational(self.c1.numerator, self.c1.denominator)
        term2 = Rational(self.c2.numerator, self.c2.denominator)
        for x, a, b in zip(xs, self.exponent1, self.exponent2):
            term1 *= x ** a
            term2 *= x ** b
        return term1 - term2

    def to_json(self) -> dict:
        return {
            "pair": [self.pair[0] + 1, self.pair[1] + 1],
            "c1": self.c1,
            "exponent1": list(self.exponent1),
            "c2": self.c2,
            "exponent2": list(self.exponent2),
            "text": str(self.expression()),
        }

@dataclass(frozen=True)
class BinomialSystem:
    binomials: tuple[Binomial, ...]

    def __len__(self) -> int:
        return len(self.binomials)

    def __iter__(self):
        return iter(self.binomials)

    def evaluate(self, x: Sequence) -> tuple:
        return tuple(b.evaluate(x) for b in self.binomials)

    def to_json(self) -> list:
        return [b.to_json() for b in self.binomials]

@dataclass(frozen=True)
class ConditionThreeData:
    """
    Exponent differences and coefficient ratios of the block pairs.

    Attributes:
        delta (IntegerMatrix): s×P, column p = y_first - y_second of pair p.
        ratios (tuple[Fraction, ...]): r_p = b_first / b_second > 0.
        U (IntegerMatrix): P×u saturated basis of ker(Δ).
        pairs (tuple[tuple[int, int], ...]): The (first, second) monomial indices.
    """
    delta: IntegerMatrix
    ratios: tuple[Fraction, ...]
    U: IntegerMatrix
    pairs: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "rank": rank(self.delta) if self.delta.ncols else 0,
            "ratios": list(self.ratios),
            "U": self.U,
            "pairs": [[i + 1, j + 1] for i, j in self.pairs],
        }

def normalize_basis_vector(vector: Sequence[Fraction]) -> tuple[Fraction, ...]:
    ints = primitive_vector(vector)
    lead = next(v for v in ints if v != 0)
    sign = 1 if lead > 0 else -1
    return tuple(Fraction(sign * v) for v in ints)

def _proportional_classes(rows: list[tuple[Fraction, ...]]) -> list[tuple[int, ...]]:
    """
    Group nonzero rows of a kernel basis matrix into classes of proportional rows.

    Row i and row i' are proportional exactly when every kernel vector that
    vanishes at i' vanishes at i, i.e. rank{K_i, K_i'} = rank{K_i'}.
    """
    classes: dict[tuple[Fraction, ...], list[int]] = {}
    for i, row in enumerate(rows):
        lead = next(v for v in row if v != 0)
        key = tuple(v / lead for v in row)
        classes.setdefault(key, []).append(i)
    return sorted((tuple(members) for members in classes.values()), key=lambda block: block[0])

def find_certificate(
    sigma: RationalMatrix,
    exponents: Sequence[Sequence[int]] = (),
) -> ToricCertificate | Condition1Failure:
    """
    Decide whether ker(Σ) has a basis with disjoint supports covering all columns.

    The partition, when it exists, is the unique finest one: the blocks are the
    classes of proportional rows of any kernel basis matrix.

    Args:
        sigma (RationalMatrix): s'×m' coefficient matrix.
        exponents (Sequence[Sequence[int]]): Exponent vectors of the m' monomials;
            needed later for binomials and Condition 3.

    Returns:
        ToricCertificate | Condition1Failure: The certificate, or the reason none exists.
    """
    m = sigma.ncols
    if exponents and len(exponents) != m:
        raise DimensionError(f"{len(exponents)} exponent vectors for {m} columns of Σ")
    exponents = tuple(tuple(int(v) for v in y) for y in exponents)
    kernel = kernel_basis(sigma)
    d = len(kernel)
    rows = [tuple(vec[i] for vec in kernel) for i in range(m)]

    for i, row in enumerate(rows):
        if all(v == 0 for v in row):
            logger.debug(f"Condition 1 fails: coordinate {i + 1} vanishes on ker(Σ)")
            return Condition1Failure("zero_coordinate", coordinate=i)

    classes = _proportional_classes(rows)
    if len(classes) != d:
        logger.debug(f"Condition 1 fails: {len(classes)} blocks for a {d}-dimensional kernel")
        return Condition1Failure("block_count", dimension=len(classes))

    basis_matrix = RationalMatrix(rows, ncols=d) if d else RationalMatrix.zeros(m, 0)
    vectors = []
    for block in classes:
        outside = [i for i in range(m) if i not in block]
        restricted = basis_matrix.submatrix(rows=outside)
        coefficients = kernel_basis(restricted) if outside else [tuple(Fraction(int(k == 0)) for k in range(d))]
        if len(coefficients) != 1:
            return Condition1Failure("block_dimension", block=block, dimension=len(coefficients))
        vector = basis_matrix.matvec(coefficients[0])
        if tuple(i for i, v in enumerate(vector) if v != 0) != block:
            return Condition1Failure("block_dimension", block=block, dimension=1)
        vectors.append(normalize_basis_vector(vector))

    certificate = ToricCertificate(blocks=tuple(classes), basis=tuple(vectors), exponents=exponents)
    certificate.validate(sigma)
    logger.debug(f"Condition 1 holds with partition {certificate.partition()}")
    return certificate

def certificate_from_partition(
    sigma: RationalMatrix,
    exponents: Sequence[Sequence[int]],
    blocks: Sequence[Sequence[int]],
) -> ToricCertificate:
    """
    Build the certificate for a given partition (0-based blocks).

    Raises:
        ConditionError: If some block does not carry exactly one kernel direction
            of full support, or the blocks do not partition the columns.
    """
    m = sigma.ncols
    ordered = sorted((tuple(sorted(block)) for block in blocks), key=lambda block: block[0])
    if sorted(i for block in ordered for i in block) != list(range(m)):
        raise ConditionError(f"Blocks do not partition the {m} monomials")
    vectors = []
    for block in ordered:
        restricted = sigma.submatrix(cols=block)
        kernel = kernel_basis(restricted)
        if len(kernel) != 1 or any(v == 0 for v in kernel[0]):
            raise ConditionError(f"Block {[i + 1 for i in block]} does not carry a single kernel vector of full support")
        vector = [Fraction(0)] * m
        for i, v in zip(block, kernel[0]):
            vector[i] = v
        vectors.append(normalize_basis_vector(vector))
    certificate = ToricCertificate(
        blocks=tuple(ordered),
        basis=tuple(vectors),
        exponents=tuple(tuple(int(v) for v in y) for y in exponents),
    )
    try:
        certificate.validate(sigma)
    except InvariantViolation as e:
        raise ConditionError(str(e)) from e
    return certificate

def check_condition2(cert: ToricCertificate) -> bool:
    """True iff every basis vector has all its nonzero entries of one sign."""
    return sign_obstruction(cert) is None

def sign_obstruction(cert: ToricCertificate) -> SignObstruction | None:
    """First pair of opposite-sign coefficients within a block, if any."""
    for block, vector in zip(cert.blocks, cert.basis):
        first = block[0]
        for other in block[1:]:
            if (vector[first] > 0) != (vector[other] > 0):
                return SignObstruction(block, first, other, vector[first], vector[other])
    return None

def check_condition2_determinant(sigma: RationalMatrix, cert: ToricCertificate) -> bool:
    """
    Condition 2 through maximal minors of Σ restricted to each block.

    For a block of size l the restricted matrix has rank l - 1; with Σ_j a choice
    of l - 1 independent rows, the kernel vector is proportional to
    ((-1)^i det Σ_j(i))_i, where Σ_j(i) drops column i. Its entries share a sign
    iff consecutive determinants alternate in sign.

    Raises:
        InvariantViolation: If a block does not have rank l - 1.
    """
    for block in cert.blocks:
        size = len(block)
        if size == 1:
            continue
        restricted = sigma.submatrix(cols=block)
        _, pivot_rows, r = rref(restricted.T)
        if r != size - 1:
            raise InvariantViolation(f"Σ restricted to block {[i + 1 for i in block]} has rank {r}, expected {size - 1}")
        square_rows = restricted.submatrix(rows=pivot_rows[: size - 1])
        dets = [det_bareiss(square_rows.delete(cols=[i])) for i in range(size)]
        if any(v == 0 for v in dets):
            raise InvariantViolation(f"Vanishing maximal minor on block {[i + 1 for i in block]}")
        if any((dets[i] > 0) == (dets[i + 1] > 0) for i in range(size - 1)):
            return False
    return True

def block_pairs(cert: ToricCertificate) -> list[tuple[int, int]]:
    """(first, other) for every block: the smallest index against each other member."""
    return [(block[0], other) for block in cert.blocks for other in block[1:]]

def binomial_generators(cert: ToricCertificate) -> BinomialSystem:
    """
    Binomials b_first·x^{y_other} - b_other·x^{y_first} for every block pair.

    Raises:
        ConditionError: If the certificate carries no exponent vectors.
    """
    if not cert.exponents:
        raise ConditionError("Certificate has no exponent vectors; binomials need the monomials of Σ")
    binomials = []
    for block, vector in zip(cert.blocks, cert.basis):
        first = block[0]
        for other in block[1:]:
            binomials.append(Binomial(
                c1=vector[first],
                exponent1=cert.exponents[other],
                c2=vector[other],
                exponent2=cert.exponents[first],
                pair=(first, other),
            ))
    return BinomialSystem(tuple(binomials))

def build_condition3(cert: ToricCertificate) -> ConditionThreeData:
    """
    Δ, the ratios b_first/b_other and the integer kernel U of Δ.

    Raises:
        ConditionError: If Condition 2 fails (a ratio would be negative) or the
            certificate carries no exponent vectors.
    """
    obstruction = sign_obstruction(cert)
    if obstruction is not None:
        raise ConditionError("Condition 2 fails; coefficient ratios are not all positive")
    if not cert.exponents:
        raise ConditionError("Certificate has no exponent vectors")
    s = len(cert.exponents[0])
    pairs = block_pairs(cert)
    columns = [
        tuple(a - b for a, b in zip(cert.exponents[first], cert.exponents[other]))
        for first, other in pairs
    ]
    delta = IntegerMatrix.from_columns(columns, nrows=s) if columns else IntegerMatrix.zeros(s, 0)
    ratios = tuple(cert.basis[cert.block_of(first)][first] / cert.basis[cert.block_of(first)][other] for first, other in pairs)
    U = integer_kernel(delta) if columns else IntegerMatrix.zeros(0, 0)
    return ConditionThreeData(delta=delta, ratios=ratios, U=U, pairs=tuple(pairs))

def check_condition3(data: ConditionThreeData) -> bool:
    """True iff ∏_p r_p^{u_p} = 1 for every column u of U."""
    for column in data.U.columns():
        product = Fraction(1)
        for ratio, power in zip(data.ratios, column):
            if power:
                product *= ratio ** power
        if product != 1:
            logger.debug(f"Condition 3 fails on lattice vector {column}: product {product}")
            return False
    return True
