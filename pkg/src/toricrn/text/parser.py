"""Reading and writing `.crn` network files and `.rates` files.

Network file, one reaction (or reversible pair) per line:

    # comment
    species: S0, S1, E            (optional, pins the species order)
    S0 + E -> ES0 ; kon0
    2A <-> A + B ; kf, kb         (forward, then backward)

Rate file, one assignment per line:

    kon0 = 3/2
    koff0 = 0.25

Typical usage example:
    net = parse_network(Path("phos1.crn").read_text(), name="phos1.crn")
    rates = parse_rates(Path("phos1.rates").read_text(), name="phos1.rates")
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from ..core.errors import CRNError, ParseError, RateError
from ..core.logger import get_logger
from ..network.model import RateAssignment, Reaction, ReactionNetwork

logger = get_logger(__name__)

TOKEN_RE = re.compile(
    r"(?P<arrow><->|->)"
    r"|(?P<number>\d+\.\d*|\.\d+|\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[+;,:=/-])"
    r"|(?P<space>\s+)"
    r"|(?P<other>.)"
)
RATE_VALUE_RE = re.compile(r"^(?:(?P<num>\d+)\s*/\s*(?P<den>\d+)|(?P<decimal>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))$")
RATE_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

@dataclass(frozen=True)
class SourceDocument:
    """
    Text of a network or rate file.

    Attributes:
        text (str): Raw file content.
        name (str): Label used in error messages, usually the file name.
    """
    text: str
    name: str = "<input>"

    def lines(self) -> Iterator[tuple[int, str]]:
        """Yield (1-based line number, content with comment removed); blank lines are skipped."""
        for number, line in enumerate(self.text.splitlines(), start=1):
            content = line.split("#", 1)[0]
            if content.strip():
                yield number, content

@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int

def _tokenize(doc: SourceDocument, line_no: int, content: str) -> list[Token]:
    tokens = []
    for match in TOKEN_RE.finditer(content):
        kind = match.lastgroup
        if kind == "space":
            continue
        token = Token(kind, match.group(), match.start() + 1)
        if kind == "other":
            raise ParseError(f"unexpected character '{token.text}'", line_no, token.column, doc.name)
        tokens.append(token)
    return tokens

class _LineParser:
    """Recursive-descent parser for one reaction line."""

    def __init__(self, doc: SourceDocument, line_no: int, tokens: list[Token]):
        self.doc = doc
        self.line_no = line_no
        self.tokens = tokens
        self.pos = 0

    def error(self, message: str, token: Token | None = None) -> ParseError:
        if token is None:
            token = self.peek()
        column = token.column if token is not None else (self.tokens[-1].column + len(self.tokens[-1].text) if self.tokens else 1)
        return ParseError(message, self.line_no, column, self.doc.name)

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> Token:
        token = self.peek()
        if token is None:
            raise self.error("unexpected end of line")
        self.pos += 1
        return token

    def expect(self, kind: str, text: str | None = None) -> Token:
        token = self.peek()
        if token is None or token.kind != kind or (text is not None and token.text != text):
            wanted = f"'{text}'" if text else kind
            found = f"'{token.text}'" if token else "end of line"
            raise self.error(f"expected {wanted}, found {found}")
        self.pos += 1
        return token

    def term(self) -> tuple[str, int]:
        token = self.take()
        coefficient = 1
        if token.kind == "punct" and token.text == "-":
            raise self.error("negative stoichiometric coefficient", token)
        if token.kind == "number":
            if not token.text.isdigit():
                raise self.error(f"non-integer stoichiometric coefficient '{token.text}'", token)
            coefficient = int(token.text)
            if coefficient == 0:
                raise self.error("stoichiometric coefficient must be positive", token)
            token = self.take()
        if token.kind != "name":
            raise self.error(f"expected species name, found '{token.text}'", token)
        return token.text, coefficient

    def complex(self) -> dict[str, int]:
        terms: dict[str, int] = {}
        while True:
            name, coefficient = self.term()
            terms[name] = terms.get(name, 0) + coefficient
            token = self.peek()
            if token is None or not (token.kind == "punct" and token.text == "+"):
                return terms
            self.pos += 1

    def reaction_line(self) -> tuple[dict[str, int], str, dict[str, int], list[Token], Token]:
        left = self.complex()
        arrow = self.peek()
        if arrow is None or arrow.kind != "arrow":
            raise self.error("expected '->' or '<->'")
        self.pos += 1
        right = self.complex()
        self.expect("punct", ";")
        names = [self.expect("name")]
        while self.peek() is not None:
            self.expect("punct", ",")
            names.append(self.expect("name"))
        wanted = 2 if arrow.text == "<->" else 1
        if len(names) != wanted:
            raise self.error(f"'{arrow.text}' needs {wanted} rate name(s), found {len(names)}", names[0])
        return left, arrow.text, right, names, arrow

def _species_header(doc: SourceDocument, line_no: int, tokens: list[Token]) -> list[str] | None:
    if len(tokens) < 2 or tokens[0].kind != "name" or tokens[0].text != "species" or tokens[1].text != ":":
        return None
    names = []
    for token in tokens[2:]:
        if token.kind == "punct" and token.text == ",":
            continue
        if token.kind != "name":
            raise ParseError(f"expected species name, found '{token.text}'", line_no, token.column, doc.name)
        if token.text in names:
            raise ParseError(f"species '{token.text}' listed twice", line_no, token.column, doc.name)
        names.append(token.text)
    return names

def parse_network(doc: SourceDocument | str, name: str = "<input>") -> ReactionNetwork:
    """
    Parse a `.crn` document into a ReactionNetwork.

    Complexes are numbered in order of first appearance; `<->` expands to the
    forward reaction followed by the backward one. Species follow the
    `species:` header when present, otherwise their first appearance.

    Args:
        doc (SourceDocument | str): The document or its text.
        name (str): Label for error messages when `doc` is a string.

    Returns:
        ReactionNetwork: The parsed network.

    Raises:
        ParseError: On a syntax error, an invalid coefficient, a repeated rate
            name or a self-loop, with line and column.
    """
    if isinstance(doc, str):
        doc = SourceDocument(doc, name)

    header: list[str] | None = None
    seen_species: list[str] = []
    complex_keys: list[tuple[tuple[str, int], ...]] = []
    complex_index: dict[tuple[tuple[str, int], ...], int] = {}
    reactions: list[Reaction] = []
    rate_names: set[str] = set()
    first_use: dict[str, tuple[int, int]] = {}

    def intern(terms: dict[str, int]) -> int:
        key = tuple(sorted(terms.items()))
        if key not in complex_index:
            complex_index[key] = len(complex_keys)
            complex_keys.append(key)
        return complex_index[key]

    for line_no, content in doc.lines():
        tokens = _tokenize(doc, line_no, content)
        names = _species_header(doc, line_no, tokens)
        if names is not None:
            if header is not None or reactions:
                raise ParseError("species header must come first and only once", line_no, tokens[0].column, doc.name)
            header = names
            continue

        left, arrow, right, rate_tokens, arrow_token = _LineParser(doc, line_no, tokens).reaction_line()
        for terms, column in ((left, tokens[0].column), (right, arrow_token.column)):
            for species in terms:
                if species not in seen_species:
                    seen_species.append(species)
                    first_use[species] = (line_no, column)
        educt, product = intern(left), intern(right)
        if educt == product:
            raise ParseError("reaction from a complex to itself", line_no, arrow_token.column, doc.name)
        pairs = [(educt, product)] if arrow == "->" else [(educt, product), (product, educt)]
        for (i, j), token in zip(pairs, rate_tokens):
            if token.text in rate_names:
                raise ParseError(f"duplicate rate name '{token.text}'", line_no, token.column, doc.name)
            rate_names.add(token.text)
            reactions.append(Reaction(i, j, token.text))

    if header is not None:
        for species in seen_species:
            if species not in header:
                line_no, column = first_use[species]
                raise ParseError(f"species '{species}' is missing from the species header", line_no, column, doc.name)
        unused = [species for species in header if species not in seen_species]
        if unused:
            raise ParseError(f"species {', '.join(unused)} listed in the header but used in no reaction", source=doc.name)
        species_order = header
    else:
        species_order = seen_species

    position = {species: i for i, species in enumerate(species_order)}
    complexes = []
    for key in complex_keys:
        vec = [0] * len(species_order)
        for species, coefficient in key:
            vec[position[species]] = coefficient
        complexes.append(tuple(vec))

    try:
        net = ReactionNetwork(species=tuple(species_order), complexes=tuple(complexes), reactions=tuple(reactions))
    except CRNError as e:
        raise ParseError(str(e), source=doc.name) from e
    logger.debug(f"Parsed {doc.name}: s={net.s}, m={net.m}, r={net.r}")
    return net

def parse_rates(doc: SourceDocument | str, name: str = "<input>") -> RateAssignment:
    """
    Parse a `.rates` document: lines "name = p/q" or "name = decimal".

    Decimals are converted exactly (0.25 -> 1/4).

    Raises:
        ParseError: On unknown syntax, a repeated name, or a value that is not
            strictly positive.
    """
    if isinstance(doc, str):
        doc = SourceDocument(doc, name)
    values: dict[str, Fraction] = {}
    for line_no, content in doc.lines():
        if "=" not in content:
            raise ParseError("expected 'name = value'", line_no, len(content) - len(content.lstrip()) + 1, doc.name)
        key, raw = content.split("=", 1)
        key_column = len(key) - len(key.lstrip()) + 1
        value_column = len(key) + 2 + (len(raw) - len(raw.lstrip()))
        key, raw = key.strip(), raw.strip()
        if not RATE_NAME_RE.match(key):
            raise ParseError(f"invalid rate name '{key}'", line_no, key_column, doc.name)
        if key in values:
            raise ParseError(f"duplicate rate name '{key}'", line_no, key_column, doc.name)
        if raw.startswith("-"):
            raise ParseError("rate must be positive", line_no, value_column, doc.name)
        match = RATE_VALUE_RE.match(raw)
        if not match:
            raise ParseError(f"cannot read rate value '{raw}'", line_no, value_column, doc.name)
        if match.group("decimal") is not None:
            value = Fraction(match.group("decimal"))
        else:
            denominator = int(match.group("den"))
            if denominator == 0:
                raise ParseError("zero denominator", line_no, value_column, doc.name)
            value = Fraction(int(match.group("num")), denominator)
        if value <= 0:
            raise ParseError("rate must be positive", line_no, value_column, doc.name)
        values[key] = value
    try:
        return RateAssignment(values)
    except RateError as e:
        raise ParseError(str(e), source=doc.name) from e

def render_network(net: ReactionNetwork) -> str:
    """
    Serialize a network to the `.crn` format.

    A species header pins the species order. A reaction directly followed by
    its reverse is written as one `<->` line.
    """
    lines = [f"species: {', '.join(net.species)}"]
    reactions = net.reactions
    i = 0
    while i < len(reactions):
        reaction = reactions[i]
        left, right = net.complex_label(reaction.educt), net.complex_label(reaction.product)
        following = reactions[i + 1] if i + 1 < len(reactions) else None
        if following is not None and (following.educt, following.product) == (reaction.product, reaction.educt):
            lines.append(f"{left} <-> {right} ; {reaction.rate}, {following.rate}")
            i += 2
        else:
            lines.append(f"{left} -> {right} ; {reaction.rate}")
            i += 1
    return "\n".join(lines) + "\n"

def render_rates(rates: RateAssignment) -> str:
    """Serialize rate constants as "name = p/q" lines, in insertion order."""
    return "".join(f"{name} = {value}\n" for name, value in rates.values.items())
