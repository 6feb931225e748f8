"""Exceptions raised by toricrn.

Outcomes that are part of the mathematics (a Condition-1 failure, a network
without capacity for multistationarity) are returned as values. The classes
below are for bad input and refused preconditions.
"""

class CRNError(ValueError):
    """Base class for every toricrn error."""

class ParseError(CRNError):
    """Syntax or content error in a network or rate document."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None, source: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(self.__str__())

    def __str__(self) -> str:
        where = self.source or "<input>"
        if self.line is not None:
            where += f":{self.line}"
            if self.column is not None:
                where += f":{self.column}"
        return f"{where}: {self.message}"

class RateError(CRNError):
    """A rate constant is missing or not strictly positive."""

    def __init__(self, name: str, message: str):
        self.name = name
        super().__init__(f"rate constant '{name}': {message}")

class DimensionError(CRNError):
    """Operand shapes or vector lengths do not match."""

class ConditionError(CRNError):
    """An operation was called although one of its toric conditions is false."""

class ParametrizationError(CRNError):
    """No particular steady state could be certified."""

class DegenerateConeError(CRNError):
    """The flux cone has a coordinate that is zero on all of it."""

    def __init__(self, coordinates: list[int]):
        self.coordinates = coordinates
        listed = ", ".join(str(i + 1) for i in coordinates)
        super().__init__(
            f"flux cone is degenerate: reaction(s) {listed} carry zero flux at every steady state, "
            "so there are no positive steady states"
        )

class InvariantViolation(CRNError):
    """An internal consistency check failed; indicates a bug, not bad input."""
