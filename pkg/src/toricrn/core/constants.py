# toricrn/core/constants.py
from enum import Enum, IntEnum

SCHEMA_VERSION = "toric-crn/1"

class ExitCode(IntEnum):
    """
    Process exit codes of the `crn` command.

    OK:
        Toric with positive steady states, or a multistationarity witness was found
    INPUT_ERROR:
        A network, rate or Z file could not be read or parsed
    TORIC_FAILED:
        One of the toric conditions failed
    NO_CAPACITY:
        The network has no capacity for multistationarity
    DEGENERATE_CONE:
        The flux cone has a coordinate that vanishes on every ray
    """
    OK = 0
    INPUT_ERROR = 1
    TORIC_FAILED = 2
    NO_CAPACITY = 3
    DEGENERATE_CONE = 4

class Stage(str, Enum):
    """
    Stages of the toric analysis pipeline, in execution order.
    """
    MATRICES = "matrices"
    ENLARGEMENT = "enlargement"
    CONDITION1 = "cond1"
    CONDITION2 = "cond2"
    CONDITION3 = "cond3"
    BINOMIALS = "binomials"
    PARAMETRIZATION = "parametrization"

    def __str__(self):
        return self.value

class Sign(str, Enum):
    """Entry of a sign vector."""
    POSITIVE = "+"
    NEGATIVE = "-"
    ZERO = "0"

    def __str__(self):
        return self.value

    @classmethod
    def of(cls, value) -> "Sign":
        if value > 0:
            return cls.POSITIVE
        if value < 0:
            return cls.NEGATIVE
        return cls.ZERO

# Sort key inside one zero-count class of sign vectors
SIGN_ORDER = {Sign.POSITIVE: 0, Sign.NEGATIVE: 1, Sign.ZERO: 2}
