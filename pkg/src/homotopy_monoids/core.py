"""
Core types, constants and error kinds shared by every module.
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, field_validator
from sympy import isprime

# Defaults, overridable from [tool.homotopy-monoids] in pyproject.toml
DEFAULT_MAXDIM = 4
DEFAULT_LETTERS = 3
DEFAULT_SEED = 7
DEFAULT_TRIALS = 10000
DENSE_THRESHOLD = 64

PROJECT_TABLE = "homotopy-monoids"


class Coefficients(str, Enum):
    """Coefficient ring kind for homology"""

    Z = "Z"
    Q = "Q"
    FP = "Fp"


class OutputFormat(str, Enum):
    """Output format of reports"""

    TEXT = "text"
    LINES = "lines"
    JSON = "json"


class Construction(str, Enum):
    """Targets of the homology command"""

    NERVE = "nerve"
    FAT_NERVE = "fatnerve"
    EM = "em"
    BAR = "bar"
    HOCOLIM = "hocolim"
    WBAR = "wbar"
    JAMES = "james"
    SUSPENSION = "suspension"


class Mode(str, Enum):
    """Which W-construction a tuple lives in"""

    SEMIGROUP = "wbar"
    MONOID = "w"


class Suite(str, Enum):
    """Named verification suites"""

    W_LAWS = "w-laws"
    W_HOMOLOGY = "w-homology"
    MOORE = "moore"
    ZETA = "zeta"
    JAMES = "james"
    GRPCOMP = "grpcomp"
    HOCOLIM = "hocolim"
    BAR_DELTA = "bar-delta"
    ALL = "all"


class HomotopyError(Exception):
    """Base class for every error raised by this package"""


class RangeError(HomotopyError, ValueError):
    """A degree, dimension or bound lies outside the admissible range"""


class PreconditionError(HomotopyError):
    """An operation was called on input violating its precondition"""


class TableError(HomotopyError, ValueError):
    """A multiplication/composition table or diagram fails its laws"""


class FormatParseError(HomotopyError):
    """Malformed text input, positioned at the offending line and column"""

    def __init__(self, message: str, source: str = "<input>", line: int = 0, column: int = 0):
        self.message = message
        self.source = source
        self.line = line
        self.column = column
        super().__init__(f"{source}:{line}:{column}: {message}")


class RunConfig(BaseModel):
    """Validated settings of one CLI invocation"""

    command: str
    inputs: list[str] = Field(default_factory=list)
    maxdim: int = Field(default=DEFAULT_MAXDIM, ge=0)
    letters: int = Field(default=DEFAULT_LETTERS, ge=1)
    coeffs: Coefficients = Coefficients.Z
    prime: Optional[int] = None
    suite: Suite = Suite.ALL
    trials: int = Field(default=DEFAULT_TRIALS, ge=1)
    seed: int = DEFAULT_SEED
    output_format: OutputFormat = OutputFormat.TEXT
    dense_threshold: int = Field(default=DENSE_THRESHOLD, ge=0)

    @field_validator("prime")
    @classmethod
    def _prime_is_prime(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and not isprime(value):
            raise ValueError(f"{value} is not a prime")
        return value

    @classmethod
    def parse_coeffs(cls, text: str) -> tuple[Coefficients, Optional[int]]:
        """
        Split a coefficient flag: ``Z``, ``Q`` or ``F<p>`` with p prime, e.g. ``F3``.

        Args:
            text: The flag value

        Returns:
            Tuple of (kind, prime or None)
        """
        if text in ("Z", "Q"):
            return Coefficients(text), None
        if text.startswith("F"):
            digits = text[1:]
            if digits.isdigit() and isprime(int(digits)):
                return Coefficients.FP, int(digits)
        raise RangeError(f"unsupported coefficients {text!r} (use Z, Q or F<p> with p prime, e.g. F3)")


class CheckResult(BaseModel):
    """Outcome of one verification check"""

    check_id: str
    passed: bool
    details: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.check_id} {self.details}".rstrip()
