"""
Error hierarchy.

Every error carries a `detail` message and the process `exit_code` the command line
reports when the error escapes a command. Engines raise these directly; nothing
below the CLI entrypoint prints or exits.

Contents:
- GPTError: base class.
- UsageError: bad arguments or unknown names supplied by the user (exit 2).
- ValidationError and subclasses: malformed or inconsistent input (exit 3).
- BudgetExceededError: a search or builder ran past its configured budget (exit 4).
"""

from typing import Optional

from src.constants import EXIT_BUDGET, EXIT_USAGE, EXIT_VALIDATION


class GPTError(Exception):
    exit_code = EXIT_VALIDATION

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class UsageError(GPTError):
    exit_code = EXIT_USAGE


class ValidationError(GPTError):
    exit_code = EXIT_VALIDATION


class LayoutError(ValidationError):
    """Vector or matrix dimension does not match the measurement layout."""


class InvalidStateError(ValidationError):
    pass


class InvalidEffectError(ValidationError):
    pass


class InvalidTransformError(ValidationError):
    pass


class TheoryValidationError(ValidationError):
    """The V-rep, H-rep, measurements or declared N of a theory disagree."""


class UnknownTheoryError(ValidationError):
    pass


class PreconditionError(ValidationError):
    pass


class WeightError(ValidationError):
    pass


class GaugeError(ValidationError):
    pass


class UnsupportedError(ValidationError):
    pass


class ParseError(ValidationError):
    """
    Theory-file syntax or schema error.

    Attributes:
        line (Optional[int]): 1-based line of the offending token, when known.
        column (Optional[int]): 1-based column of the offending token, when known.
    """

    def __init__(self, detail: str, line: Optional[int] = None, column: Optional[int] = None):
        if line is not None:
            detail = f"{detail} (line {line}, column {column})"
        super().__init__(detail)
        self.line = line
        self.column = column


class BudgetExceededError(GPTError):
    exit_code = EXIT_BUDGET
