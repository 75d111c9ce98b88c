"""
Error Types Module

Exception hierarchy shared by the library and the command-line runner,
plus the mapping from exceptions to process exit codes.
"""
from typing import Optional


EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CAPACITY = 3
EXIT_ORACLE_MISMATCH = 4


class WiringError(Exception):
    """Base class for every error raised by this package."""


class DataValidationError(WiringError, ValueError):
    """
    Raised when user-supplied data violates the data model.

    Args:
        message (str): Human readable diagnostic
        kind (str): Short machine tag, e.g. "range", "contradictory", "format"
        row (Optional[int]): Index of the first offending row, when known
    """

    def __init__(self, message: str, kind: str = "invalid", row: Optional[int] = None):
        super().__init__(message)
        self.kind = kind
        self.row = row


class DimensionError(DataValidationError):
    """Two points (or a point and a FieldSpec) disagree on the number of variables."""

    def __init__(self, message: str, row: Optional[int] = None):
        super().__init__(message, kind="dimension", row=row)


class InputParseError(DataValidationError):
    """A data file could not be parsed; carries the line number when available."""

    def __init__(self, message: str, line: Optional[int] = None, kind: str = "parse"):
        location = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{location}", kind=kind)
        self.line = line


class EmptyMonomialError(WiringError, ValueError):
    """A generator was requested for two identical inputs."""


class UnitIdealError(WiringError, ValueError):
    """The ideal contains the empty monomial, i.e. it is the whole ring."""


class DiagonalUndefinedError(WiringError, ValueError):
    """Diagonals need at least two input points."""


class ConfigurationError(WiringError, ValueError):
    """An environment or command-line setting is out of range."""


class InvariantError(WiringError):
    """An internal consistency check failed."""


class CapacityError(WiringError):
    """
    Raised when an exact enumeration would exceed its configured bound.

    Args:
        message (str): What was refused
        requested (int): Size of the enumeration that was asked for
        bound (int): The configured cap
    """

    def __init__(self, message: str, requested: int, bound: int):
        super().__init__(f"{message}: {requested} exceeds the cap of {bound}")
        self.requested = requested
        self.bound = bound


class OracleMismatchError(WiringError):
    """The algebraic pipeline and the brute-force oracle disagree."""


def exit_code_for(exc: BaseException) -> int:
    """Map an exception raised by a command to the CLI exit code."""
    # pydantic wraps validator failures in its own ValidationError (a ValueError)
    if isinstance(exc, CapacityError):
        return EXIT_CAPACITY
    if isinstance(exc, OracleMismatchError):
        return EXIT_ORACLE_MISMATCH
    if isinstance(exc, (DataValidationError, ValueError)):
        return EXIT_VALIDATION
    return 1
