"""
Exception hierarchy for the toolkit.

Every error carries the CLI exit code it maps to. Input errors derive from
ValueError so callers catching builtins keep working.
"""

from typing import Optional


class QwsError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 2


class GraphParseError(QwsError, ValueError):
    """Malformed graph JSON or rational string."""


class GraphValidationError(QwsError, ValueError):
    """Structurally invalid graph (index range, duplicate edge, disconnected...)."""


class ModeError(QwsError, ValueError):
    """Operation not defined for the graph's weight mode or terminal layout."""


class LibraryError(QwsError, ValueError):
    """Block library could not be assembled."""


class MixedRadicalError(QwsError, ArithmeticError):
    """Exact arithmetic across two different quadratic fields."""


class ResourceLimitError(QwsError, RuntimeError):
    """Enumeration exceeded a configured size limit."""

    exit_code = 4


class DegenerateError(QwsError, ArithmeticError):
    """A closed-form denominator vanished (bound state at the operating energy)."""

    exit_code = 3


class CalibrationError(QwsError, RuntimeError):
    """Oracle and closed form disagree in modulus during sign calibration."""

    exit_code = 3


class SingularityError(QwsError, ArithmeticError):
    """Every oracle formulation was singular at the requested momentum."""

    exit_code = 3

    def __init__(self, message: str, eigenvalue: Optional[float] = None):
        super().__init__(message)
        self.eigenvalue = eigenvalue
