"""
Exception hierarchy shared by all bequiv apps.

The management commands translate these into exit codes:
validation-type errors exit 2, numerical failures exit 1 and
infeasible sample-size requests exit 3.
"""


class EquivalenceError(Exception):
    """Base class for every error raised by the toolkit."""


class DomainError(EquivalenceError, ValueError):
    """An argument lies outside the domain of the operation."""


class InsufficientDataError(DomainError):
    """Fewer observations than the inference requires."""


class ParseError(EquivalenceError, ValueError):
    """
    Malformed PK input.

    Attributes:
        row: 1-based data row number (0 for header problems, None when the
            error concerns the file as a whole).
    """

    def __init__(self, message, row=None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class NumericalError(EquivalenceError, ArithmeticError):
    """
    A quadrature or root finder did not reach its tolerance.

    Attributes:
        achieved_tolerance: error estimate reported by the routine, if any.
        residuals: residuals of the equations being solved, if any.
    """

    def __init__(self, message, achieved_tolerance=None, residuals=None):
        self.achieved_tolerance = achieved_tolerance
        self.residuals = residuals
        super().__init__(message)


class InfeasibleError(EquivalenceError):
    """The request cannot be satisfied (e.g. no sample size reaches the target power)."""


class ConfigurationError(EquivalenceError, ValueError):
    """Unknown procedure, coverage method or other configuration identifier."""
