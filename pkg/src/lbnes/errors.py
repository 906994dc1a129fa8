"""Exception hierarchy.

Input problems derive from :class:`ValidationError` (a ``ValueError``);
numerical breakdowns derive from :class:`NumericalError`. The CLI maps the
first family to exit status 1 and the second to exit status 2.
"""


class ValidationError(ValueError):
    """Rejected input. ``path`` locates the offending field when known."""

    def __init__(self, message, path=None):
        self.path = path
        self.rule = message
        if path:
            message = f"{path} {message}" if not message.startswith(path) else message
        super().__init__(message)


class AssumptionViolation(ValidationError):
    """Input breaks a structural assumption of the method (e.g. distinct frequencies)."""


class NumericalError(ArithmeticError):
    """Base class for failures of a numerical stage."""

    stage = "numerics"


class SingularMatrixError(NumericalError):
    """Raised by the direct solver when a pivot is (near) zero."""

    stage = "linear solve"

    def __init__(self, message, pivot_stage=None):
        self.pivot_stage = pivot_stage
        super().__init__(message)


class StabilityPreconditionError(NumericalError):
    """The error matrix is not Hurwitz, so no positive definite Lyapunov pair exists."""

    stage = "lyapunov"


class DivergenceError(NumericalError):
    """Integration produced a non-finite state."""

    stage = "integration"

    def __init__(self, message, time=None, multiplier=None):
        self.time = time
        self.multiplier = multiplier
        super().__init__(message)


class FrequencyOverflowError(ValidationError, OverflowError):
    """Frequency-plan integers exceed the signed 64-bit range."""
