"""Exception hierarchy shared by all modules."""


class VdwGrapheneError(Exception):
    pass


class ConfigurationError(VdwGrapheneError, ValueError):
    """Inconsistent or unknown configuration."""


class DomainError(VdwGrapheneError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class NotFoundError(VdwGrapheneError, LookupError):
    """Unknown catalog entry."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ValidationError(VdwGrapheneError, ValueError):
    """Input data that cannot be processed (empty grids, wrong signs, ...)."""


class ConvergenceError(VdwGrapheneError, RuntimeError):
    """Numerical procedure stopped before reaching its tolerance.

    Attributes
    ----------
    estimate : float
        Best value available when the procedure stopped.
    achieved : float
        Estimated relative error of ``estimate``.
    """

    def __init__(self, message, estimate=float("nan"), achieved=float("inf")):
        super().__init__(message)
        self.estimate = estimate
        self.achieved = achieved


class OutsideValidityWarning(UserWarning):
    """Separation outside the range where the boundary-condition description holds."""
