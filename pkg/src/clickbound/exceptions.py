"""Exception types shared across the package."""


class ClickboundError(Exception):
    """Base class for all package errors."""


class ValidationError(ClickboundError):
    """An input value violates a documented precondition."""


class AccuracyError(ClickboundError):
    """A quadrature failed to reach its target tolerance.

    Carries the best available estimate and the achieved residual so callers
    can decide whether to retry at higher resolution.
    """

    def __init__(self, message, estimate=None, residual=None):
        super().__init__(message)
        self.estimate = estimate
        self.residual = residual


class RangeError(ClickboundError):
    """A cached curve does not cover the requested evaluation range."""

    def __init__(self, message, required_eta_max=None):
        super().__init__(message)
        self.required_eta_max = required_eta_max


class ConsistencyError(ClickboundError):
    """A numerical identity was violated beyond roundoff tolerance."""


class MinimizationError(ClickboundError):
    """No point of the search grid produced a usable envelope value."""

    def __init__(self, message, causes=()):
        super().__init__(message)
        self.causes = list(causes)
