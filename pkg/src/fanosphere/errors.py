"""Exception types shared across the package."""


class FanosphereError(Exception):
    """Base class for package errors."""


class ValidationError(FanosphereError, ValueError):
    """Invalid argument or configuration value."""


class GeometryError(ValidationError):
    """Emitter placed inside the sphere or otherwise invalid geometry."""


class ConvergenceError(FanosphereError, RuntimeError):
    """A quadrature, recurrence or root bracket failed to converge.

    Carries the best available residual estimate in ``residual``.
    """

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class FitConvergenceError(ConvergenceError):
    """Least-squares fit did not converge; ``best`` holds the last iterate."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class DegenerateWindowError(ValidationError):
    """Fit window does not contain an interior maximum."""
