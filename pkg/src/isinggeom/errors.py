"""Exception types raised by the library."""


class IsingGeomError(Exception):
    """Base class for all library errors."""


class DomainError(IsingGeomError, ValueError):
    """A parameter lies outside its allowed range."""


class SizeError(IsingGeomError, ValueError):
    """The requested system is too large for the full Hilbert-space oracle."""


class SingularityError(IsingGeomError, ValueError):
    """Evaluation at a point where the quantity is undefined (theta = 0 or pi)."""


class StepError(IsingGeomError, ValueError):
    """Invalid finite-difference step, or a stencil that leaves the domain."""


class ConvergenceError(IsingGeomError, RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


class UndefinedPhaseError(IsingGeomError, ValueError):
    """The overlap vanishes, so its argument is undefined."""

    def __init__(self, message, crossings=()):
        super().__init__(message)
        self.crossings = tuple(crossings)


class PoleError(IsingGeomError, ZeroDivisionError):
    """A rational expression is evaluated at its pole."""


class CoordinateSingularityError(IsingGeomError, ValueError):
    """The concurrence chart degenerates at this point."""


class NonPhysicalError(IsingGeomError, ValueError):
    """A matrix is not a valid density matrix."""
