"""Exception types raised across the package."""


class InvalidOrderError(ValueError):
    """Order ``n`` outside the range an operation accepts."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class SizeError(ValueError):
    """Problem too large for a dense routine without an explicit override."""


class StructureViolationError(AssertionError):
    """A structural identity that must hold exactly (or to tolerance) failed."""


class NonConvergenceError(RuntimeError):
    """An iteration hit its cap; ``history`` carries the iterates."""

    def __init__(self, message, history=()):
        super().__init__(message)
        self.history = list(history)


class PathCollisionError(RuntimeError):
    """Eigenvalue continuation could not keep two paths apart."""

    def __init__(self, message, eps):
        super().__init__(message)
        self.eps = eps
