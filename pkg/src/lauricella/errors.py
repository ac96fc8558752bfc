"""Exception hierarchy."""


class LauricellaError(Exception):
    """Base class for every error raised by this package."""

    def __init__(self, message, location=None, detail=None):
        super().__init__(message)
        self.location = location
        self.detail = detail

    def to_json(self):
        return {
            "error": type(self).__name__ + ": " + str(self),
            "location": self.location,
            "detail": self.detail,
        }


class DomainError(LauricellaError, ValueError):
    """Input outside the region where an operation is defined."""


class PoleError(DomainError):
    """Evaluation at a pole (Gamma function, Pochhammer denominator)."""


class SingularMatrixError(LauricellaError, ArithmeticError):
    """A matrix that must be inverted is singular at the given point."""


class DeterminantMismatch(LauricellaError, AssertionError):
    """Computed determinant disagrees with its closed form.

    This signals an internal bug, never bad input.
    """


class BranchError(LauricellaError):
    """Branch tracking lost continuity or failed a monodromy check."""
