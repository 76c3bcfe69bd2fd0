"""Exception types shared across the package."""


class QOrthoError(Exception):
    """Base class for all package-specific errors."""


class DomainError(QOrthoError):
    """An argument violates a documented precondition or invariant."""


class TruncationExceeded(QOrthoError):
    """A series or product hit its term cap before the tail bound triggered."""


class DivergentSeries(QOrthoError):
    """Series terms grew for too many consecutive indices to be summable."""


class NearSingular(QOrthoError):
    """A denominator product is too close to zero for a trustworthy quotient."""
