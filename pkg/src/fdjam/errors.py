"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "FdjamError",
    "InvalidParameterError",
    "UnsupportedRegimeError",
    "UnboundedOptimumError",
    "RegimeWarning",
]


class FdjamError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(FdjamError, ValueError):
    """An input violates a hard validity constraint (sign, range, finiteness)."""


class UnsupportedRegimeError(FdjamError, ValueError):
    """The requested closed form only holds under hypotheses the inputs violate.

    Raised instead of silently extrapolating an approximation outside the
    regime where it was derived.
    """


class UnboundedOptimumError(FdjamError, ValueError):
    """The optimum requested diverges (no finite maximizer exists)."""


class RegimeWarning(UserWarning):
    """An asymptotic result is being used with a weak margin."""
