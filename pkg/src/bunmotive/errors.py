"""Exception types raised across the package."""

from .poly import NotAUnit


class NonConvergent(ArithmeticError):
    """An element is outside the subring where the counting measure is defined."""


class DivisionByZero(ZeroDivisionError):
    """A realization sends a denominator factor to zero."""


class DivergentSpecialValue(ValueError):
    """Zeta special value requested at u = L^-d with d <= 1."""


class InvalidType(ValueError):
    """Unknown or malformed Dynkin type / group spec."""


class LimitExceeded(RuntimeError):
    """An enumeration would exceed its configured size limit."""


class NotDominant(ValueError):
    """A cocharacter pairs negatively with some simple root."""


class DegTooSmall(ValueError):
    """Divisor degree too small for the matrix-divisor sum."""


class CurveSpecError(ValueError):
    """Malformed curve specification."""


class ConfigError(ValueError):
    """Invalid verification-suite configuration."""


__all__ = [
    "NotAUnit",
    "NonConvergent",
    "DivisionByZero",
    "DivergentSpecialValue",
    "InvalidType",
    "LimitExceeded",
    "NotDominant",
    "DegTooSmall",
    "CurveSpecError",
    "ConfigError",
]
