"""
Error types raised across the antibunch package.
"""
import warnings
from typing import Optional


class AntibunchError(Exception):
    """Base class for every error raised by the package."""


class UnitConversionError(AntibunchError, ValueError):
    """SI input that cannot be expressed in natural units."""


class DomainError(AntibunchError, ValueError):
    """Argument outside the domain of a distribution or special function."""


class ConfigError(AntibunchError, ValueError):
    """Unusable parameter or scan file."""

    def __init__(self, message: str, schema_hint: str = ""):
        super().__init__(message)
        self.schema_hint = schema_hint

    def __str__(self) -> str:
        base = super().__str__()
        return f"{base} (hint: {self.schema_hint})" if self.schema_hint else base


class ConvergenceError(AntibunchError, RuntimeError):
    """Quadrature stopped before reaching its tolerance."""

    def __init__(self, message: str, best_estimate: Optional[complex] = None, abs_error: float = float("nan")):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.abs_error = abs_error


class SymmetryError(AntibunchError, RuntimeError):
    """The k1 <-> k2 exchange left an imaginary part above tolerance."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class ApproximationWarning(UserWarning):
    """An asymptotic formula is evaluated outside its validity range."""


def warn_approximation(message: str, collected: Optional[list] = None, stacklevel: int = 3) -> None:
    """Emits an ApproximationWarning and records the message in `collected`."""
    warnings.warn(message, ApproximationWarning, stacklevel=stacklevel)
    if collected is not None and message not in collected:
        collected.append(message)
