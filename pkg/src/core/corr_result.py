"""
Correlation Result Module

A uniform container for every correlator output: the value, the method that
produced it, its quadrature error estimate and evaluation diagnostics.
"""

from typing import Any, Dict, List, Optional
from dataclasses import dataclass, field
import json

from src.core.errors import DomainError
from src.core.params import CorrMethod


SANITY_BAND = (0.45, 1.05)


@dataclass
class CorrResult:
    """
    One correlator value.

    `value` is either a normalized C (dimensionless) or a dimensioned
    intermediate (rho1, I). `normalized` holds the lambda-independent value
    when the intermediate scales with the coupling. `meta` carries
    diagnostics such as node counts, the imaginary residual of I or the
    Bessel scaling; `warnings` lists approximation-validity problems.
    """
    value: float
    method: CorrMethod
    abs_error: float = 0.0
    normalized: Optional[float] = None
    meta: Dict[str, Any] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.abs_error >= 0:
            raise DomainError(f"abs_error must be non-negative, got {self.abs_error}")

    def in_sanity_band(self) -> bool:
        """Fermion C is expected inside [0.45, 1.05] on valid far-field input."""
        low, high = SANITY_BAND
        return low <= self.value <= high

    @property
    def rel_error(self) -> float:
        return self.abs_error / abs(self.value) if self.value else float("inf")

    def to_dict(self) -> dict:
        """Convert to dictionary"""
        return {
            'value': self.value,
            'method': self.method.value,
            'abs_error': self.abs_error,
            'normalized': self.normalized,
            'meta': self.meta,
            'warnings': list(self.warnings),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, default=str)

    def summary(self) -> str:
        """
        Get a human-readable summary of the result.

        Returns:
            str: Summary text
        """
        lines = [f"{self.method.value}: {self.value:.12g} (+/- {self.abs_error:.3g})"]
        for key, val in self.meta.items():
            lines.append(f"  - {key}: {val}")
        for message in self.warnings:
            lines.append(f"  ! {message}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"CorrResult(value={self.value:.12g}, method={self.method.value}, abs_error={self.abs_error:.3g})"
