"""
Physical parameter types.

Internal unit system: hbar = m = 1 and lengths in units of the source
window w, so every spec produced by `to_natural` carries w = 1. All types
are frozen dataclasses; invariants are checked on construction.
"""
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Union

from src.core.errors import DomainError


class Statistics(Enum):
    FERMION = "fermion"
    BOSON = "boson"
    CLASSICAL = "classical"

    @property
    def exchange_sign(self) -> int:
        """Sign of the interference term in C = 1 + sign * I / (rho1 rho2)."""
        return {"fermion": -1, "boson": 1, "classical": 0}[self.value]

    @classmethod
    def parse(cls, name: Union[str, "Statistics"]) -> "Statistics":
        if isinstance(name, Statistics):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            raise DomainError(f"Unknown statistics '{name}'. Use fermion, boson or classical.")


class CorrMethod(Enum):
    ANALYTIC = "analytic"
    GAUSSIAN_APPROX = "gauss"
    NUMERIC = "numeric"

    @classmethod
    def parse(cls, name: Union[str, "CorrMethod"]) -> "CorrMethod":
        if isinstance(name, CorrMethod):
            return name
        aliases = {"gaussian-approx": "gauss", "gaussian_approx": "gauss", "gaussianapprox": "gauss"}
        key = aliases.get(str(name).lower(), str(name).lower())
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"Unknown method '{name}'. Use analytic, gauss or numeric.")


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


@dataclass(frozen=True)
class SourceSpec:
    """Thermal Gaussian source: window sizes, temperature, Fermi level, statistics."""
    w: float
    w_z: float
    beta: float
    mu: float
    mass: float = 1.0
    statistics: Statistics = Statistics.FERMION
    coupling: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "statistics", Statistics.parse(self.statistics))
        _require(self.w > 0, f"w must be positive, got {self.w}")
        _require(self.w_z >= 0, f"w_z must be non-negative, got {self.w_z}")
        _require(self.beta > 0, f"beta must be positive, got {self.beta}")
        _require(self.mass > 0, f"mass must be positive, got {self.mass}")
        _require(math.isfinite(self.mu), f"mu must be finite, got {self.mu}")
        _require(self.coupling > 0, f"coupling must be positive, got {self.coupling}")

    def omega(self, k):
        """Free dispersion k^2 / 2m."""
        return k * k / (2.0 * self.mass)

    @property
    def fermi_momentum(self) -> float:
        """sqrt(2 m mu), or 0 when mu <= 0."""
        return math.sqrt(2.0 * self.mass * self.mu) if self.mu > 0 else 0.0

    def with_(self, **changes) -> "SourceSpec":
        return replace(self, **changes)


@dataclass(frozen=True)
class BeamSpec:
    """Gaussian monochromator centred on k0 along +z."""
    k0: float
    dk_perp: float
    dk_z: float
    mono_ratio: float = 0.25

    def __post_init__(self):
        _require(self.k0 > 0, f"k0 must be positive, got {self.k0}")
        _require(self.dk_perp > 0, f"dk_perp must be positive, got {self.dk_perp}")
        _require(self.dk_z > 0, f"dk_z must be positive, got {self.dk_z}")
        _require(0 < self.mono_ratio <= 1, f"mono_ratio must lie in (0, 1], got {self.mono_ratio}")

    @property
    def well_monochromatized(self) -> bool:
        return self.dk_z < self.mono_ratio * self.k0

    def with_(self, **changes) -> "BeamSpec":
        return replace(self, **changes)


@dataclass(frozen=True)
class DetectorSpec:
    """Gaussian detector acceptance: lateral mouth a, longitudinal resolution d."""
    a: float = 0.0
    d: float = 0.0

    def __post_init__(self):
        _require(self.a >= 0, f"a must be non-negative, got {self.a}")
        _require(self.d >= 0, f"d must be non-negative, got {self.d}")

    def with_(self, **changes) -> "DetectorSpec":
        return replace(self, **changes)


def _far_field_messages(distance: float, src: SourceSpec, det: DetectorSpec, ratio: float) -> List[str]:
    messages = []
    for label, size in (("w", src.w), ("a", det.a), ("d", det.d)):
        if size > 0 and distance / size < ratio:
            messages.append(f"far field: distance/{label} = {distance / size:.3g} < {ratio:g}")
    return messages


@dataclass(frozen=True)
class Collinear:
    """Both detectors on the z axis."""
    z1: float
    z2: float

    def __post_init__(self):
        _require(self.z1 > 0 and self.z2 > 0, f"detector distances must be positive, got {self.z1}, {self.z2}")

    def far_field_flags(self, src: SourceSpec, det: DetectorSpec, ratio: float = 20.0) -> List[str]:
        return _far_field_messages(min(self.z1, self.z2), src, det, ratio)


@dataclass(frozen=True)
class OffAxis:
    """
    Detectors at polar angle theta_d on opposite sides of the axis, azimuths
    phi and phi + pi. phi drops out of every result and is carried unused.
    """
    theta_d: float
    phi: float
    r1: float
    r2: float

    def __post_init__(self):
        _require(self.r1 > 0 and self.r2 > 0, f"detector distances must be positive, got {self.r1}, {self.r2}")
        _require(0 <= self.theta_d < math.pi / 2, f"theta_d must lie in [0, pi/2), got {self.theta_d}")

    def far_field_flags(self, src: SourceSpec, det: DetectorSpec, ratio: float = 20.0) -> List[str]:
        return _far_field_messages(min(self.r1, self.r2), src, det, ratio)


@dataclass(frozen=True)
class SymmetricPair:
    """Detectors at (x, y, z) and (-x, -y, z)."""
    x: float
    y: float
    z: float

    def __post_init__(self):
        _require(self.z > 0, f"z must be positive, got {self.z}")

    @property
    def rbar(self) -> float:
        return math.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2)

    @property
    def theta_d(self) -> float:
        return math.atan2(math.hypot(self.x, self.y), self.z)

    def far_field_flags(self, src: SourceSpec, det: DetectorSpec, ratio: float = 20.0) -> List[str]:
        return _far_field_messages(self.rbar, src, det, ratio)


Geometry = Union[Collinear, OffAxis, SymmetricPair]

