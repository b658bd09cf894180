"""
SI <-> natural unit conversion.

Natural units: hbar = m = 1, lengths in units of the source window w.
The energy unit is therefore hbar^2 / (m w^2) and the wavenumber unit 1/w.
"""
from dataclasses import dataclass, replace
from typing import Optional, Tuple

from scipy.constants import hbar

from src.core.errors import UnitConversionError
from src.core.params import (
    BeamSpec, Collinear, DetectorSpec, Geometry, OffAxis, SourceSpec, Statistics, SymmetricPair,
)


@dataclass(frozen=True)
class SIParameters:
    """Physical inputs in SI: metres, 1/m, joules, 1/J, kilograms."""
    w: float
    w_z: float
    beta: float
    mu: float
    mass: float
    k0: float
    dk_perp: float
    dk_z: float
    a: float = 0.0
    d: float = 0.0
    geometry: Optional[Geometry] = None
    statistics: Statistics = Statistics.FERMION
    coupling: float = 1.0

    def with_(self, **changes) -> "SIParameters":
        return replace(self, **changes)


def energy_unit(w: float, mass: float) -> float:
    """hbar^2 / (m w^2) in joules."""
    return hbar ** 2 / (mass * w ** 2)


def _check_si(si: SIParameters) -> None:
    positive = {"w": si.w, "mass": si.mass, "beta": si.beta, "k0": si.k0,
                "dk_perp": si.dk_perp, "dk_z": si.dk_z}
    for name, value in positive.items():
        if value is None or not value > 0:
            raise UnitConversionError(f"SI input '{name}' must be positive, got {value}")
    for name, value in {"w_z": si.w_z, "a": si.a, "d": si.d}.items():
        if value is None or value < 0:
            raise UnitConversionError(f"SI input '{name}' must be non-negative, got {value}")


def _scale_geometry(geometry: Optional[Geometry], length: float) -> Optional[Geometry]:
    if geometry is None:
        return None
    if isinstance(geometry, Collinear):
        return Collinear(geometry.z1 / length, geometry.z2 / length)
    if isinstance(geometry, OffAxis):
        return OffAxis(geometry.theta_d, geometry.phi, geometry.r1 / length, geometry.r2 / length)
    if isinstance(geometry, SymmetricPair):
        return SymmetricPair(geometry.x / length, geometry.y / length, geometry.z / length)
    raise UnitConversionError(f"Unsupported geometry type: {type(geometry).__name__}")


def to_natural(si: SIParameters) -> Tuple[SourceSpec, BeamSpec, DetectorSpec, Optional[Geometry]]:
    """
    Express SI inputs in natural units.

    Args:
        si: Physical parameters in SI

    Returns:
        (SourceSpec, BeamSpec, DetectorSpec, Geometry) with w = 1 and m = 1

    Raises:
        UnitConversionError: If a required input is nonpositive
    """
    _check_si(si)
    w = si.w
    e_unit = energy_unit(w, si.mass)

    src = SourceSpec(
        w=1.0,
        w_z=si.w_z / w,
        beta=si.beta * e_unit,
        mu=si.mu / e_unit,
        mass=1.0,
        statistics=si.statistics,
        coupling=si.coupling,
    )
    beam = BeamSpec(k0=si.k0 * w, dk_perp=si.dk_perp * w, dk_z=si.dk_z * w)
    det = DetectorSpec(a=si.a / w, d=si.d / w)
    return src, beam, det, _scale_geometry(si.geometry, w)


def to_si(src: SourceSpec, beam: BeamSpec, det: DetectorSpec, geometry: Optional[Geometry],
          w_si: float, mass_si: float) -> SIParameters:
    """Inverse of `to_natural` given the physical window size and particle mass."""
    if not w_si > 0 or not mass_si > 0:
        raise UnitConversionError(f"w and mass must be positive, got {w_si}, {mass_si}")
    # natural specs may themselves carry w != 1
    length = w_si / src.w
    e_unit = energy_unit(length, mass_si)
    return SIParameters(
        w=src.w * length,
        w_z=src.w_z * length,
        beta=src.beta / e_unit,
        mu=src.mu * e_unit,
        mass=mass_si,
        k0=beam.k0 / length,
        dk_perp=beam.dk_perp / length,
        dk_z=beam.dk_z / length,
        a=det.a * length,
        d=det.d * length,
        geometry=_scale_geometry(geometry, 1.0 / length),
        statistics=src.statistics,
        coupling=src.coupling,
    )
