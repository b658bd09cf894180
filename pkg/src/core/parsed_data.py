"""
Parsed Configuration Module

Provides a unified structure for a parsed parameter or scan file: the
natural-unit specs, the scan grid, the quadrature settings and the method.
"""

from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
from dataclasses import dataclass, field
import json

import numpy as np

from src.core.errors import ConfigError
from src.core.params import BeamSpec, CorrMethod, DetectorSpec, Geometry, SourceSpec
from src.numerics.quadrature import QuadSpec


SCAN_KINDS = ("collinear", "offaxis", "symmetric", "beam_profile")
SWEEP_NAMES = ("d", "a", "beta")
LENGTH_AXES = ("z1", "z2", "r1", "r2", "x", "y", "z", "r")
WAVENUMBER_AXES = ("k",)


def grid_values(spec: Union[float, int, Sequence[float], Dict[str, Any]], name: str = "grid") -> Tuple[float, ...]:
    """
    Expand a grid description into its values.

    Accepts a scalar, a list of values or {"start", "stop", "num"}.
    """
    if isinstance(spec, dict):
        try:
            num = int(spec["num"])
            values = np.linspace(float(spec["start"]), float(spec["stop"]), num) if num > 0 else []
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"bad grid '{name}': {e}", schema_hint='{"start": x0, "stop": x1, "num": n}')
        return tuple(float(v) for v in values)
    if isinstance(spec, (list, tuple)):
        return tuple(float(v) for v in spec)
    if isinstance(spec, (int, float)):
        return (float(spec),)
    raise ConfigError(f"bad grid '{name}': {spec!r}", schema_hint="scalar, list or {start, stop, num}")


@dataclass(frozen=True)
class ScanSpec:
    """
    Scan grid: named axes plus an optional parameter sweep.

    Axis and sweep values are in natural units once a parser returns them.
    """
    kind: str
    axes: Dict[str, Tuple[float, ...]] = field(default_factory=dict)
    sweep_name: Optional[str] = None
    sweep_values: Tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in SCAN_KINDS:
            raise ConfigError(f"unknown scan kind '{self.kind}'", schema_hint=f"one of {', '.join(SCAN_KINDS)}")
        if self.sweep_name is not None and self.sweep_name not in SWEEP_NAMES:
            raise ConfigError(f"unknown sweep '{self.sweep_name}'", schema_hint=f"one of {', '.join(SWEEP_NAMES)}")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ScanSpec":
        data = dict(data)
        kind = data.pop("kind", "collinear")
        sweep = data.pop("sweep", None)
        axes = {name: grid_values(spec, name) for name, spec in data.items()}
        if sweep is None:
            return cls(kind, axes)
        if not isinstance(sweep, dict) or "name" not in sweep:
            raise ConfigError("sweep needs a name", schema_hint='{"name": "d", "values": [0, 1, 2]}')
        return cls(kind, axes, sweep["name"], grid_values(sweep.get("values", []), "sweep"))

    def axis(self, name: str, default: Optional[Tuple[float, ...]] = None) -> Tuple[float, ...]:
        if name in self.axes:
            return self.axes[name]
        if default is not None:
            return default
        raise ConfigError(f"{self.kind} scan needs the axis '{name}'")

    def rescaled(self, length: float, energy: float) -> "ScanSpec":
        """Axes and sweep values divided by the length and energy units."""
        def scale(name: str, values: Tuple[float, ...]) -> Tuple[float, ...]:
            if name in LENGTH_AXES or name in ("a", "d"):
                return tuple(v / length for v in values)
            if name in WAVENUMBER_AXES:
                return tuple(v * length for v in values)
            if name == "beta":
                return tuple(v * energy for v in values)
            return values

        axes = {name: scale(name, values) for name, values in self.axes.items()}
        sweep = scale(self.sweep_name, self.sweep_values) if self.sweep_name else ()
        return ScanSpec(self.kind, axes, self.sweep_name, sweep)

    @property
    def size(self) -> int:
        count = int(np.prod([len(v) for v in self.axes.values()])) if self.axes else 0
        return count * max(1, len(self.sweep_values)) if self.sweep_name else count

    def to_dict(self) -> dict:
        return {
            'kind': self.kind,
            'axes': {k: list(v) for k, v in self.axes.items()},
            'sweep': {'name': self.sweep_name, 'values': list(self.sweep_values)} if self.sweep_name else None,
        }


@dataclass
class ParsedConfig:
    """
    Parameter file after parsing and unit conversion.

    Stores:
    - Source, beam and detector specs in natural units
    - Optional geometry and scan grid
    - Quadrature settings and evaluation method
    """
    source_file: str
    units: str
    src: SourceSpec
    beam: BeamSpec
    det: DetectorSpec
    geometry: Optional[Geometry] = None
    scan: Optional[ScanSpec] = None
    quad: Optional[QuadSpec] = None
    method: CorrMethod = CorrMethod.ANALYTIC
    length_unit_m: Optional[float] = None
    warnings: List[str] = field(default_factory=list)

    def quad_spec(self) -> QuadSpec:
        return self.quad or QuadSpec.for_method(self.method)

    def to_dict(self) -> dict:
        """Convert to dictionary"""
        return {
            'source_file': self.source_file,
            'units': self.units,
            'source': {'w': self.src.w, 'w_z': self.src.w_z, 'beta': self.src.beta, 'mu': self.src.mu,
                       'mass': self.src.mass, 'statistics': self.src.statistics.value,
                       'coupling': self.src.coupling},
            'beam': {'k0': self.beam.k0, 'dk_perp': self.beam.dk_perp, 'dk_z': self.beam.dk_z},
            'detector': {'a': self.det.a, 'd': self.det.d},
            'geometry': None if self.geometry is None else {'type': type(self.geometry).__name__,
                                                            **self.geometry.__dict__},
            'scan': None if self.scan is None else self.scan.to_dict(),
            'method': self.method.value,
            'length_unit_m': self.length_unit_m,
            'warnings': list(self.warnings),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, default=str)

    def summary(self) -> str:
        """
        Get a human-readable summary of the parsed configuration.

        Returns:
            str: Summary text
        """
        lines = [
            f"Source: {self.source_file} ({self.units} units)",
            f"  - Source: w={self.src.w:g} w_z={self.src.w_z:g} beta={self.src.beta:g} mu={self.src.mu:g} "
            f"({self.src.statistics.value})",
            f"  - Beam: k0={self.beam.k0:g} dk_perp={self.beam.dk_perp:g} dk_z={self.beam.dk_z:g}",
            f"  - Detector: a={self.det.a:g} d={self.det.d:g}",
            f"  - Method: {self.method.value}",
        ]
        if self.scan is not None:
            lines.append(f"  - Scan: {self.scan.kind}, {self.scan.size} points")
        for message in self.warnings:
            lines.append(f"  ! {message}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"ParsedConfig(source='{self.source_file}', units={self.units}, method={self.method.value})"
