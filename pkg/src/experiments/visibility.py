"""
Visibility of the antibunching dip in real experiments.

The depth of the dip at z1 = z2 = z factorizes into

    1/2 * lateral * longitudinal
    lateral      = 1 / (1 + 2 a^2 w^2 k0^2 / z^2)
    longitudinal = 1 / sqrt(1 + 4 dk_z^2 d^2)

with dk_z = 1 / (2 l_coh) and d = l_det, so the longitudinal factor
is 1 / sqrt(1 + (l_det / l_coh)^2).
"""
import json
import math
from dataclasses import dataclass, field
from typing import Dict, Optional

from src.experiments.presets import ExperimentPreset


def lateral_factor(preset: ExperimentPreset) -> float:
    """1 / [1 + a^2 w^2 k0^2 (1/z^2 + 1/z^2)]."""
    x = 2.0 * (preset.a * preset.w * preset.k0 / preset.z) ** 2
    return 1.0 / (1.0 + x)


def longitudinal_factor(preset: ExperimentPreset) -> float:
    """1 / sqrt(1 + 4 dk_z^2 d^2) with dk_z = 1/(2 l_coh) and d = l_det."""
    scales = preset.coherence_lengths
    dk_z = 1.0 / (2.0 * scales.coh)
    return 1.0 / math.sqrt(1.0 + 4.0 * dk_z ** 2 * scales.det ** 2)


@dataclass
class DipReport:
    """Computed and quoted visibility factors of one experiment."""
    name: str
    lateral: float
    longitudinal: float
    depth: float
    coherence_length: float
    detector_length: float
    quoted: Dict[str, float] = field(default_factory=dict)
    notes: str = ""

    @property
    def quoted_depth(self) -> Optional[float]:
        if "depth" in self.quoted:
            return self.quoted["depth"]
        if "lateral" in self.quoted and "longitudinal" in self.quoted:
            return 0.5 * self.quoted["lateral"] * self.quoted["longitudinal"]
        return None

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'lateral': self.lateral,
            'longitudinal': self.longitudinal,
            'depth': self.depth,
            'coherence_length_m': self.coherence_length,
            'detector_length_m': self.detector_length,
            'quoted': dict(self.quoted),
            'quoted_depth': self.quoted_depth,
            'notes': self.notes,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def summary(self) -> str:
        """
        Get a human-readable summary of the report.

        Returns:
            str: Summary text
        """
        def quoted(key):
            return f" (quoted {self.quoted[key]:.3g})" if key in self.quoted else ""

        lines = [
            f"Experiment: {self.name}",
            f"  - Lateral factor: {self.lateral:.4g}{quoted('lateral')}",
            f"  - Longitudinal factor: {self.longitudinal:.4g}{quoted('longitudinal')}",
            f"  - Dip depth: {self.depth:.4g}",
        ]
        if self.quoted_depth is not None:
            lines.append(f"  - Dip depth from quoted factors: {self.quoted_depth:.3g}")
        lines.append(f"  - Coherence / detector length: {self.coherence_length:.3g} m / {self.detector_length:.3g} m")
        if self.notes:
            lines.append(f"  - Notes: {self.notes}")
        return "\n".join(lines)


def dip_report(preset: ExperimentPreset) -> DipReport:
    """Depth 1/2 * lateral * longitudinal with the factor breakdown."""
    lateral = lateral_factor(preset)
    longitudinal = longitudinal_factor(preset)
    scales = preset.coherence_lengths
    return DipReport(
        name=preset.name,
        lateral=lateral,
        longitudinal=longitudinal,
        depth=0.5 * lateral * longitudinal,
        coherence_length=scales.coh,
        detector_length=scales.det,
        quoted=dict(preset.quoted),
        notes=preset.notes,
    )
