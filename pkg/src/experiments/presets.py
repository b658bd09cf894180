"""
Experiment Preset Loader

Loads the experiment parameter sets shipped as JSON under config/presets
into ExperimentPreset objects.
"""
import os
import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from scipy.constants import c as speed_of_light, hbar, m_e, m_n

from src.core.errors import ConfigError, DomainError
from src.core.params import Statistics

PARTICLE_MASSES = {"electron": m_e, "neutron": m_n, "photon": None}


@dataclass(frozen=True)
class CoherenceScale:
    """Coherence and detector scales, either as times (s) or lengths (m)."""
    kind: str
    coh: float
    det: float

    def __post_init__(self):
        if self.kind not in ("time", "length"):
            raise DomainError(f"coherence kind must be 'time' or 'length', got '{self.kind}'")
        if not (self.coh > 0 and self.det >= 0):
            raise DomainError(f"coherence scales must be positive, got coh={self.coh}, det={self.det}")

    def lengths(self, velocity: float) -> "CoherenceScale":
        """The same scales as lengths, converting times with the beam velocity."""
        if self.kind == "length":
            return self
        return CoherenceScale("length", self.coh * velocity, self.det * velocity)


@dataclass(frozen=True)
class ExperimentPreset:
    """One experiment: detector mouth a, window w, wavenumber k0, distance z (SI)."""
    name: str
    particle: str
    statistics: Statistics
    a: float
    w: float
    k0: float
    z: float
    coherence: CoherenceScale
    quoted: Dict[str, float] = field(default_factory=dict)
    notes: str = ""

    def __post_init__(self):
        object.__setattr__(self, "statistics", Statistics.parse(self.statistics))
        if self.particle not in PARTICLE_MASSES:
            raise DomainError(f"unknown particle '{self.particle}'. Use one of {sorted(PARTICLE_MASSES)}")
        for label in ("a", "w", "k0", "z"):
            if not getattr(self, label) > 0:
                raise DomainError(f"preset '{self.name}': {label} must be positive")

    @property
    def mass(self) -> Optional[float]:
        return PARTICLE_MASSES[self.particle]

    @property
    def velocity(self) -> float:
        """Group velocity hbar k0 / m, or c for photons."""
        if self.mass is None:
            return speed_of_light
        return hbar * self.k0 / self.mass

    @property
    def coherence_lengths(self) -> CoherenceScale:
        return self.coherence.lengths(self.velocity)

    def with_(self, **changes) -> "ExperimentPreset":
        data = {k: getattr(self, k) for k in self.__dataclass_fields__}
        data.update(changes)
        return ExperimentPreset(**data)

    @classmethod
    def from_dict(cls, data: Dict) -> "ExperimentPreset":
        try:
            coherence = CoherenceScale(**data["coherence"])
            return cls(
                name=data["name"],
                particle=data.get("particle", "electron"),
                statistics=data.get("statistics", "fermion"),
                a=float(data["a"]),
                w=float(data["w"]),
                k0=float(data["k0"]),
                z=float(data["z"]),
                coherence=coherence,
                quoted={k: float(v) for k, v in data.get("quoted", {}).items()},
                notes=data.get("notes", ""),
            )
        except (KeyError, TypeError) as e:
            raise ConfigError(f"incomplete preset: {e}",
                              schema_hint="name, a, w, k0, z and coherence {kind, coh, det} are required")

    def __repr__(self):
        return f"<ExperimentPreset name='{self.name}' particle={self.particle} a={self.a:g} w={self.w:g}>"


class PresetLoader:
    """Loads experiment presets from JSON files, one file per preset."""

    def __init__(self, presets_dir: Optional[str] = None):
        if presets_dir is None:
            root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
            presets_dir = os.path.join(root, "config", "presets")
        self.presets_dir = presets_dir

    def available(self) -> List[str]:
        """Names of the presets found in the presets directory."""
        if not os.path.isdir(self.presets_dir):
            return []
        return sorted(os.path.splitext(f)[0] for f in os.listdir(self.presets_dir) if f.endswith(".json"))

    def load(self, name: str) -> ExperimentPreset:
        """
        Loads the preset with the given name.

        Raises:
            KeyError: If no such preset exists; the message lists the known ones
            ConfigError: If the file is not valid JSON or misses fields
        """
        path = os.path.join(self.presets_dir, f"{name.lower()}.json")
        if not os.path.exists(path):
            raise KeyError(f"Unknown preset '{name}'. Available: {', '.join(self.available())}")

        with open(path, "r", encoding="utf-8") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigError(f"Invalid JSON in {path}: {e}")
        return ExperimentPreset.from_dict(data)

    def load_all(self) -> List[ExperimentPreset]:
        return [self.load(name) for name in self.available()]
