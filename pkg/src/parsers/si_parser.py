"""
SI Parser Module

Parses parameter files in SI units and converts them to natural units.
"""

from typing import Any, Dict

from scipy.constants import Boltzmann, electron_volt

from src.core.errors import ConfigError
from src.core.parsed_data import ParsedConfig
from src.core.units import SIParameters, energy_unit, to_natural
from src.experiments.presets import PARTICLE_MASSES
from src.parsers.base_parser import BaseParser


class SIParser(BaseParser):
    """
    Parser for parameter files in SI units.

    Features:
    - Lengths in m, wavenumbers in 1/m, mass in kg (or a particle name)
    - beta in 1/J, or temperature_K instead
    - mu in J, or mu_eV instead
    - Scan grids in the same units, rescaled along with the source and detector lengths
    """

    units = "si"

    def parse_data(self, data: Dict[str, Any], source_file: str = "<dict>") -> ParsedConfig:
        source = self._block(data, "source")
        beam = self._block(data, "beam")
        det = self._block(data, "detector", required=False)

        mass = self._mass(source)
        beta = self._beta(source)
        mu = float(source["mu_eV"]) * electron_volt if "mu_eV" in source else float(source.get("mu", 0.0))
        try:
            si = SIParameters(
                w=float(source["w"]),
                w_z=float(source.get("w_z", 0.0)),
                beta=beta,
                mu=mu,
                mass=mass,
                k0=float(beam["k0"]),
                dk_perp=float(beam["dk_perp"]),
                dk_z=float(beam["dk_z"]),
                a=float(det.get("a", 0.0)),
                d=float(det.get("d", 0.0)),
                statistics=source.get("statistics", "fermion"),
                coupling=float(source.get("coupling", 1.0)),
            )
        except KeyError as e:
            raise ConfigError(f"missing SI input {e}", schema_hint="source {w, beta|temperature_K, mass|particle}, beam {k0, dk_perp, dk_z}")

        src, nbeam, ndet, _ = to_natural(si)
        scan = self._scan(data.get("scan"))
        if scan is not None:
            scan = scan.rescaled(si.w, energy_unit(si.w, mass))
        return ParsedConfig(
            source_file=source_file,
            units=self.units,
            src=src,
            beam=nbeam,
            det=ndet,
            geometry=self._geometry(data.get("geometry"), scale=si.w),
            scan=scan,
            quad=self._quad(data.get("quadrature")),
            method=self._method(data),
            length_unit_m=si.w,
        )

    @staticmethod
    def _mass(source: Dict[str, Any]) -> float:
        if "mass" in source:
            return float(source["mass"])
        particle = source.get("particle")
        if PARTICLE_MASSES.get(particle) is None:
            raise ConfigError(f"SI source needs 'mass' or a massive particle, got {particle!r}",
                              schema_hint='"particle": "electron" or "neutron"')
        return PARTICLE_MASSES[particle]

    @staticmethod
    def _beta(source: Dict[str, Any]) -> float:
        if "beta" in source:
            return float(source["beta"])
        if "temperature_K" in source:
            temperature = float(source["temperature_K"])
            if not temperature > 0:
                raise ConfigError(f"temperature_K must be positive, got {temperature}")
            return 1.0 / (Boltzmann * temperature)
        raise ConfigError("SI source needs 'beta' or 'temperature_K'")
