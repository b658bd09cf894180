"""
Beam Profile Tables

Far-field amplitude against tilt angle, plus the angular widths and the
radial-integral checks for every momentum of the scan.
"""
import json
from dataclasses import dataclass, field
from itertools import product
from typing import List, Optional, Tuple

import pandas as pd

from src.core.errors import ConfigError
from src.core.parsed_data import ParsedConfig
from src.beam.beam_profile import angular_width, extrapolated_radial_amplitude, farfield_amplitude
from src.dists.form_factors import Vec3
from src.scans.runner import run_ordered

PROFILE_COLUMNS = ["k", "r", "tilt", "amplitude_abs", "relative_intensity"]
DEFAULT_TILTS = (0.0,)


@dataclass
class BeamProfileReport:
    """Profile table, angular widths per k and radial checks per (k, r)."""
    table: pd.DataFrame
    widths: List[dict] = field(default_factory=list)
    checks: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check["passed"] for check in self.checks)

    def to_dict(self) -> dict:
        return {
            'profile': self.table.to_dict(orient="records"),
            'angular_widths': list(self.widths),
            'radial_checks': list(self.checks),
            'passed': self.passed,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, default=str)


def _profile_rows(task: Tuple) -> List[dict]:
    parsed, k, r, tilts = task
    kv = Vec3.axis(k)
    peak = abs(farfield_amplitude(kv, Vec3.axis(1.0), r, parsed.src, parsed.beam)) ** 2
    rows = []
    for tilt in tilts:
        amp = abs(farfield_amplitude(kv, Vec3.from_spherical(1.0, tilt), r, parsed.src, parsed.beam))
        rows.append({"k": k, "r": r, "tilt": tilt, "amplitude_abs": amp,
                     "relative_intensity": amp ** 2 / peak if peak > 0 else 0.0})
    return rows


def _radial_check(task: Tuple) -> dict:
    parsed, k, r = task
    check = extrapolated_radial_amplitude(Vec3.axis(k), Vec3.axis(1.0), r, parsed.src, parsed.beam)
    return dict(check.to_dict(), k=k, r=r)


def _axes(parsed: ParsedConfig) -> Tuple[Tuple[float, ...], Tuple[float, ...], Tuple[float, ...]]:
    scan = parsed.scan
    if scan is None or scan.kind != "beam_profile":
        raise ConfigError("beam profile needs a 'scan' block of kind beam_profile",
                          schema_hint='"scan": {"kind": "beam_profile", "k": [20], "r": [200], "tilt": {...}}')
    return scan.axis("k", (parsed.beam.k0,)), scan.axis("r"), scan.axis("tilt", DEFAULT_TILTS)


def beam_profile_table(parsed: ParsedConfig, threads: Optional[int] = None) -> pd.DataFrame:
    """|phi|^2 relative to the on-axis value, ordered k -> r -> tilt."""
    ks, rs, tilts = _axes(parsed)
    tasks = [(parsed, k, r, tilts) for k, r in product(ks, rs)]
    rows = [row for chunk in run_ordered(_profile_rows, tasks, threads) for row in chunk]
    return pd.DataFrame(rows, columns=PROFILE_COLUMNS)


def beam_profile_report(parsed: ParsedConfig, check: bool = False, threads: Optional[int] = None) -> BeamProfileReport:
    """
    Profile table plus angular widths; with `check` the eta-extrapolated
    radial integral is compared with the far field at every (k, r).
    """
    ks, rs, _ = _axes(parsed)
    table = beam_profile_table(parsed, threads)
    widths = []
    for k in ks:
        width = angular_width(k, parsed.src, parsed.beam)
        widths.append({"k": k, "closed_form": width.closed_form, "numeric": width.numeric})
    checks = run_ordered(_radial_check, [(parsed, k, r) for k, r in product(ks, rs)], threads) if check else []
    return BeamProfileReport(table, widths, checks)
