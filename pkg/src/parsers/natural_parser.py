"""
Natural-Unit Parser Module

Parses parameter files already written in natural units (hbar = m = 1).
"""

from typing import Any, Dict

from src.core.params import BeamSpec, DetectorSpec, SourceSpec
from src.core.parsed_data import ParsedConfig
from src.parsers.base_parser import BaseParser


class NaturalParser(BaseParser):
    """Parser for parameter files in natural units; values are taken as given."""

    units = "natural"

    def parse_data(self, data: Dict[str, Any], source_file: str = "<dict>") -> ParsedConfig:
        src = self._build(SourceSpec, self._block(data, "source"), "source")
        beam = self._build(BeamSpec, self._block(data, "beam"), "beam")
        det = self._build(DetectorSpec, self._block(data, "detector", required=False), "detector")
        return ParsedConfig(
            source_file=source_file,
            units=self.units,
            src=src,
            beam=beam,
            det=det,
            geometry=self._geometry(data.get("geometry")),
            scan=self._scan(data.get("scan")),
            quad=self._quad(data.get("quadrature")),
            method=self._method(data),
        )
