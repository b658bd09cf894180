"""
Base Parser Abstract Class

Defines the interface that all parameter-file parsers must implement and
the block readers they share.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Optional
import json
import os

from src.core.errors import ConfigError
from src.core.params import Collinear, CorrMethod, Geometry, OffAxis, SymmetricPair
from src.core.parsed_data import ParsedConfig, ScanSpec
from src.numerics.quadrature import QuadSpec


GEOMETRY_TYPES = {
    "collinear": (Collinear, ("z1", "z2")),
    "offaxis": (OffAxis, ("theta_d", "phi", "r1", "r2")),
    "symmetric": (SymmetricPair, ("x", "y", "z")),
}


class BaseParser(ABC):
    """
    Abstract base class for parameter-file parsers.

    All parsers must implement parse_data() to turn the decoded JSON object
    into a ParsedConfig in natural units.
    """

    units: str = ""

    def parse(self, file_path: str) -> ParsedConfig:
        """
        Parse a parameter file.

        Args:
            file_path: Path to the JSON file

        Returns:
            ParsedConfig: Specs in natural units plus scan and quadrature settings

        Raises:
            FileNotFoundError: If file doesn't exist
            ConfigError: If the file is not valid JSON or misses required blocks
        """
        if not os.path.exists(file_path):
            raise FileNotFoundError(f"File not found: {file_path}")
        with open(file_path, 'r', encoding='utf-8') as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigError(f"Invalid JSON in {file_path}: {e}")
        if not isinstance(data, dict):
            raise ConfigError(f"{file_path} must hold a JSON object", schema_hint="{\"units\": ..., \"source\": {...}}")
        return self.parse_data(data, file_path)

    @abstractmethod
    def parse_data(self, data: Dict[str, Any], source_file: str = "<dict>") -> ParsedConfig:
        """
        Build a ParsedConfig from decoded JSON.

        Args:
            data: Decoded parameter file
            source_file: Name reported in results and errors

        Returns:
            ParsedConfig: Parsed configuration
        """
        pass

    @staticmethod
    def _block(data: Dict[str, Any], name: str, required: bool = True) -> Dict[str, Any]:
        block = data.get(name)
        if block is None and not required:
            return {}
        if not isinstance(block, dict):
            raise ConfigError(f"missing or malformed '{name}' block", schema_hint=f'"{name}": {{...}}')
        return dict(block)

    @staticmethod
    def _build(kind, fields: Dict[str, Any], label: str):
        try:
            return kind(**fields)
        except TypeError as e:
            raise ConfigError(f"bad '{label}' block: {e}")

    @staticmethod
    def _geometry(block: Optional[Dict[str, Any]], scale: float = 1.0) -> Optional[Geometry]:
        """Geometry from its block; lengths are divided by `scale`."""
        if not block:
            return None
        block = dict(block)
        kind = str(block.pop("type", "collinear")).lower()
        if kind not in GEOMETRY_TYPES:
            raise ConfigError(f"unknown geometry type '{kind}'", schema_hint=f"one of {', '.join(GEOMETRY_TYPES)}")
        cls, names = GEOMETRY_TYPES[kind]
        missing = [n for n in names if n not in block and n != "phi"]
        if missing:
            raise ConfigError(f"{kind} geometry misses {', '.join(missing)}")
        values = {n: float(block.get(n, 0.0)) for n in names}
        for n in names:
            if n not in ("theta_d", "phi"):
                values[n] /= scale
        return cls(**values)

    @staticmethod
    def _quad(block: Optional[Dict[str, Any]]) -> Optional[QuadSpec]:
        if not block:
            return None
        try:
            return QuadSpec(**block)
        except TypeError as e:
            raise ConfigError(f"bad 'quadrature' block: {e}")

    @staticmethod
    def _scan(block: Optional[Dict[str, Any]]) -> Optional[ScanSpec]:
        return ScanSpec.from_dict(block) if block else None

    @staticmethod
    def _method(data: Dict[str, Any]) -> CorrMethod:
        return CorrMethod.parse(data.get("method", "analytic"))
