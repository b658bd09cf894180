"""
Unit System Detection Module
Identifies the unit system of a parameter file from its "units" annotation.
"""
import os
import json
from enum import Enum
from typing import Tuple

class UnitSystem(Enum):
    NATURAL = "natural"
    SI = "si"
    UNKNOWN = "unknown"

    @classmethod
    def parse(cls, name) -> "UnitSystem":
        if isinstance(name, UnitSystem):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            return cls.UNKNOWN

class UnitDetector:
    """Detects the unit system and basic structure of parameter files."""

    @staticmethod
    def detect(file_path: str) -> UnitSystem:
        """Reads the top-level "units" key; a missing key means natural units."""
        _, ext = os.path.splitext(file_path)
        if ext.lower() != '.json':
            return UnitSystem.UNKNOWN
        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError):
            return UnitSystem.UNKNOWN
        if not isinstance(data, dict):
            return UnitSystem.UNKNOWN
        return UnitSystem.parse(data.get("units", "natural"))

    @staticmethod
    def validate_structure(file_path: str) -> Tuple[bool, str]:
        """Checks that the file holds a JSON object with source and beam blocks."""
        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except Exception as e:
            return False, str(e)
        if not isinstance(data, dict):
            return False, "Parameter file must be a JSON object."
        missing = [block for block in ("source", "beam") if not isinstance(data.get(block), dict)]
        if missing:
            return False, f"Missing block(s): {', '.join(missing)}"
        return True, ""
