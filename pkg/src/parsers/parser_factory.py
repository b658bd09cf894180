"""
Parser Factory Module

Creates the appropriate parser based on the unit system of a file.
"""

from src.core.detector import UnitDetector, UnitSystem
from src.parsers.base_parser import BaseParser
from src.parsers.natural_parser import NaturalParser
from src.parsers.si_parser import SIParser


def create_parser(units) -> BaseParser:
    """
    Create and return the appropriate parser for the given unit system.

    Args:
        units: UnitSystem or its name ("natural", "SI")

    Returns:
        BaseParser: An instance of the appropriate parser

    Raises:
        ValueError: If the unit system is not supported
    """
    system = UnitSystem.parse(units)
    if system == UnitSystem.NATURAL:
        return NaturalParser()
    elif system == UnitSystem.SI:
        return SIParser()
    else:
        raise ValueError(f"Unsupported unit system: {units}")


def parse_file(file_path: str):
    """
    Convenience function to parse a parameter file.

    Args:
        file_path: Path to the file

    Returns:
        ParsedConfig: Parsed configuration in natural units
    """
    parser = create_parser(UnitDetector.detect(file_path))
    return parser.parse(file_path)
