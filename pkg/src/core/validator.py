"""
Parameter File Validation Module
Handles file system checks and the content checks a run needs before any
quadrature starts.
"""
import os
from typing import List, Optional

from src.core.detector import UnitDetector, UnitSystem
from src.core.errors import AntibunchError

LOOSE_REL_TOL = 1e-2


class ValidationResult:
    """Outcome of a config check: blocking errors plus non-blocking warnings."""
    def __init__(self, is_valid: bool, errors: List[str], file_path: str, warnings: Optional[List[str]] = None):
        self.is_valid = is_valid
        self.errors = errors
        self.file_path = file_path
        self.warnings = warnings or []

    def __repr__(self):
        return f"<ValidationResult valid={self.is_valid} errors={len(self.errors)} warnings={len(self.warnings)}>"


class FileValidator:
    """File-level checks for parameter files: a readable, nonempty JSON file of sane size."""

    MAX_CONFIG_BYTES = 1024 * 1024
    EXTENSIONS = ('.json',)

    @staticmethod
    def validate(file_path: str) -> ValidationResult:
        if not os.path.exists(file_path):
            return ValidationResult(False, [f"Config not found: {file_path}"], file_path)
        if not os.path.isfile(file_path):
            return ValidationResult(False, [f"Config path is not a file: {file_path}"], file_path)

        errors = []
        size = os.path.getsize(file_path)
        if size == 0:
            errors.append(f"Config file is empty: {file_path}")
        elif size > FileValidator.MAX_CONFIG_BYTES:
            errors.append(f"Config file too large ({size} bytes); parameter files stay under 1 MiB.")
        if os.path.splitext(file_path)[1].lower() not in FileValidator.EXTENSIONS:
            errors.append(f"Config must be a JSON file: {file_path}")
        if not os.access(file_path, os.R_OK):
            errors.append(f"Config is not readable: {file_path}")
        return ValidationResult(not errors, errors, file_path)


class ConfigValidator:
    """Validates parameter and scan files: structure, units, value ranges."""

    @staticmethod
    def validate(file_path: str) -> ValidationResult:
        """
        Runs the file checks, then parses the file.

        Out-of-range values and malformed blocks are errors; far-field
        violations and loose quadrature tolerances are warnings.
        """
        result = FileValidator.validate(file_path)
        if not result.is_valid:
            return result

        ok, message = UnitDetector.validate_structure(file_path)
        if not ok:
            return ValidationResult(False, [message], file_path)

        units = UnitDetector.detect(file_path)
        if units == UnitSystem.UNKNOWN:
            return ValidationResult(False, ["Unknown unit system. Use \"natural\" or \"SI\"."], file_path)

        # imported here: the parsers depend on src.core
        from src.parsers.parser_factory import create_parser

        try:
            parsed = create_parser(units).parse(file_path)
        except (AntibunchError, ValueError, KeyError, TypeError) as e:
            return ValidationResult(False, [str(e)], file_path)

        warnings = list(parsed.warnings)
        if parsed.geometry is not None:
            warnings.extend(parsed.geometry.far_field_flags(parsed.src, parsed.det))
        if parsed.quad is not None and parsed.quad.rel_tol >= LOOSE_REL_TOL:
            warnings.append(f"loose quadrature tolerance rel_tol = {parsed.quad.rel_tol:g}")
        if not parsed.beam.well_monochromatized:
            warnings.append("beam is not well monochromatized")
        if parsed.scan is not None and parsed.scan.size == 0:
            warnings.append("scan grid is empty")
        return ValidationResult(True, [], file_path, warnings)
