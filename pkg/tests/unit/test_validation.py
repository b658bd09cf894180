"""
Test Suite for the Validation Suite

Runs the cross-checks on the shipped validation configs and on
deliberately broken inputs.
"""

import unittest
import json
import os
import sys

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

from src.core.params import CorrMethod
from src.parsers.parser_factory import parse_file
from src.scans.validation import (CheckResult, ValidationReport, check_analytic_floor, check_consistency_corrections,
                                  check_mirror, check_reduction_identity, flat_band_setup, run_validation,
                                  _base_setup)
from src.numerics.quadrature import QuadSpec

CONFIG_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), '../../config/scans'))
DATA_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), '../data'))


class TestValidationSuite(unittest.TestCase):
    """Test cases for run_validation"""

    @classmethod
    def setUpClass(cls):
        cls.fermion = run_validation(parse_file(os.path.join(CONFIG_DIR, 'validate.json')))
        cls.boson = run_validation(parse_file(os.path.join(CONFIG_DIR, 'validate_boson.json')))

    def test_fermion_config_passes(self):
        """Every check passes on the fermion config"""
        self.assertTrue(self.fermion.passed, msg=self.fermion.summary())
        names = [check.name for check in self.fermion.checks]
        for name in ("gauss_floor", "method_agreement", "temperature_invariance", "temperature_narrowing"):
            self.assertIn(name, names)

    def test_boson_config_passes(self):
        """Bosons skip the fermion-only checks and pass the rest"""
        self.assertTrue(self.boson.passed, msg=self.boson.summary())
        names = [check.name for check in self.boson.checks]
        self.assertNotIn("method_agreement", names)
        self.assertIn("temperature_invariance", names)

    def test_report_serialization(self):
        """Reports render as JSON and as text"""
        data = json.loads(self.fermion.to_json())
        self.assertTrue(data["passed"])
        self.assertEqual(len(data["checks"]), len(self.fermion.checks))
        self.assertIn("checks passed", self.fermion.summary())


class TestSingleChecks(unittest.TestCase):
    """Test cases for individual checks"""

    def setUp(self):
        self.parsed = parse_file(os.path.join(CONFIG_DIR, 'validate.json'))
        self.setup = _base_setup(self.parsed)
        self.spec = QuadSpec.for_method(CorrMethod.GAUSSIAN_APPROX)

    def test_identity_checks(self):
        """Closed-form identities hold to rounding"""
        for check in (check_analytic_floor, check_reduction_identity, check_mirror, check_consistency_corrections):
            result = check(self.setup, self.spec)
            self.assertTrue(result.passed, msg=result.detail)

    def test_flat_band_setup(self):
        """The flat band puts the Fermi level above the window"""
        flat = flat_band_setup(self.setup, self.spec)
        top = self.setup.beam.k0 + self.spec.k_window_sigmas * self.setup.beam.dk_z
        self.assertGreater(flat.src.mu, flat.src.omega(top))

    def test_file_tolerance_only_warns(self):
        """A loose tolerance in the file does not change the checks"""
        parsed = parse_file(os.path.join(DATA_DIR, 'loose_tolerance.json'))
        report = run_validation(parsed, extra_warnings=["loose quadrature tolerance rel_tol = 1"])
        self.assertIn("loose quadrature tolerance rel_tol = 1", report.warnings)
        gauss_floor = next(check for check in report.checks if check.name == "gauss_floor")
        self.assertTrue(gauss_floor.passed)

    def test_failures_listed(self):
        """Failed checks are collected"""
        report = ValidationReport("x", [CheckResult("a", True), CheckResult("b", False, "off")])
        self.assertFalse(report.passed)
        self.assertEqual([check.name for check in report.failures], ["b"])


if __name__ == '__main__':
    unittest.main()
