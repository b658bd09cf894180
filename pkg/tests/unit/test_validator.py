"""
Test Suite for Config Validator Module

Tests file validation, unit detection, and the content checks run before
any quadrature.
"""

import unittest
import os
import sys
import tempfile

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

from src.core.validator import ConfigValidator, FileValidator


DATA_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), '../data'))


class TestFileValidator(unittest.TestCase):
    """Test cases for FileValidator class"""

    def check(self, path):
        return FileValidator.validate(path)

    def test_shipped_sample_accepted(self):
        """A shipped parameter file passes the file checks"""
        result = self.check(os.path.join(DATA_DIR, 'sample_natural.json'))
        self.assertTrue(result.is_valid)
        self.assertEqual(result.errors, [])

    def test_missing_config(self):
        """A missing path stops at the first check"""
        result = self.check(os.path.join(DATA_DIR, 'no_such_config.json'))
        self.assertFalse(result.is_valid)
        self.assertEqual(len(result.errors), 1)
        self.assertIn("not found", result.errors[0].lower())

    def test_directory_path(self):
        """Directories are not files"""
        result = self.check(DATA_DIR)
        self.assertFalse(result.is_valid)
        self.assertIn("not a file", result.errors[0].lower())

    def test_empty_config(self):
        """Zero-byte configs are rejected"""
        result = self.check(os.path.join(DATA_DIR, 'empty.json'))
        self.assertFalse(result.is_valid)
        self.assertIn("empty", result.errors[0].lower())

    def test_extension_and_size(self):
        """Only JSON files under the size cap pass"""
        with tempfile.TemporaryDirectory() as temp_dir:
            text_path = os.path.join(temp_dir, 'params.txt')
            with open(text_path, 'w', encoding='utf-8') as f:
                f.write('{}')
            self.assertTrue(any("json" in e.lower() for e in self.check(text_path).errors))

            big_path = os.path.join(temp_dir, 'big.json')
            with open(big_path, 'w', encoding='utf-8') as f:
                f.write(' ' * (FileValidator.MAX_CONFIG_BYTES + 1))
            self.assertTrue(any("too large" in e for e in self.check(big_path).errors))


class TestConfigValidator(unittest.TestCase):
    """Test cases for ConfigValidator class"""

    def setUp(self):
        """Set up test fixtures"""
        self.test_data_dir = os.path.abspath(os.path.join(os.path.dirname(__file__), '../data'))

    def path(self, name):
        return os.path.join(self.test_data_dir, name)

    def test_valid_configs(self):
        """Natural and SI sample files pass without warnings"""
        for name in ('sample_natural.json', 'sample_si.json'):
            result = ConfigValidator.validate(self.path(name))
            self.assertTrue(result.is_valid, msg=f"{name}: {result.errors}")
            self.assertEqual(result.warnings, [])

    def test_missing_block(self):
        """A file without a beam block is rejected"""
        result = ConfigValidator.validate(self.path('missing_beam.json'))
        self.assertFalse(result.is_valid)
        self.assertIn("beam", result.errors[0])

    def test_unknown_units(self):
        """Unknown unit systems are rejected"""
        result = ConfigValidator.validate(self.path('unknown_units.json'))
        self.assertFalse(result.is_valid)
        self.assertIn("unit system", result.errors[0].lower())

    def test_out_of_range(self):
        """Negative beta is an error"""
        result = ConfigValidator.validate(self.path('broken_block.json'))
        self.assertFalse(result.is_valid)
        self.assertIn("beta", result.errors[0])

    def test_loose_tolerance_warns(self):
        """rel_tol >= 1e-2 is a warning, not an error"""
        result = ConfigValidator.validate(self.path('loose_tolerance.json'))
        self.assertTrue(result.is_valid)
        self.assertTrue(any("tolerance" in w for w in result.warnings))

    def test_empty_grid_warns(self):
        """An empty scan grid is valid but flagged"""
        result = ConfigValidator.validate(self.path('empty_grid.json'))
        self.assertTrue(result.is_valid)
        self.assertIn("scan grid is empty", result.warnings)

    def test_far_field_warns(self):
        """Detectors close to the source are flagged"""
        with tempfile.NamedTemporaryFile('w', suffix='.json', delete=False, encoding='utf-8') as f:
            f.write('{"source": {"w": 1.0, "w_z": 0.05, "beta": 5.0, "mu": 1.0},'
                    ' "beam": {"k0": 20.0, "dk_perp": 0.5, "dk_z": 0.5},'
                    ' "geometry": {"type": "collinear", "z1": 5.0, "z2": 160.0}}')
            temp_path = f.name
        try:
            result = ConfigValidator.validate(temp_path)
            self.assertTrue(result.is_valid)
            self.assertGreater(len(result.warnings), 0)
        finally:
            os.remove(temp_path)

    def test_unsupported_extension(self):
        """Non-JSON files have no unit system"""
        with tempfile.NamedTemporaryFile('w', suffix='.txt', delete=False, encoding='utf-8') as f:
            f.write('{"source": {}, "beam": {}}')
            temp_path = f.name
        try:
            result = ConfigValidator.validate(temp_path)
            self.assertFalse(result.is_valid)
        finally:
            os.remove(temp_path)


if __name__ == '__main__':
    unittest.main()
