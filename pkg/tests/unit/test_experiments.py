"""
Test Suite for Experiment Presets

Tests preset loading and the lateral/longitudinal visibility factors
against the orders of magnitude quoted for each experiment.
"""

import unittest
import json
import os
import shutil
import sys
import tempfile

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

from src.core.errors import ConfigError, DomainError
from src.core.params import Statistics
from src.experiments.presets import CoherenceScale, ExperimentPreset, PresetLoader
from src.experiments.visibility import dip_report, lateral_factor, longitudinal_factor


class TestPresetLoader(unittest.TestCase):
    """Test cases for PresetLoader"""

    def setUp(self):
        self.loader = PresetLoader()
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def test_shipped_presets(self):
        """All five shipped presets are found and load"""
        names = self.loader.available()
        for name in ("electron", "neutron_mosaic", "neutron_monocrystal", "pseudothermal", "xray"):
            self.assertIn(name, names)
        self.assertEqual(len(self.loader.load_all()), len(names))

    def test_unknown_preset(self):
        """Unknown names raise KeyError listing the known ones"""
        with self.assertRaises(KeyError) as ctx:
            self.loader.load("muon")
        self.assertIn("electron", str(ctx.exception))

    def test_invalid_json(self):
        """Malformed preset files raise ConfigError"""
        with open(os.path.join(self.temp_dir, "broken.json"), "w", encoding="utf-8") as f:
            f.write("{not json")
        with self.assertRaises(ConfigError):
            PresetLoader(self.temp_dir).load("broken")

    def test_incomplete_preset(self):
        """Missing fields raise ConfigError"""
        with open(os.path.join(self.temp_dir, "partial.json"), "w", encoding="utf-8") as f:
            json.dump({"name": "partial", "a": 1e-3}, f)
        with self.assertRaises(ConfigError):
            PresetLoader(self.temp_dir).load("partial")

    def test_missing_directory(self):
        """A missing directory has no presets"""
        self.assertEqual(PresetLoader(os.path.join(self.temp_dir, "none")).available(), [])


class TestPresetTypes(unittest.TestCase):
    """Test cases for ExperimentPreset and CoherenceScale"""

    def test_statistics_parsed(self):
        """Photon presets are bosons"""
        preset = PresetLoader().load("xray")
        self.assertIs(preset.statistics, Statistics.BOSON)
        self.assertIsNone(preset.mass)

    def test_time_scales_become_lengths(self):
        """Times convert with the group velocity hbar k0 / m"""
        preset = PresetLoader().load("electron")
        lengths = preset.coherence_lengths
        self.assertEqual(lengths.kind, "length")
        self.assertAlmostEqual(lengths.det / lengths.coh, 26e-12 / 32e-15, places=6)
        self.assertAlmostEqual(lengths.coh, preset.velocity * 32e-15)

    def test_invalid_values(self):
        """Unknown particles, bad scales and nonpositive sizes are rejected"""
        scale = CoherenceScale("length", 1.0, 0.1)
        with self.assertRaises(DomainError):
            CoherenceScale("distance", 1.0, 0.1)
        with self.assertRaises(DomainError):
            ExperimentPreset("x", "muon", "fermion", 1.0, 1.0, 1.0, 1.0, scale)
        with self.assertRaises(DomainError):
            ExperimentPreset("x", "electron", "fermion", 0.0, 1.0, 1.0, 1.0, scale)


class TestVisibility(unittest.TestCase):
    """Test cases for the dip visibility factors"""

    def setUp(self):
        self.loader = PresetLoader()

    def test_electron(self):
        """Electron lateral factor of order 1e-4"""
        preset = self.loader.load("electron")
        self.assertTrue(1e-4 <= lateral_factor(preset) <= 1e-3)

    def test_electron_longitudinal(self):
        """Computed longitudinal factor is l_coh / l_det to first order, next to the quoted 1/300"""
        report = dip_report(self.loader.load("electron"))
        self.assertAlmostEqual(report.longitudinal * 26e-12 / 32e-15, 1.0, places=5)
        self.assertAlmostEqual(report.quoted["longitudinal"], 1.0 / 300.0, places=9)

    def test_neutron_mosaic(self):
        """Whole-crystal window gives order 1e-10"""
        self.assertTrue(1e-11 <= lateral_factor(self.loader.load("neutron_mosaic")) <= 1e-9)

    def test_neutron_monocrystal(self):
        """Single monocrystal window gives order 1e-2"""
        self.assertTrue(1e-3 <= lateral_factor(self.loader.load("neutron_monocrystal")) <= 1e-1)

    def test_xray(self):
        """X-ray lateral factor about 0.9 and quoted depth 0.18"""
        report = dip_report(self.loader.load("xray"))
        self.assertAlmostEqual(report.lateral, 0.9, delta=0.05)
        self.assertAlmostEqual(report.quoted_depth, 0.18, delta=0.03)

    def test_pseudothermal(self):
        """Lateral factor about 0.1 with an essentially unit longitudinal factor"""
        preset = self.loader.load("pseudothermal")
        self.assertAlmostEqual(lateral_factor(preset), 1.0 / 9.0, places=12)
        self.assertAlmostEqual(longitudinal_factor(preset), 1.0, places=4)

    def test_depth_factorizes(self):
        """Depth is 1/2 * lateral * longitudinal"""
        for preset in self.loader.load_all():
            report = dip_report(preset)
            self.assertAlmostEqual(report.depth, 0.5 * report.lateral * report.longitudinal)

    def test_quoted_depth_from_factors(self):
        """Without a quoted depth it follows from the quoted factors"""
        report = dip_report(self.loader.load("neutron_monocrystal"))
        self.assertAlmostEqual(report.quoted_depth, 0.5 * 1e-2 * 0.1)

    def test_report_serialization(self):
        """Report renders as JSON and text"""
        report = dip_report(self.loader.load("xray"))
        data = json.loads(report.to_json())
        self.assertEqual(data["name"], "xray")
        self.assertIn("Lateral factor", report.summary())
        self.assertIn("quoted 0.9", report.summary())


if __name__ == '__main__':
    unittest.main()
