"""
Test Suite for Distributions

Tests occupations, window and monochromator form factors, detector
acceptance and the emitted spectrum.
"""

import unittest
import math
import os
import sys

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

import numpy as np

from src.core.errors import DomainError
from src.core.params import BeamSpec, DetectorSpec, SourceSpec, Statistics
from src.dists.form_factors import (Vec3, emission_T, mono_f, mono_f2_axis, mono_f2_norm, mono_f_angle, resolution_R,
                                    window_g, window_g_tilde)
from src.dists.occupation import log_occupation, occupation
from src.dists.spectrum import effective_spectrum, momentum_breakpoints, momentum_window, spectrum_moments
from src.numerics.quadrature import integrate_nd


class TestOccupation(unittest.TestCase):
    """Test cases for thermal occupations"""

    def setUp(self):
        self.fermi = SourceSpec(w=1.0, w_z=0.05, beta=5.0, mu=210.125, statistics=Statistics.FERMION)

    def test_fermi_level(self):
        """Fermion occupation is 1/2 at the Fermi level and bounded by 1"""
        self.assertAlmostEqual(occupation(210.125, self.fermi), 0.5)
        values = occupation(np.linspace(0.0, 400.0, 101), self.fermi)
        self.assertTrue(np.all((values >= 0.0) & (values <= 1.0)))

    def test_boson_domain(self):
        """Bose occupation requires omega > mu"""
        boson = self.fermi.with_(statistics=Statistics.BOSON, mu=0.0, beta=0.01)
        self.assertAlmostEqual(occupation(200.0, boson), 1.0 / math.expm1(2.0))
        with self.assertRaises(DomainError):
            occupation(0.0, boson)

    def test_classical(self):
        """Classical occupation is the Boltzmann factor"""
        classical = self.fermi.with_(statistics=Statistics.CLASSICAL, mu=0.0, beta=0.1)
        self.assertAlmostEqual(occupation(10.0, classical), math.exp(-1.0))

    def test_log_occupation_tails(self):
        """Log occupation stays finite where the occupation underflows"""
        far = 210.125 + 1000.0
        self.assertTrue(math.isfinite(log_occupation(far, self.fermi)))
        self.assertAlmostEqual(log_occupation(far, self.fermi), -5000.0, places=6)
        self.assertAlmostEqual(log_occupation(150.0, self.fermi), math.log(occupation(150.0, self.fermi)))

    def test_boson_fermion_high_energy(self):
        """All statistics coincide far above mu"""
        omega = 300.0
        boson = self.fermi.with_(statistics="boson")
        classical = self.fermi.with_(statistics="classical")
        n_f, n_b, n_c = (occupation(omega, s) for s in (self.fermi, boson, classical))
        self.assertAlmostEqual(n_f / n_c, 1.0, places=12)
        self.assertAlmostEqual(n_b / n_c, 1.0, places=12)


class TestFormFactors(unittest.TestCase):
    """Test cases for the Gaussian form factors"""

    def setUp(self):
        self.src = SourceSpec(w=1.0, w_z=0.05, beta=5.0, mu=210.125)
        self.beam = BeamSpec(k0=20.0, dk_perp=0.5, dk_z=0.5)

    def test_vec3_algebra(self):
        """Vector arithmetic and norms"""
        v = Vec3(3.0, 4.0, 12.0)
        self.assertAlmostEqual(float(v.norm()), 13.0)
        self.assertAlmostEqual(float(v.perp2()), 25.0)
        self.assertAlmostEqual(float(v.unit().norm()), 1.0)
        w = Vec3(1.0, 0.0, 2.0)
        self.assertEqual((v + w).z, 14.0)
        self.assertEqual((v - w).x, 2.0)
        self.assertEqual((2.0 * w).z, 4.0)
        self.assertAlmostEqual(float(v.dot(w)), 27.0)
        rotated = v.rotate_z(math.pi / 2)
        self.assertAlmostEqual(rotated.x, -4.0)
        with self.assertRaises(DomainError):
            Vec3(0.0, 0.0, 0.0).unit()

    def test_mono_normalization(self):
        """f^2 integrates to 1 over d^3k"""
        value, _ = mono_f2_norm(self.beam)
        self.assertAlmostEqual(value, 1.0, delta=1e-8)

    def test_window_normalization(self):
        """g integrates to 1 over d^3r"""
        box = [(-8.0, 8.0), (-8.0, 8.0), (-0.4, 0.4)]
        value, _ = integrate_nd(lambda x, y, z: window_g(Vec3(x, y, z), self.src), box,
                                breakpoints=[list(range(-7, 8)), list(range(-7, 8)), list(np.arange(-0.35, 0.4, 0.05))])
        self.assertAlmostEqual(complex(value).real, 1.0, delta=1e-8)

    def test_resolution_normalization(self):
        """R integrates to 1 around its centre"""
        det = DetectorSpec(a=2.0, d=1.0)
        centre = Vec3(0.0, 0.0, 160.0)
        box = [(-16.0, 16.0), (-16.0, 16.0), (152.0, 168.0)]
        edges = [list(np.arange(-14.0, 16.0, 2.0)), list(np.arange(-14.0, 16.0, 2.0)), list(np.arange(153.0, 168.0))]
        value, _ = integrate_nd(lambda x, y, z: resolution_R(Vec3(x, y, z), centre, det), box, breakpoints=edges)
        self.assertAlmostEqual(complex(value).real, 1.0, delta=1e-8)

    def test_window_tilde_peak(self):
        """g~(0) = (2 pi)^-3"""
        self.assertAlmostEqual(float(window_g_tilde(Vec3(0.0, 0.0, 0.0), self.src)), (2.0 * math.pi) ** -3)

    def test_mono_axis_matches_vector_form(self):
        """f^2 along the axis equals f(k z^)^2"""
        k = 20.3
        self.assertAlmostEqual(float(mono_f2_axis(k, self.beam)), float(mono_f(Vec3.axis(k), self.beam)) ** 2)

    def test_mono_angle(self):
        """f(k, theta_d) is f at the tilted momentum; theta_d = 0 is the axis"""
        k = 19.8
        self.assertAlmostEqual(float(mono_f_angle(k, 0.0, self.beam)), float(mono_f(Vec3.axis(k), self.beam)), places=12)
        tilted = Vec3(k * math.sin(0.02), 0.0, k * math.cos(0.02))
        self.assertAlmostEqual(float(mono_f_angle(k, 0.02, self.beam)), float(mono_f(tilted, self.beam)), places=12)
        self.assertLess(float(mono_f_angle(k, 0.02, self.beam)), float(mono_f_angle(k, 0.0, self.beam)))

    def test_emission_gate(self):
        """T vanishes for k_z <= 0"""
        kprime = Vec3(0.0, 0.0, 20.0)
        self.assertEqual(emission_T(kprime, Vec3(0.0, 0.0, -20.0), self.src, self.beam), 0.0)
        self.assertGreater(emission_T(kprime, Vec3(0.0, 0.0, 20.0), self.src, self.beam), 0.0)


class TestSpectrum(unittest.TestCase):
    """Test cases for the emitted spectrum and its momentum grid"""

    def setUp(self):
        self.src = SourceSpec(w=1.0, w_z=0.05, beta=5.0, mu=210.125)
        self.beam = BeamSpec(k0=20.0, dk_perp=0.5, dk_z=0.5)

    def test_window_covers_peak(self):
        """Momentum window contains k0 and at least +/- 8 dk_z"""
        lo, hi = momentum_window(self.src, self.beam)
        self.assertLessEqual(lo, 16.0)
        self.assertGreaterEqual(hi, 24.0)

    def test_breakpoints_near_fermi_momentum(self):
        """Grid is graded around k_F when it lies inside the window"""
        window = momentum_window(self.src, self.beam)
        points = momentum_breakpoints(self.src, self.beam, window)
        self.assertIn(20.5, points)
        self.assertEqual(points, sorted(points))

    def test_fermi_step_truncates_spectrum(self):
        """A cold Fermi sea cuts the spectrum above k_F; a flat band keeps the Gaussian"""
        truncated = spectrum_moments(self.src, self.beam)
        flat = spectrum_moments(self.src.with_(mu=500.0), self.beam)
        self.assertAlmostEqual(flat.mean, 20.0, delta=1e-6)
        self.assertAlmostEqual(flat.std, 0.5, delta=1e-6)
        self.assertLess(truncated.std, flat.std)
        self.assertLess(truncated.mean, flat.mean)

    def test_spectrum_is_product(self):
        """N f^2 is the product of occupation and axial form factor"""
        k = 20.2
        expected = occupation(self.src.omega(k), self.src) * float(mono_f2_axis(k, self.beam))
        self.assertAlmostEqual(float(effective_spectrum(k, self.src, self.beam)), expected)


if __name__ == '__main__':
    unittest.main()
