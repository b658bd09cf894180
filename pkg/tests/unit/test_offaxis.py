"""
Test Suite for Off-axis Correlators

Tests the auxiliary widths, the off-axis and symmetric-pair closed forms,
their collinear limit and the momentum-quadrature oracle.
"""

import unittest
import math
import os
import sys

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

from src.core.errors import DomainError
from src.core.params import BeamSpec, CorrMethod, DetectorSpec, SourceSpec, Statistics
from src.correlators.collinear import CollinearSetup, c_normalized
from src.correlators.offaxis import (OffAxisAux, appendixB_oracles, c_offaxis, c_offaxis_collinear_limit,
                                     c_symmetric_pair, d_funcs, d_tilde_funcs, mono_peak_momentum)


class TestAuxWidths(unittest.TestCase):
    """Test cases for D1, D2, D3 and their Cartesian form"""

    def setUp(self):
        self.src = SourceSpec(w=1.0, w_z=0.05, beta=5.0, mu=210.125)
        self.beam = BeamSpec(k0=20.0, dk_perp=0.5, dk_z=0.3)
        self.det = DetectorSpec(a=1.5, d=0.7)

    def test_ordering(self):
        """D1 <= D2 <= D3 at every angle"""
        for theta in (0.0, 0.01, 0.3, 1.2):
            aux = d_funcs(theta, self.src, self.beam, self.det)
            self.assertLessEqual(aux.d1, aux.d2)
            self.assertLessEqual(aux.d2, aux.d3)

    def test_on_axis_values(self):
        """At theta = 0, D1 = D2 = dk_perp^2 and D3 adds the d smearing"""
        aux = d_funcs(0.0, self.src, self.beam, self.det)
        self.assertAlmostEqual(aux.d1, 0.25)
        self.assertAlmostEqual(aux.d2, 0.25)
        self.assertAlmostEqual(aux.d3, 0.25 * (1.0 + 4.0 * 0.49 * 0.09))

    def test_cartesian_identity(self):
        """D~_i = r^2 D_i(atan2(rho, z)) for the symmetric pair"""
        for x, y, z in ((3.0, 4.0, 160.0), (0.5, -2.0, 80.0), (10.0, 0.0, 40.0)):
            rbar2 = x * x + y * y + z * z
            theta = math.atan2(math.hypot(x, y), z)
            tilde = d_tilde_funcs(x, y, z, self.src, self.beam, self.det)
            polar = d_funcs(theta, self.src, self.beam, self.det)
            for name in ("d1", "d2", "d3"):
                self.assertAlmostEqual(getattr(tilde, name) / (rbar2 * getattr(polar, name)), 1.0, places=10)

    def test_invalid_order(self):
        """Out-of-order widths are rejected"""
        with self.assertRaises(DomainError):
            OffAxisAux(2.0, 1.0, 3.0)


class TestOffAxisClosedForm(unittest.TestCase):
    """Test cases for c_offaxis and c_symmetric_pair"""

    def setUp(self):
        self.src = SourceSpec(w=1.0, w_z=0.05, beta=5.0, mu=210.125)
        self.beam = BeamSpec(k0=20.0, dk_perp=0.5, dk_z=0.5)
        self.det = DetectorSpec(a=0.0, d=1.0)

    def test_collinear_limit(self):
        """theta_d = 0 reduces to the collinear closed form"""
        for r1 in (156.0, 160.0, 163.5):
            value = c_offaxis(0.0, r1, 160.0, self.src, self.beam, self.det).value
            limit = c_offaxis_collinear_limit(r1, 160.0, self.beam, self.det)
            self.assertAlmostEqual(value, limit, places=12)

    def test_continuous_at_small_angles(self):
        """Leaving the axis changes C by O(theta_d^2)"""
        limit = c_offaxis_collinear_limit(160.0, 160.0, self.beam, self.det)
        shifts = {theta: abs(c_offaxis(theta, 160.0, 160.0, self.src, self.beam, self.det).value - limit)
                  for theta in (1e-3, 1e-2)}
        self.assertLess(shifts[1e-3], 1e-3)
        self.assertLess(shifts[1e-2], 0.1)
        scaled = [shifts[theta] / theta ** 2 for theta in (1e-3, 1e-2)]
        self.assertGreater(scaled[0], 0.0)
        self.assertGreater(scaled[1] / scaled[0], 0.7)
        self.assertLess(scaled[1] / scaled[0], 1.3)

    def test_lateral_suppression(self):
        """The fermion dip fills in as the detectors open up"""
        values = [c_offaxis(theta, 160.0, 160.0, self.src, self.beam, self.det).value
                  for theta in (0.0, 0.005, 0.01, 0.02, 0.05)]
        self.assertTrue(all(a < b for a, b in zip(values, values[1:])))
        self.assertGreater(values[-1], 0.9)

    def test_boson_mirror(self):
        """Boson and fermion values sum to 2"""
        fermion = c_offaxis(0.3, 160.0, 158.0, self.src, self.beam, self.det).value
        boson = c_offaxis(0.3, 160.0, 158.0, self.src, self.beam, self.det, statistics=Statistics.BOSON).value
        self.assertAlmostEqual(fermion + boson, 2.0, places=12)

    def test_classical_flat(self):
        """Classical statistics give C = 1"""
        value = c_offaxis(0.01, 160.0, 158.0, self.src, self.beam, self.det, statistics="classical").value
        self.assertEqual(value, 1.0)

    def test_symmetric_pair_matches_offaxis(self):
        """The Cartesian form equals the polar one at r1 = r2 = rbar"""
        x, y, z = 0.6, 0.8, 160.0
        rbar = math.sqrt(x * x + y * y + z * z)
        pair = c_symmetric_pair(x, y, z, self.src, self.beam, self.det)
        polar = c_offaxis(math.atan2(1.0, z), rbar, rbar, self.src, self.beam, self.det)
        self.assertAlmostEqual(pair.value, polar.value, places=10)
        self.assertAlmostEqual(pair.meta["rbar"], rbar)

    def test_symmetric_pair_on_axis(self):
        """Both detectors on the axis give the point-detector floor"""
        value = c_symmetric_pair(0.0, 0.0, 160.0, self.src, self.beam, DetectorSpec()).value
        self.assertAlmostEqual(value, 0.5, places=12)

    def test_preconditions_reported(self):
        """A deep source (w/w_z < 10) is flagged"""
        deep = self.src.with_(w_z=0.5)
        result = c_offaxis(0.01, 160.0, 160.0, deep, self.beam, self.det)
        self.assertTrue(any("w/w_z" in m for m in result.warnings))
        self.assertEqual(c_offaxis(0.01, 160.0, 160.0, self.src, self.beam, self.det).warnings, [])

    def test_invalid_angle(self):
        """theta_d must stay below 90 degrees"""
        with self.assertRaises(DomainError):
            c_offaxis(math.pi / 2, 160.0, 160.0, self.src, self.beam, self.det)


class TestMonoPeak(unittest.TestCase):
    """Test cases for the monochromator peak momentum"""

    def test_on_axis(self):
        """Peak at k0 on the axis"""
        self.assertAlmostEqual(mono_peak_momentum(0.0, BeamSpec(k0=20.0, dk_perp=0.5, dk_z=0.3)), 20.0)

    def test_isotropic_monochromator(self):
        """With dk_perp = dk_z the peak is k0 cos theta"""
        beam = BeamSpec(k0=20.0, dk_perp=0.5, dk_z=0.5)
        self.assertAlmostEqual(mono_peak_momentum(0.4, beam), 20.0 * math.cos(0.4))


class TestOracles(unittest.TestCase):
    """Test cases for the momentum-quadrature oracle"""

    def setUp(self):
        # Fermi level far above the window: N = 1
        self.src = SourceSpec(w=1.0, w_z=0.05, beta=5.0, mu=500.0)
        self.beam = BeamSpec(k0=20.0, dk_perp=0.5, dk_z=0.5)
        self.det = DetectorSpec(a=0.0, d=1.0)

    def test_on_axis_matches_closed_form(self):
        """At theta_d = 0 the oracle reproduces the closed form"""
        oracle = appendixB_oracles(0.0, 161.0, 160.0, self.src, self.beam, self.det)
        closed = c_offaxis(0.0, 161.0, 160.0, self.src, self.beam, self.det).value
        self.assertAlmostEqual(oracle.c_bar, closed, delta=1e-6)
        self.assertGreater(oracle.rho1, 0.0)
        self.assertGreater(oracle.interference, 0.0)

    def test_on_axis_matches_saddle_quadrature(self):
        """At theta_d = 0 the oracle equals the collinear GaussianApprox C"""
        cold = self.src.with_(mu=210.125)
        for src in (self.src, cold):
            for r1 in (158.5, 161.0, 162.0):
                with self.subTest(mu=src.mu, r1=r1):
                    oracle = appendixB_oracles(0.0, r1, 160.0, src, self.beam, self.det)
                    setup = CollinearSetup(src, self.beam, self.det, r1, 160.0)
                    collinear = c_normalized(setup, CorrMethod.GAUSSIAN_APPROX).value
                    self.assertAlmostEqual(oracle.c_bar, collinear, delta=1e-6)

    def test_small_angle(self):
        """At theta_d = 0.01 the oracle agrees within 5% of the dip amplitude"""
        oracle = appendixB_oracles(0.01, 160.0, 160.0, self.src, self.beam, self.det)
        closed = c_offaxis(0.01, 160.0, 160.0, self.src, self.beam, self.det).value
        self.assertLess(abs(oracle.c_bar - closed), 0.05 * abs(1.0 - closed))

    def test_density_scaling(self):
        """rho falls as 1/r^2"""
        oracle = appendixB_oracles(0.0, 320.0, 160.0, self.src, self.beam, self.det)
        self.assertAlmostEqual(oracle.rho2 / oracle.rho1, 4.0, places=8)


if __name__ == '__main__':
    unittest.main()
