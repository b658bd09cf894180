"""
Test Suite for Numerics

Tests the quadrature engines, the scaled Bessel function and the angular
saddle point.
"""

import unittest
import math
import os
import sys

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

import numpy as np
from scipy.special import i0

from src.core.errors import ConvergenceError, DomainError
from src.core.params import CorrMethod, DetectorSpec, SourceSpec
from src.numerics.quadrature import QuadSpec, gauss_legendre_panels, integrate_1d, integrate_nd
from src.numerics.saddle import (SQRT_PI_OVER_E, SaddleParams, ThetaMode, saddle_expansion, saddle_kernel,
                                 saddle_theta0, stationarity_residual, theta_cutoff, theta_integral,
                                 theta_integral_direct, theta_integral_grid)
from src.numerics.special import bessel_i0_scaled


class TestQuadrature(unittest.TestCase):
    """Test cases for integrate_1d and integrate_nd"""

    def test_spec_ladder(self):
        """Numeric runs at 1e-6, the saddle path at 1e-8"""
        self.assertEqual(QuadSpec.for_method(CorrMethod.NUMERIC).rel_tol, 1e-6)
        self.assertEqual(QuadSpec.for_method("gauss").rel_tol, 1e-8)

    def test_spec_validation(self):
        """Nonpositive tolerances and narrow windows are rejected"""
        with self.assertRaises(DomainError):
            QuadSpec(rel_tol=0.0)
        with self.assertRaises(DomainError):
            QuadSpec(k_window_sigmas=3.0)

    def test_integrate_1d_gaussian(self):
        """Adaptive rule integrates a Gaussian to its normalization"""
        value, err = integrate_1d(lambda x: math.exp(-x * x), -10.0, 10.0, QuadSpec(rel_tol=1e-12))
        self.assertAlmostEqual(value, math.sqrt(math.pi), places=10)
        self.assertLess(err, 1e-8)

    def test_integrate_1d_oscillatory_weight(self):
        """cos weight: int_0^1 x cos(2x) dx matches its closed form"""
        value, _ = integrate_1d(lambda x: x, 0.0, 1.0, weight="cos", wvar=2.0)
        self.assertAlmostEqual(value, (2.0 * math.sin(2.0) + math.cos(2.0) - 1.0) / 4.0, places=10)

    def test_integrate_1d_convergence_error(self):
        """A subdivision limit of 1 on a spiky integrand raises with the best estimate"""
        spec = QuadSpec(rel_tol=1e-14, abs_tol=1e-300, max_subdiv=1)
        with self.assertRaises(ConvergenceError) as ctx:
            integrate_1d(lambda x: 1.0 / math.sqrt(abs(x - 0.3) + 1e-12), 0.0, 1.0, spec)
        self.assertIsNotNone(ctx.exception.best_estimate)

    def test_panels_cover_interval(self):
        """Panel weights sum to the interval length"""
        x, w = gauss_legendre_panels(0.0, 2.0, [0.5, 1.0, 5.0], 8)
        self.assertAlmostEqual(float(w.sum()), 2.0, places=13)
        self.assertTrue(np.all((x > 0.0) & (x < 2.0)))

    def test_integrate_nd_product(self):
        """2D separable polynomial is exact"""
        value, err = integrate_nd(lambda x, y: x * x * y, [(0.0, 1.0), (0.0, 2.0)])
        self.assertAlmostEqual(complex(value).real, 2.0 / 3.0, places=12)
        self.assertLess(err, 1e-10)

    def test_integrate_nd_complex(self):
        """Complex integrand returns a complex value"""
        value, _ = integrate_nd(lambda x: np.exp(1j * x), [(0.0, math.pi)])
        self.assertAlmostEqual(complex(value).real, 0.0, places=12)
        self.assertAlmostEqual(complex(value).imag, 2.0, places=12)

    def test_integrate_nd_info(self):
        """info receives node counts and the L1 norm"""
        info = {}
        integrate_nd(lambda x, y, z: np.exp(-(x * x + y * y + z * z)), [(-6.0, 6.0)] * 3,
                     breakpoints=[[-2.0, 0.0, 2.0]] * 3, info=info)
        self.assertIn("nodes", info)
        self.assertIn("l1", info)

    def test_integrate_nd_dimension_limit(self):
        """More than four dimensions are rejected"""
        with self.assertRaises(DomainError):
            integrate_nd(lambda *x: 1.0, [(0.0, 1.0)] * 5)


class TestSpecial(unittest.TestCase):
    """Test cases for the scaled Bessel function"""

    def test_matches_i0(self):
        """e^-x I0(x) agrees with scipy's I0 at moderate x"""
        for x in (0.0, 0.5, 3.0, 20.0):
            self.assertAlmostEqual(bessel_i0_scaled(x), math.exp(-x) * float(i0(x)), places=12)

    def test_large_argument(self):
        """Asymptotically e^-x I0(x) ~ 1/sqrt(2 pi x)"""
        x = 1e6
        self.assertAlmostEqual(bessel_i0_scaled(x) * math.sqrt(2.0 * math.pi * x), 1.0, places=5)

    def test_vectorized(self):
        """Arrays come back as arrays"""
        out = bessel_i0_scaled(np.array([0.0, 1.0]))
        self.assertEqual(out.shape, (2,))

    def test_negative_argument(self):
        """Negative arguments raise DomainError"""
        with self.assertRaises(DomainError):
            bessel_i0_scaled(-1.0)


class TestSaddle(unittest.TestCase):
    """Test cases for the angular saddle point"""

    def test_stationarity(self):
        """Theta0 solves the stationarity condition"""
        for total in (0.5, 10.0, 400.0, 1e5):
            point = saddle_theta0(SaddleParams(p=total, q=0.0))
            self.assertLess(abs(stationarity_residual(point.theta0, total)), 1e-9)

    def test_degenerate_point(self):
        """Small p approaches the pi/4 limit"""
        point = saddle_theta0(SaddleParams(p=1e-9, q=0.0))
        self.assertAlmostEqual(point.theta0, math.pi / 4, places=6)

    def test_invalid_params(self):
        """p must be positive"""
        with self.assertRaises(DomainError):
            SaddleParams(p=0.0, q=1.0)

    def test_expansion_curvature(self):
        """The expansion sits at Theta0 with curvature 2 sqrt(1 + P^2)"""
        sp = SaddleParams(p=3.0, q=1.0)
        expansion = saddle_expansion(sp)
        self.assertAlmostEqual(expansion.theta0, saddle_theta0(sp).theta0, places=14)
        self.assertAlmostEqual(expansion.curvature, 2.0 * math.sqrt(17.0), places=12)

    def test_expansion_large_p(self):
        """Before the large-p limit the Laplace estimate keeps the erf(1) edge at Theta = 0"""
        sp = SaddleParams(p=1e6, q=0.0)
        ratio = saddle_expansion(sp).laplace_estimate / (SQRT_PI_OVER_E / (2.0 * sp.p))
        self.assertAlmostEqual(ratio, 0.5 * (1.0 + math.erf(1.0)), delta=1e-4)

    def test_large_p_limit(self):
        """Angular integral tends to 1/(2p); the saddle kernel carries the constant sqrt(pi/e) on top"""
        sp = SaddleParams(p=1e4, q=0.0)
        value = theta_integral(sp, ThetaMode.NUMERIC)
        self.assertAlmostEqual(2.0 * sp.p * value, 1.0, delta=1e-3)
        self.assertAlmostEqual(theta_integral(sp, ThetaMode.SADDLE), SQRT_PI_OVER_E / (2.0 * sp.p), places=15)

    def test_theta_form_matches_direct(self):
        """The substituted Theta form equals the direct polar integral"""
        sp = SaddleParams(p=400.0, q=1.0)
        direct = theta_integral_direct(sp)
        transformed = theta_integral(sp, ThetaMode.NUMERIC)
        self.assertAlmostEqual(transformed / direct, 1.0, places=8)

    def test_grid_matches_direct(self):
        """Fixed-rule grid integral matches adaptive quadrature"""
        p = np.array([100.0, 400.0, 1600.0])
        grid = theta_integral_grid(p, 0.0025 * p)
        for pi, gi in zip(p, grid):
            direct = theta_integral_direct(SaddleParams(p=float(pi), q=0.0025 * float(pi)))
            self.assertAlmostEqual(gi / direct, 1.0, places=7)

    def test_saddle_kernel_vectorized(self):
        """Kernel accepts arrays and applies the q correction"""
        p = np.array([10.0, 100.0])
        self.assertTrue(np.allclose(saddle_kernel(p), SQRT_PI_OVER_E / (2.0 * p)))
        self.assertTrue(np.all(saddle_kernel(p, 1e4, q_correction=True) < saddle_kernel(p)))

    def test_theta_cutoff(self):
        """Cutoff solves lam (k sin theta)^2 = cut and saturates at pi/2"""
        theta = float(theta_cutoff(1.0, 20.0))
        self.assertAlmostEqual((20.0 * math.sin(theta)) ** 2, 50.0, places=9)
        self.assertAlmostEqual(float(theta_cutoff(1.0, 1.0)), math.pi / 2)

    def test_from_momentum(self):
        """p falls with the detector mouth a"""
        src = SourceSpec(w=1.0, w_z=0.05, beta=5.0, mu=210.125)
        sharp = SaddleParams.from_momentum(20.0, src, DetectorSpec(), 160.0)
        wide = SaddleParams.from_momentum(20.0, src, DetectorSpec(a=5.0), 160.0)
        self.assertAlmostEqual(sharp.p, 400.0)
        self.assertAlmostEqual(sharp.q, 1.0)
        self.assertLess(wide.p, sharp.p)


if __name__ == '__main__':
    unittest.main()
