"""
Angular saddle point of the single-particle integral.

After the substitution p sin^2(theta) + q (1 - cos theta)^2 = (p + q) sin^2(Theta)
the angular integral reads

    (p+q) int_0^{pi/2} dTheta exp[ln(sin Theta cos Theta) - (p+q) sin^2 Theta]
                        / sqrt(p^2 cos^2 Theta + q^2 sin^2 Theta)

and for p >> 1 it is estimated by (1/2p) sqrt(pi/e).
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, NamedTuple, Optional

import numpy as np

from src.core.errors import DomainError, warn_approximation
from src.core.params import DetectorSpec, SourceSpec
from src.numerics.quadrature import QuadSpec, gauss_legendre_panels, integrate_1d

SQRT_PI_OVER_E = math.sqrt(math.pi / math.e)
SADDLE_MIN_P = 10.0


class ThetaMode(Enum):
    NUMERIC = "numeric"
    SADDLE = "saddle"


@dataclass(frozen=True)
class SaddleParams:
    """p = w^2 k^2 / (1 + 2 a^2 w^2 k^2 / z^2), q = w_z^2 k^2."""
    p: float
    q: float

    def __post_init__(self):
        if not self.p > 0:
            raise DomainError(f"p must be positive, got {self.p}")
        if self.q < 0:
            raise DomainError(f"q must be non-negative, got {self.q}")

    @property
    def total(self) -> float:
        return self.p + self.q

    @classmethod
    def from_momentum(cls, k: float, src: SourceSpec, det: DetectorSpec, zbar: float) -> "SaddleParams":
        p = src.w ** 2 * k ** 2 / (1.0 + 2.0 * det.a ** 2 * src.w ** 2 * k ** 2 / zbar ** 2)
        return cls(p=p, q=src.w_z ** 2 * k ** 2)


class SaddlePoint(NamedTuple):
    theta0: float
    sin2: float
    degenerate: bool


class SaddleExpansion(NamedTuple):
    """Quadratic expansion of ln(sin cos) - P sin^2 about Theta0."""
    theta0: float
    peak_exponent: float
    curvature: float
    prefactor: float
    laplace_estimate: float


def _sin2_theta0(total: float) -> float:
    # 1/2 - P / (2 (1 + sqrt(1 + P^2))), same as [1 + P - sqrt(1 + P^2)] / (2P) without cancellation
    return 0.5 - total / (2.0 * (1.0 + math.sqrt(1.0 + total * total)))


def saddle_theta0(sp: SaddleParams) -> SaddlePoint:
    """
    Stationary point of ln(sin Theta cos Theta) - (p+q) sin^2 Theta.

    Returns:
        SaddlePoint with Theta0 in (0, pi/2); p+q = 0 yields the pi/4 limit
        with `degenerate` set
    """
    total = sp.total
    if total == 0.0:
        return SaddlePoint(math.pi / 4, 0.5, True)
    s2 = _sin2_theta0(total)
    return SaddlePoint(math.asin(math.sqrt(s2)), s2, False)


def stationarity_residual(theta: float, total: float) -> float:
    """d/dTheta of ln(sin Theta cos Theta) - P sin^2 Theta."""
    s, c = math.sin(theta), math.cos(theta)
    return c / s - s / c - 2.0 * total * s * c


def saddle_expansion(sp: SaddleParams) -> SaddleExpansion:
    """
    Second-order expansion of the angular exponent and the Laplace estimate
    of the angular integral before the large-p limit is taken.
    """
    point = saddle_theta0(sp)
    P = sp.total
    root = math.sqrt(1.0 + P * P)
    peak = 0.5 * math.log((root - 1.0) / (2.0 * P * P)) - 0.5 * (1.0 + P - root)
    curvature = 2.0 * root
    prefactor = math.sqrt((root - 1.0) / (sp.p ** 2 + sp.q ** 2 + (sp.p - sp.q) * (root - 1.0)))
    gauss = 0.5 * math.sqrt(math.pi / curvature) * (
        math.erf(math.sqrt(curvature) * (math.pi / 2 - point.theta0)) + math.erf(math.sqrt(curvature) * point.theta0)
    )
    estimate = prefactor * math.exp(-0.5 * (1.0 + P - root)) * gauss
    return SaddleExpansion(point.theta0, peak, curvature, prefactor, estimate)


def _theta_form(sp: SaddleParams, spec: QuadSpec) -> float:
    P = sp.total

    def integrand(t):
        s, c = math.sin(t), math.cos(t)
        if s == 0.0 or c == 0.0:
            return 0.0
        return math.exp(math.log(s * c) - P * s * s) / math.sqrt(sp.p ** 2 * c * c + sp.q ** 2 * s * s)

    theta0 = saddle_theta0(sp).theta0
    value, _ = integrate_1d(integrand, 0.0, math.pi / 2, spec, points=[theta0])
    return P * value


def theta_integral_direct(sp: SaddleParams, spec: Optional[QuadSpec] = None) -> float:
    """int_0^{pi/2} dtheta sin(theta) exp[-p sin^2 theta - q (1 - cos theta)^2]."""
    spec = spec or QuadSpec(rel_tol=1e-10)

    def integrand(t):
        return math.sin(t) * math.exp(-sp.p * math.sin(t) ** 2 - sp.q * (1.0 - math.cos(t)) ** 2)

    width = min(math.pi / 2, 1.0 / math.sqrt(sp.total)) if sp.total > 0 else math.pi / 2
    value, _ = integrate_1d(integrand, 0.0, math.pi / 2, spec, points=[width, 4 * width])
    return value


def theta_integral(sp: SaddleParams, mode: ThetaMode = ThetaMode.NUMERIC, q_correction: bool = False,
                   spec: Optional[QuadSpec] = None, collected: Optional[List[str]] = None) -> float:
    """
    Angular integral of the single-particle density.

    Args:
        sp: Saddle parameters (p, q)
        mode: NUMERIC integrates the Theta form, SADDLE returns (1/2p) sqrt(pi/e)
        q_correction: In SADDLE mode divide by sqrt(1 + q / (2 p^2))
        spec: Quadrature settings for NUMERIC mode
        collected: Optional list receiving approximation warnings

    Returns:
        float: value of the angular integral
    """
    mode = ThetaMode(mode)
    if mode is ThetaMode.NUMERIC:
        return _theta_form(sp, spec or QuadSpec(rel_tol=1e-10))
    if sp.p < SADDLE_MIN_P:
        warn_approximation(f"saddle kernel used at p = {sp.p:.3g} < {SADDLE_MIN_P:g}", collected)
    return float(saddle_kernel(sp.p, sp.q, q_correction))


def saddle_kernel(p, q=0.0, q_correction: bool = False):
    """Vectorized (1/2p) sqrt(pi/e), optionally divided by sqrt(1 + q / (2 p^2))."""
    p = np.asarray(p, dtype=float)
    value = SQRT_PI_OVER_E / (2.0 * p)
    if q_correction:
        value = value / np.sqrt(1.0 + np.asarray(q, dtype=float) / (2.0 * p ** 2))
    return value


def theta_cutoff(lam_min, k, cut: float = 50.0):
    """
    Upper polar angle beyond which exp(-lam_min (k sin theta)^2) < e^{-cut}.

    Vectorized over k; returns pi/2 where the Gaussian never gets that small.
    """
    lam_min = np.asarray(lam_min, dtype=float)
    k = np.asarray(k, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.sqrt(cut / np.maximum(lam_min, 1e-300)) / np.maximum(k, 1e-300)
    return np.arcsin(np.clip(s, 0.0, 1.0))


ANGLE_EDGES = (1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2)


def angular_rule(nodes: int = 12):
    """Gauss-Legendre rule on t in [0, 1], panels graded towards t = 0."""
    return gauss_legendre_panels(0.0, 1.0, ANGLE_EDGES, nodes)


def theta_integral_grid(p, q, nodes: int = 12, cut: float = 50.0):
    """
    Vectorized theta-form angular integral for arrays of (p, q).

    theta is mapped to t * theta_max with p sin^2(theta_max) = cut, so the
    fixed rule follows the peak at theta ~ 1/sqrt(2p).
    """
    p, q = np.broadcast_arrays(np.asarray(p, dtype=float), np.asarray(q, dtype=float))
    theta_max = np.arcsin(np.clip(np.sqrt(cut / np.maximum(p, 1e-300)), 0.0, 1.0))
    t, wt = angular_rule(nodes)
    theta = theta_max[..., None] * t
    s, c = np.sin(theta), np.cos(theta)
    values = s * np.exp(-p[..., None] * s * s - q[..., None] * (1.0 - c) ** 2)
    return theta_max * (values @ wt)
