"""
Beam Profile

Asymptotic single-particle wave function far from the source,

    phi_k(r) ~ m sqrt(2 pi) theta(k_z) f(k r^) g~(k r^ - k) e^{ikr} / (i r),

and a validator that evaluates the radial integral it comes from,

    phi_k(r) = -1/(sqrt(2 pi) r) int dp p T(p r^, k) e^{ipr} / (e_p - w_k - i eta),

for a decreasing regulator eta and extrapolates to eta -> 0.
"""
import cmath
import math
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from src.core.errors import ConvergenceError, DomainError, warn_approximation
from src.core.params import BeamSpec, SourceSpec
from src.dists.form_factors import Vec3, mono_f, window_g_tilde
from src.numerics.quadrature import QuadSpec, integrate_1d

SQRT_TWO_PI = math.sqrt(2.0 * math.pi)
FAR_FIELD_RATIO = 10.0
ETA_STEPS = (4.0, 2.0, 1.0)
ETA_SCALE = 0.05
AGREEMENT_TOL = 0.02
RADIAL_SIGMAS = 12.0


def farfield_amplitude(k: Vec3, rhat: Vec3, r: float, src: SourceSpec, beam: BeamSpec) -> complex:
    """
    Far-field amplitude at distance r in direction rhat for source momentum k.

    Returns:
        complex amplitude; exactly 0 when k_z <= 0
    """
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    if float(k.z) <= 0.0:
        return 0j
    if r < FAR_FIELD_RATIO * src.w:
        warn_approximation(f"far field: r/w = {r / src.w:.3g} < {FAR_FIELD_RATIO:g}")
    kmag = float(k.norm())
    outgoing = rhat.unit() * kmag
    modulus = src.mass * SQRT_TWO_PI * float(mono_f(outgoing, beam)) * float(window_g_tilde(outgoing - k, src)) / r
    return modulus * cmath.exp(1j * (kmag * r - math.pi / 2))


def _radial_window(k: Vec3, rhat: Vec3, beam: BeamSpec) -> Tuple[float, float, List[float]]:
    kmag = float(k.norm())
    centre = beam.k0 * float(rhat.unit().z)
    span = RADIAL_SIGMAS * math.sqrt(2.0) * max(beam.dk_z, beam.dk_perp)
    lo = min(centre, kmag) - span
    hi = max(centre, kmag) + span
    poles = [p for p in (-kmag, kmag) if lo < p < hi]
    return lo, hi, poles


def radial_integral_check(k: Vec3, rhat: Vec3, r: float, eta: float, src: SourceSpec, beam: BeamSpec,
                          spec: Optional[QuadSpec] = None) -> complex:
    """
    Regularized radial integral for one value of eta.

    The oscillating factor e^{ipr} is handled by QUADPACK cos/sin weights and
    the integration range is split at the poles p = +/- |k|.

    Raises:
        DomainError: If eta <= 0
        ConvergenceError: If a weighted quadrature fails
    """
    if not eta > 0:
        raise DomainError(f"eta must be positive, got {eta}")
    if float(k.z) <= 0.0:
        return 0j
    spec = spec or QuadSpec(rel_tol=1e-10, abs_tol=1e-16, max_subdiv=2000)
    unit = rhat.unit()
    kmag = float(k.norm())
    mass = src.mass

    def kernel(p):
        t = float(mono_f(unit * p, beam)) * float(window_g_tilde(unit * p - k, src))
        x = (p * p - kmag * kmag) / (2.0 * mass)
        return p * t / (x * x + eta * eta), x

    def real_part(p):
        base, x = kernel(p)
        return base * x

    def imag_part(p):
        base, _ = kernel(p)
        return base * eta

    lo, hi, poles = _radial_window(k, unit, beam)
    edges = [lo] + poles + [hi]
    total = 0j
    for a, b in zip(edges[:-1], edges[1:]):
        rc, _ = integrate_1d(real_part, a, b, spec, weight="cos", wvar=r)
        rs, _ = integrate_1d(real_part, a, b, spec, weight="sin", wvar=r)
        ic, _ = integrate_1d(imag_part, a, b, spec, weight="cos", wvar=r)
        is_, _ = integrate_1d(imag_part, a, b, spec, weight="sin", wvar=r)
        total += complex(rc - is_, rs + ic)
    return -total / (SQRT_TWO_PI * r)


@dataclass
class RadialCheck:
    """Outcome of the eta -> 0 extrapolation of the radial integral."""
    amplitude: complex
    farfield: complex
    etas: List[float]
    values: List[complex]
    linear_estimate: complex
    rel_deviation: float
    passed: bool
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            'amplitude_abs': abs(self.amplitude),
            'farfield_abs': abs(self.farfield),
            'etas': list(self.etas),
            'values_abs': [abs(v) for v in self.values],
            'rel_deviation': self.rel_deviation,
            'passed': self.passed,
            'warnings': list(self.warnings),
        }


def extrapolated_radial_amplitude(k: Vec3, rhat: Vec3, r: float, src: SourceSpec, beam: BeamSpec,
                                  spec: Optional[QuadSpec] = None, eps: float = ETA_SCALE) -> RadialCheck:
    """
    Radial integral at eta = eps |k| / (m r) * {4, 2, 1}, extrapolated to eta -> 0.

    The three values are fitted with a quadratic in eta; the check passes
    when the extrapolation is stable and its modulus agrees with the far-field
    amplitude within 2%.
    """
    collected: List[str] = []
    if r < FAR_FIELD_RATIO * src.w:
        collected.append(f"far field: r/w = {r / src.w:.3g} < {FAR_FIELD_RATIO:g}")
    kmag = float(k.norm())
    if kmag == 0.0:
        raise DomainError("k must be nonzero")
    h = eps * kmag / (src.mass * r)
    etas = [h * step for step in ETA_STEPS]
    try:
        values = [radial_integral_check(k, rhat, r, eta, src, beam, spec) for eta in etas]
    except ConvergenceError as e:
        collected.append(f"radial quadrature failed: {e}")
        return RadialCheck(0j, farfield_amplitude(k, rhat, r, src, beam), etas, [], 0j, float("inf"), False, collected)

    a4, a2, a1 = values
    amplitude = (8.0 * a1 - 6.0 * a2 + a4) / 3.0
    linear = 2.0 * a1 - a2
    farfield = farfield_amplitude(k, rhat, r, src, beam)
    reference = abs(farfield)
    deviation = abs(abs(amplitude) - reference) / reference if reference else abs(amplitude)
    stable = abs(amplitude - linear) <= AGREEMENT_TOL * max(abs(amplitude), 1e-300)
    if not stable:
        collected.append("eta extrapolation unstable: linear and quadratic estimates differ by more than 2%")
    passed = stable and deviation <= AGREEMENT_TOL and not collected
    return RadialCheck(amplitude, farfield, etas, values, linear, deviation, passed, collected)


class AngularWidth(NamedTuple):
    closed_form: float
    numeric: float


def angular_width(k: float, src: SourceSpec, beam: BeamSpec) -> AngularWidth:
    """
    Tilt angle of rhat away from k z^ at which |phi|^2 drops by 1/e.

    Closed form to second order in the tilt: 1 / (k sqrt(w^2 + 1/(2 dk_perp^2))).
    """
    if not k > 0:
        raise DomainError(f"k must be positive, got {k}")
    closed = 1.0 / (k * math.sqrt(src.w ** 2 + 1.0 / (2.0 * beam.dk_perp ** 2)))
    kv = Vec3.axis(k)
    peak = abs(farfield_amplitude(kv, Vec3.axis(1.0), 1.0e6 * src.w, src, beam)) ** 2

    def excess(alpha):
        tilted = Vec3.from_spherical(1.0, alpha)
        value = abs(farfield_amplitude(kv, tilted, 1.0e6 * src.w, src, beam)) ** 2
        return np.log(max(value, 1e-300) / peak) + 1.0

    hi = min(math.pi / 2 - 1e-9, 4.0 * closed)
    if excess(hi) > 0.0:
        raise DomainError("profile does not fall by 1/e before 90 degrees")
    return AngularWidth(closed, brentq(excess, 0.0, hi, xtol=1e-12))
