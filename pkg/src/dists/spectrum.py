"""
Effective emitted spectrum N(omega_k) f^2(k z^) and the momentum grid
every correlator integrates over.
"""
import math
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from src.core.params import BeamSpec, SourceSpec, Statistics
from src.dists.form_factors import log_mono_f, mono_f2_axis, Vec3
from src.dists.occupation import log_occupation, occupation
from src.numerics.quadrature import QuadSpec, integrate_1d

SCAN_POINTS = 4001


def effective_spectrum(k, src: SourceSpec, beam: BeamSpec):
    """N(omega_k) f^2(k z^); the weight of momentum k in the emitted beam."""
    return occupation(src.omega(np.asarray(k, dtype=float)), src) * mono_f2_axis(k, beam)


def log_effective_spectrum(k, src: SourceSpec, beam: BeamSpec):
    k = np.asarray(k, dtype=float)
    return log_occupation(src.omega(k), src) + 2.0 * log_mono_f(Vec3.axis(k), beam)


def _lowest_admissible_k(src: SourceSpec) -> float:
    if src.statistics is Statistics.BOSON and src.mu >= 0:
        return src.fermi_momentum * (1.0 + 1e-9) + 1e-12
    return 0.0


def momentum_window(src: SourceSpec, beam: BeamSpec, spec: Optional[QuadSpec] = None) -> Tuple[float, float]:
    """
    Momentum interval carrying the emitted spectrum.

    Starts from k0 +/- n dk_z (k >= 0) and widens by a bracketing scan until
    N f^2 at both edges is below `spec.edge_fraction` of its peak.
    """
    spec = spec or QuadSpec()
    n = spec.k_window_sigmas
    lo = max(0.0, beam.k0 - n * beam.dk_z)
    hi = beam.k0 + n * beam.dk_z
    floor = _lowest_admissible_k(src)
    threshold = math.log(spec.edge_fraction)

    span = n * beam.dk_z
    for _ in range(12):
        grid_lo = max(floor, beam.k0 - 2.0 * span)
        grid_hi = beam.k0 + 2.0 * span
        ks = np.linspace(grid_lo, grid_hi, SCAN_POINTS)
        logs = log_effective_spectrum(ks, src, beam)
        above = np.nonzero(logs - logs.max() > threshold)[0]
        low_closed = above[0] > 0 or grid_lo <= floor
        high_closed = above[-1] < len(ks) - 1
        if low_closed and high_closed:
            step = ks[1] - ks[0]
            lo = min(lo, max(floor, ks[max(above[0] - 1, 0)] - step))
            hi = max(hi, ks[min(above[-1] + 1, len(ks) - 1)] + step)
            break
        span *= 2.0
    return max(lo, floor), hi


def momentum_breakpoints(src: SourceSpec, beam: BeamSpec, window: Tuple[float, float],
                         spec: Optional[QuadSpec] = None) -> List[float]:
    """
    Interior panel edges: uniform base panels plus edges graded geometrically
    around the Fermi momentum, where the Fermi step of width 1/(beta k_F) sits.
    """
    spec = spec or QuadSpec()
    lo, hi = window
    points = list(np.linspace(lo, hi, spec.k_panels + 1)[1:-1])
    kf = src.fermi_momentum
    if src.statistics is Statistics.FERMION and lo < kf < hi:
        step = src.mass / (src.beta * kf)
        points.append(kf)
        offset = step
        while offset < hi - lo:
            points.extend([kf - offset, kf + offset])
            offset *= 2.0
    return sorted(p for p in set(points) if lo < p < hi)


class SpectrumMoments(NamedTuple):
    weight: float
    mean: float
    std: float


def spectrum_moments(src: SourceSpec, beam: BeamSpec, spec: Optional[QuadSpec] = None) -> SpectrumMoments:
    """Integral, mean momentum and standard deviation of N f^2 over the window."""
    spec = spec or QuadSpec(rel_tol=1e-10)
    lo, hi = momentum_window(src, beam, spec)
    points = momentum_breakpoints(src, beam, (lo, hi), spec)

    def moment(power):
        value, _ = integrate_1d(lambda k: k ** power * float(effective_spectrum(k, src, beam)), lo, hi, spec, points=points)
        return value

    m0 = moment(0)
    if m0 <= 0.0:
        return SpectrumMoments(0.0, float("nan"), float("nan"))
    mean = moment(1) / m0
    var = max(moment(2) / m0 - mean ** 2, 0.0)
    return SpectrumMoments(m0, mean, math.sqrt(var))
