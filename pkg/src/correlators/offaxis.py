"""
Off-axis Correlators

Lowest-order two-particle distribution for detectors placed off the beam
axis at r1 = r1 (sin T cos P, sin T sin P, cos T) and
r2 = r2 (-sin T cos P, -sin T sin P, cos T). Lateral effects show up here
without the second-order saddle expansion the collinear dip needs.
"""
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.core.corr_result import CorrResult
from src.core.errors import DomainError
from src.core.params import BeamSpec, CorrMethod, DetectorSpec, OffAxis, SourceSpec, Statistics, SymmetricPair
from src.dists.form_factors import log_mono_f2_angle
from src.dists.occupation import log_occupation
from src.dists.spectrum import momentum_breakpoints
from src.numerics.quadrature import QuadSpec, integrate_nd

TWO_PI = 2.0 * math.pi
LATERAL_RATIO_MIN = 10.0
ORACLE_SIGMAS = 10.0


@dataclass(frozen=True)
class OffAxisAux:
    """Auxiliary widths D1 <= D2 <= D3 of the off-axis closed form."""
    d1: float
    d2: float
    d3: float

    def __post_init__(self):
        slack = 1.0 + 1e-12
        if not (self.d1 > 0.0 and self.d1 <= self.d2 * slack and self.d2 <= self.d3 * slack):
            raise DomainError(f"auxiliary widths must satisfy 0 < d1 <= d2 <= d3, got {self}")

    def to_dict(self) -> Dict[str, float]:
        return {'d1': self.d1, 'd2': self.d2, 'd3': self.d3}


def d_funcs(theta_d: float, src: SourceSpec, beam: BeamSpec, det: DetectorSpec) -> OffAxisAux:
    """D1, D2, D3 at polar angle theta_d."""
    s2, c = math.sin(theta_d) ** 2, math.cos(theta_d)
    kz2, kp2 = beam.dk_z ** 2, beam.dk_perp ** 2
    d1 = kz2 * s2 + kp2 * c * c + 2.0 * src.w_z ** 2 * kz2 * kp2 * (1.0 - c) ** 2
    d2 = d1 + 2.0 * src.w ** 2 * kz2 * kp2 * s2
    d3 = d2 + 4.0 * det.a ** 2 * kz2 * kp2 * s2 + 4.0 * det.d ** 2 * kz2 * kp2 * c * c
    return OffAxisAux(d1, d2, d3)


def d_tilde_funcs(x: float, y: float, z: float, src: SourceSpec, beam: BeamSpec, det: DetectorSpec) -> OffAxisAux:
    """r^2 D_i written in the Cartesian coordinates of the symmetric pair."""
    rho2 = x * x + y * y
    r = math.sqrt(rho2 + z * z)
    kz2, kp2 = beam.dk_z ** 2, beam.dk_perp ** 2
    d1 = kz2 * rho2 + kp2 * z * z + 2.0 * src.w_z ** 2 * kz2 * kp2 * (r - z) ** 2
    d2 = d1 + 2.0 * src.w ** 2 * kz2 * kp2 * rho2
    d3 = d2 + 4.0 * kz2 * kp2 * (det.a ** 2 * rho2 + det.d ** 2 * z * z)
    return OffAxisAux(d1, d2, d3)


def _preconditions(src: SourceSpec, beam: BeamSpec) -> List[str]:
    messages = []
    if src.w_z > 0 and src.w / src.w_z < LATERAL_RATIO_MIN:
        messages.append(f"w/w_z = {src.w / src.w_z:.3g} < {LATERAL_RATIO_MIN:g}")
    if src.w * beam.k0 < LATERAL_RATIO_MIN:
        messages.append(f"w k0 = {src.w * beam.k0:.3g} < {LATERAL_RATIO_MIN:g}")
    if not beam.well_monochromatized:
        messages.append(f"beam not well monochromatized: dk_z/k0 = {beam.dk_z / beam.k0:.3g}")
    return messages


def _sign(src: SourceSpec, statistics) -> int:
    stats = src.statistics if statistics is None else Statistics.parse(statistics)
    return stats.exchange_sign


def c_offaxis(theta_d: float, r1: float, r2: float, src: SourceSpec, beam: BeamSpec, det: DetectorSpec,
              statistics=None) -> CorrResult:
    """
    Closed-form C for the off-axis pair at polar angle theta_d.

    C = 1 + sign * D1 / (2 sqrt(D2 D3))
          * exp[-w^2 k0^2 dk_perp^4 sin^2(2 theta_d) / (2 D1 D2)
                - dk_z^2 dk_perp^2 (r1 - r2)^2 / D3]

    Args:
        theta_d: Polar angle of both detectors
        r1, r2: Detector distances
        src, beam, det: Source, beam and detector specs
        statistics: Overrides src.statistics when given

    Returns:
        CorrResult; precondition problems (w/w_z, w k0, broad beam) in `warnings`
    """
    geom = OffAxis(theta_d, 0.0, r1, r2)
    aux = d_funcs(theta_d, src, beam, det)
    kp2, kz2 = beam.dk_perp ** 2, beam.dk_z ** 2
    lateral = src.w ** 2 * beam.k0 ** 2 * kp2 ** 2 * math.sin(2.0 * theta_d) ** 2 / (2.0 * aux.d1 * aux.d2)
    longitudinal = kz2 * kp2 * (r1 - r2) ** 2 / aux.d3
    amplitude = aux.d1 / (2.0 * math.sqrt(aux.d2 * aux.d3))
    value = 1.0 + _sign(src, statistics) * amplitude * math.exp(-lateral - longitudinal)

    collected = _preconditions(src, beam) + geom.far_field_flags(src, det)
    meta = dict(aux.to_dict(), theta_d=theta_d, r1=r1, r2=r2, lateral_exponent=lateral)
    return CorrResult(value=value, method=CorrMethod.ANALYTIC, normalized=value, meta=meta, warnings=collected)


def c_offaxis_collinear_limit(z1: float, z2: float, beam: BeamSpec, det: DetectorSpec,
                              statistics=Statistics.FERMION) -> float:
    """theta_d = 0 form: 1 + sign/(2 sqrt(1 + 4 dk_z^2 d^2)) exp[-(z1 - z2)^2 / (1/dk_z^2 + 4 d^2)]."""
    sign = Statistics.parse(statistics).exchange_sign
    decay = math.exp(-(z1 - z2) ** 2 / (1.0 / beam.dk_z ** 2 + 4.0 * det.d ** 2))
    return 1.0 + sign * 0.5 / math.sqrt(1.0 + 4.0 * beam.dk_z ** 2 * det.d ** 2) * decay


def c_symmetric_pair(x: float, y: float, z: float, src: SourceSpec, beam: BeamSpec, det: DetectorSpec,
                     statistics=None) -> CorrResult:
    """C for detectors at (x, y, z) and (-x, -y, z)."""
    geom = SymmetricPair(x, y, z)
    aux = d_tilde_funcs(x, y, z, src, beam, det)
    lateral = (2.0 * src.w ** 2 * beam.k0 ** 2 * beam.dk_perp ** 4 * (x * x + y * y) * z * z
               / (aux.d1 * aux.d2))
    value = 1.0 + _sign(src, statistics) * aux.d1 / (2.0 * math.sqrt(aux.d2 * aux.d3)) * math.exp(-lateral)
    collected = _preconditions(src, beam) + geom.far_field_flags(src, det)
    meta = dict(aux.to_dict(), rbar=geom.rbar, theta_d=geom.theta_d, lateral_exponent=lateral)
    return CorrResult(value=value, method=CorrMethod.ANALYTIC, normalized=value, meta=meta, warnings=collected)


def mono_peak_momentum(theta_d: float, beam: BeamSpec) -> float:
    """Momentum maximizing f^2(k, theta_d): k0 cos T dk_perp^2 / (dk_perp^2 cos^2 T + dk_z^2 sin^2 T)."""
    c, s = math.cos(theta_d), math.sin(theta_d)
    return beam.k0 * c * beam.dk_perp ** 2 / (beam.dk_perp ** 2 * c * c + beam.dk_z ** 2 * s * s)


@dataclass
class OracleValues:
    """
    Momentum-quadrature values of the off-axis densities.

    Densities are kept as logarithms; the interference term as a scaled real
    value times exp(log_interference_scale).
    """
    log_rho1: float
    log_rho2: float
    interference_scaled: float
    log_interference_scale: float
    c_bar: float
    abs_error: float
    meta: Dict

    @property
    def rho1(self) -> float:
        return math.exp(self.log_rho1)

    @property
    def rho2(self) -> float:
        return math.exp(self.log_rho2)

    @property
    def interference(self) -> float:
        return self.interference_scaled * math.exp(self.log_interference_scale)


def _oracle_window(theta_d: float, src: SourceSpec, beam: BeamSpec, aux_width: float) -> Tuple[float, float]:
    c = math.cos(theta_d)
    kp2, kz2 = beam.dk_perp ** 2, beam.dk_z ** 2
    centre = beam.k0 * c * kp2 / aux_width
    sigma = math.sqrt(kz2 * kp2 / aux_width)
    lo = max(0.0, centre - ORACLE_SIGMAS * sigma)
    if src.statistics is Statistics.BOSON and src.mu >= 0:
        lo = max(lo, src.fermi_momentum * (1.0 + 1e-9) + 1e-12)
    return lo, max(centre + ORACLE_SIGMAS * sigma, lo + sigma)


def _log_weight(k, theta_d: float, src: SourceSpec, beam: BeamSpec, lateral: bool):
    s2, c = math.sin(theta_d) ** 2, math.cos(theta_d)
    width = src.w_z ** 2 * (1.0 - c) ** 2 + (src.w ** 2 * s2 if lateral else 0.0)
    return log_occupation(src.omega(k), src) + log_mono_f2_angle(k, theta_d, beam) - width * k * k


def _log_rho(theta_d: float, r: float, src: SourceSpec, beam: BeamSpec, spec: QuadSpec,
             window: Tuple[float, float], points: List[float]) -> Tuple[float, float]:
    grid = np.linspace(window[0], window[1], 2001)
    peak = float(np.max(_log_weight(grid, theta_d, src, beam, lateral=False)))
    value, err = integrate_nd(lambda k: np.exp(_log_weight(k, theta_d, src, beam, lateral=False) - peak),
                              [window], spec, breakpoints=[points])
    if value <= 0.0:
        raise DomainError("one-particle density vanishes at this angle")
    log_pref = (2.0 * math.log(src.coupling * src.mass) - 4.0 * math.log(TWO_PI)
                - 2.0 * math.log(src.w * r))
    return log_pref + peak + math.log(value), err / value


def appendixB_oracles(theta_d: float, r1: float, r2: float, src: SourceSpec, beam: BeamSpec, det: DetectorSpec,
                      statistics=None, spec: Optional[QuadSpec] = None) -> OracleValues:
    """
    One- and two-particle momentum integrals behind the off-axis closed form.

    rho(r) = l^2 m^2 / ((2 pi)^4 w^2 r^2) int dk N f^2(k, T) exp[-w_z^2 k^2 (1 - cos T)^2]
    I = l^4 m^4 / (2 (2 pi)^8 w^4 r1^2 r2^2) int dk1 dk2 N N f^2 f^2
          exp[-i (k1 - k2)(r1 - r2) - (k1 - k2)^2 (a^2 sin^2 T + d^2 cos^2 T)
              - (k1^2 + k2^2)(w^2 sin^2 T + w_z^2 (1 - cos T)^2)]

    Exponentials are shifted by their maxima on the momentum window so large
    k0 sin T does not underflow.

    Raises:
        ConvergenceError: If a quadrature misses its tolerance
        DomainError: If the densities vanish
    """
    OffAxis(theta_d, 0.0, r1, r2)
    spec = spec or QuadSpec(rel_tol=1e-8)
    aux = d_funcs(theta_d, src, beam, det)
    s2, c2 = math.sin(theta_d) ** 2, math.cos(theta_d) ** 2

    rho_window = _oracle_window(theta_d, src, beam, aux.d1)
    rho_points = momentum_breakpoints(src, beam, rho_window, spec)
    log_rho1, rel1 = _log_rho(theta_d, r1, src, beam, spec, rho_window, rho_points)
    log_rho2, rel2 = _log_rho(theta_d, r2, src, beam, spec, rho_window, rho_points)

    window = _oracle_window(theta_d, src, beam, aux.d2)
    points = momentum_breakpoints(src, beam, window, spec)
    grid = np.linspace(window[0], window[1], 2001)
    peak = float(np.max(_log_weight(grid, theta_d, src, beam, lateral=True)))
    smear = det.a ** 2 * s2 + det.d ** 2 * c2

    def integrand(k1, k2):
        dk = k1 - k2
        log_w = (_log_weight(k1, theta_d, src, beam, True) + _log_weight(k2, theta_d, src, beam, True)
                 - 2.0 * peak - dk * dk * smear)
        return np.exp(log_w - 1j * dk * (r1 - r2))

    info: Dict = {}
    raw, err = integrate_nd(integrand, [window, window], spec, breakpoints=[points, points], info=info)
    scaled = complex(raw).real
    log_scale = (4.0 * math.log(src.coupling * src.mass) - math.log(2.0) - 8.0 * math.log(TWO_PI)
                 - 4.0 * math.log(src.w) - 2.0 * math.log(r1 * r2) + 2.0 * peak)

    ratio = scaled * math.exp(log_scale - log_rho1 - log_rho2)
    sign = _sign(src, statistics)
    abs_err = abs(sign) * (err * math.exp(log_scale - log_rho1 - log_rho2) + abs(ratio) * (rel1 + rel2))
    meta = {"imag_residual": abs(complex(raw).imag) * math.exp(log_scale), "nodes": info["nodes"],
            "window": list(window)}
    return OracleValues(log_rho1=log_rho1, log_rho2=log_rho2, interference_scaled=scaled,
                        log_interference_scale=log_scale, c_bar=1.0 + sign * ratio, abs_error=abs_err, meta=meta)
