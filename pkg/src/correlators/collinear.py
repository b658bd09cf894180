"""
Collinear Correlators

One-particle density rho1, interference term I and the normalized
two-particle distribution C = 1 + sign * I / (rho1 rho2) for two detectors
on the beam axis at distances z1 and z2.

Each quantity has three evaluation paths (`CorrMethod`):
- NUMERIC: momentum and polar-angle quadrature of the full integrand
- GAUSSIAN_APPROX: momentum quadrature after the angular saddle point
- ANALYTIC: closed form for a well-monochromatized beam
"""
import math
from dataclasses import dataclass, replace
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from src.core.corr_result import SANITY_BAND, CorrResult
from src.core.errors import ConvergenceError, DomainError, SymmetryError, warn_approximation
from src.core.params import BeamSpec, Collinear, CorrMethod, DetectorSpec, SourceSpec, Statistics
from src.dists.form_factors import Vec3
from src.dists.occupation import occupation
from src.dists.spectrum import log_effective_spectrum, momentum_breakpoints, momentum_window
from src.numerics.quadrature import QuadSpec, integrate_nd, tensor_rule
from src.numerics.saddle import (ANGLE_EDGES, SADDLE_MIN_P, SQRT_PI_OVER_E, angular_rule, saddle_kernel,
                                 theta_cutoff, theta_integral_grid)
from src.numerics.special import bessel_i0_scaled

TWO_PI = 2.0 * math.pi
P_CONDITION_MIN = 25.0
THETA_CUT = 50.0
SEPARABLE_THETA_NODES = 12
COUPLED_K_NODES = 6


@dataclass(frozen=True)
class CollinearSetup:
    """Source, beam and detectors with both detectors on the z axis."""
    src: SourceSpec
    beam: BeamSpec
    det: DetectorSpec
    z1: float
    z2: float

    def __post_init__(self):
        Collinear(self.z1, self.z2)

    @property
    def geometry(self) -> Collinear:
        return Collinear(self.z1, self.z2)

    @property
    def sign(self) -> int:
        return self.src.statistics.exchange_sign

    def with_(self, **changes) -> "CollinearSetup":
        return replace(self, **changes)

    def p_condition(self, zbar: Optional[float] = None) -> float:
        """w^2 k0^2 / (1 + 2 a^2 w^2 k0^2 / z^2) in units of max(1, w_z k0)."""
        zbar = zbar if zbar is not None else min(self.z1, self.z2)
        w, k0, a = self.src.w, self.beam.k0, self.det.a
        p0 = w ** 2 * k0 ** 2 / (1.0 + 2.0 * a ** 2 * w ** 2 * k0 ** 2 / zbar ** 2)
        return p0 / max(1.0, self.src.w_z * k0)

    def warnings(self) -> List[str]:
        """Approximation-validity problems of this setup."""
        messages = self.geometry.far_field_flags(self.src, self.det)
        ratio = self.p_condition()
        if ratio < P_CONDITION_MIN:
            messages.append(f"p condition: ratio {ratio:.3g} < {P_CONDITION_MIN:g}")
        if not self.beam.well_monochromatized:
            messages.append(f"beam not well monochromatized: dk_z/k0 = {self.beam.dk_z / self.beam.k0:.3g}")
        return messages


class CoherenceLengths(NamedTuple):
    lateral: float
    longitudinal: float


class SpinChannels(NamedTuple):
    triplet: float
    singlet: float
    total: float


@dataclass
class ConsistencyReport:
    """Finite-monochromator corrections of the well-monochromatized closed forms."""
    rho_divisors: Tuple[float, float]
    x: float
    interference_denominator: float
    consistent_denominator: float
    lambda_at_k0: float
    c_corrected: float
    c_literal: float
    literal_residual: float
    residual_bound: float

    def to_dict(self) -> dict:
        return {
            'rho_divisors': list(self.rho_divisors),
            'x': self.x,
            'interference_denominator': self.interference_denominator,
            'consistent_denominator': self.consistent_denominator,
            'lambda_at_k0': self.lambda_at_k0,
            'c_corrected': self.c_corrected,
            'c_literal': self.c_literal,
            'literal_residual': self.literal_residual,
            'residual_bound': self.residual_bound,
        }


def _spectrum(k, setup: CollinearSetup):
    return np.exp(log_effective_spectrum(k, setup.src, setup.beam))


def _momentum_grid(setup: CollinearSetup, spec: QuadSpec) -> Tuple[Tuple[float, float], List[float]]:
    window = momentum_window(setup.src, setup.beam, spec)
    return window, momentum_breakpoints(setup.src, setup.beam, window, spec)


def _check_saddle_range(setup: CollinearSetup, window: Tuple[float, float], zbar: float, collected: List[str]) -> None:
    w, a = setup.src.w, setup.det.a
    k = max(window[0], 1e-300)
    p_low = w ** 2 * k ** 2 / (1.0 + 2.0 * a ** 2 * w ** 2 * k ** 2 / zbar ** 2)
    if p_low < SADDLE_MIN_P:
        warn_approximation(f"saddle kernel used down to p = {p_low:.3g} < {SADDLE_MIN_P:g}", collected, stacklevel=4)


def _real_part(value, err: float, info: Dict, spec: QuadSpec, meta: Dict) -> float:
    value = complex(value)
    residual = abs(value.imag)
    meta["imag_residual"] = residual
    if residual > spec.tolerance(info.get("l1", abs(value.real))) + err:
        raise SymmetryError(f"imaginary residual {residual:.3g} of the interference term above tolerance", residual)
    return value.real


# ---------------------------------------------------------------------------
# one-particle density
# ---------------------------------------------------------------------------

def _rho1_numeric(setup: CollinearSetup, zbar: float, spec: QuadSpec, meta: Dict) -> Tuple[float, float]:
    src, a = setup.src, setup.det.a
    window, points = _momentum_grid(setup, spec)

    def integrand(k, t):
        denom = 1.0 + 2.0 * a ** 2 * src.w ** 2 * k ** 2 / zbar ** 2
        p = src.w ** 2 * k ** 2 / denom
        q = src.w_z ** 2 * k ** 2
        theta_max = np.arcsin(np.clip(np.sqrt(THETA_CUT / np.maximum(p, 1e-300)), 0.0, 1.0))
        theta = theta_max * t
        s, c = np.sin(theta), np.cos(theta)
        angular = theta_max * s * np.exp(-p * s * s - q * (1.0 - c) ** 2)
        return k ** 2 * _spectrum(k, setup) / denom * angular

    info: Dict = {}
    value, err = integrate_nd(integrand, [window, (0.0, 1.0)], spec, breakpoints=[points, ANGLE_EDGES], info=info)
    meta.update(window=list(window), nodes=info["nodes"], refinements=info["refinements"])
    pref = 2.0 * src.coupling ** 2 * src.mass ** 2 / (TWO_PI ** 4 * zbar ** 2)
    return pref * float(np.real(value)), pref * err


def _rho1_gauss(setup: CollinearSetup, zbar: float, spec: QuadSpec, meta: Dict,
                collected: List[str]) -> Tuple[float, float]:
    src, a = setup.src, setup.det.a
    window, points = _momentum_grid(setup, spec)
    _check_saddle_range(setup, window, zbar, collected)

    def integrand(k):
        denom = 1.0 + 2.0 * a ** 2 * src.w ** 2 * k ** 2 / zbar ** 2
        p = np.maximum(src.w ** 2 * k ** 2 / denom, 1e-300)
        return k ** 2 * _spectrum(k, setup) / denom * saddle_kernel(p)

    info: Dict = {}
    value, err = integrate_nd(integrand, [window], spec, breakpoints=[points], info=info)
    meta.update(window=list(window), nodes=info["nodes"])
    pref = 2.0 * src.coupling ** 2 * src.mass ** 2 / (TWO_PI ** 4 * zbar ** 2)
    return pref * float(np.real(value)), pref * err


def _rho1_analytic(setup: CollinearSetup, zbar: float) -> float:
    src, beam = setup.src, setup.beam
    n0 = occupation(src.omega(beam.k0), src)
    return (src.coupling ** 2 * src.mass ** 2 * SQRT_PI_OVER_E * n0
            / (TWO_PI ** 5 * src.w ** 2 * zbar ** 2 * beam.dk_perp ** 2))


def rho1(setup: CollinearSetup, zbar: float, method=CorrMethod.NUMERIC, spec: Optional[QuadSpec] = None) -> CorrResult:
    """
    One-particle density at a detector on the axis at distance zbar.

    Args:
        setup: Collinear setup
        zbar: Detector distance
        method: CorrMethod or its name
        spec: Quadrature settings (default from the tolerance ladder)

    Returns:
        CorrResult with the lambda^2-scaled density; `normalized` is rho1 / lambda^2

    Raises:
        ConvergenceError: If the quadrature misses its tolerance
    """
    method = CorrMethod.parse(method)
    if not zbar > 0:
        raise DomainError(f"zbar must be positive, got {zbar}")
    spec = spec or QuadSpec.for_method(method)
    collected = list(setup.warnings())
    meta: Dict = {"zbar": zbar}

    if method is CorrMethod.NUMERIC:
        value, err = _rho1_numeric(setup, zbar, spec, meta)
    elif method is CorrMethod.GAUSSIAN_APPROX:
        value, err = _rho1_gauss(setup, zbar, spec, meta, collected)
    else:
        value, err = _rho1_analytic(setup, zbar), 0.0

    return CorrResult(value=value, method=method, abs_error=abs(err),
                      normalized=value / setup.src.coupling ** 2, meta=meta, warnings=collected)


# ---------------------------------------------------------------------------
# interference term
# ---------------------------------------------------------------------------

def _phase(k1, k2, setup: CollinearSetup):
    dk = k1 - k2
    return np.exp(-dk * dk * setup.det.d ** 2 - 1j * (setup.z1 - setup.z2) * dk)


def _coupled_angular(k1, k2, setup: CollinearSetup, nodes: int):
    """
    Double polar-angle integral of the detector-averaged integrand at a != 0.

    The azimuthal average of the cross term gives I0(B); the factor is
    carried as exp(E) * i0e(B) with E = exponent + B <= 0.
    """
    src, a = setup.src, setup.det.a
    w2 = src.w ** 2
    k1, k2 = np.broadcast_arrays(np.asarray(k1, dtype=float), np.asarray(k2, dtype=float))
    ksq = k1 ** 2 + k2 ** 2
    s_sum = sum(a ** 2 * w2 ** 2 / (z ** 2 + a ** 2 * w2 * ksq) for z in (setup.z1, setup.z2))
    lam_min = w2 - 0.5 * s_sum * ksq
    t, wt = angular_rule(nodes)
    th1 = theta_cutoff(lam_min, k1, THETA_CUT)
    th2 = theta_cutoff(lam_min, k2, THETA_CUT)

    def expand(x):
        return x[..., None, None]

    theta1 = expand(th1) * t[:, None]
    theta2 = expand(th2) * t[None, :]
    s1, c1 = np.sin(theta1), np.cos(theta1)
    s2, c2 = np.sin(theta2), np.cos(theta2)
    kk1, kk2, ss = expand(k1 ** 2), expand(k2 ** 2), expand(s_sum)
    p1 = w2 - 0.5 * ss * kk1
    p2 = w2 - 0.5 * ss * kk2
    cross = ss * kk1 * kk2 * s1 * s2
    exponent = (-(p1 * kk1 * s1 * s1 + src.w_z ** 2 * kk1 * (1.0 - c1) ** 2)
                - (p2 * kk2 * s2 * s2 + src.w_z ** 2 * kk2 * (1.0 - c2) ** 2) + cross)
    values = s1 * s2 * np.exp(exponent) * bessel_i0_scaled(cross)
    return th1 * th2 * np.einsum("...ij,i,j->...", values, wt, wt)


def _interference_numeric(setup: CollinearSetup, spec: QuadSpec, meta: Dict) -> Tuple[complex, float, Dict]:
    """
    Brute-force interference integral, angular rules included.

    The error adds the change of the angular rule at half its nodes to the
    momentum error. On the coupled path the angular rule is doubled, up to
    `spec.max_refine` times, until that change meets the tolerance.

    Raises:
        ConvergenceError: If either error stays above tolerance
    """
    src, a = setup.src, setup.det.a
    window, points = _momentum_grid(setup, spec)
    box, edges = [window, window], [points, points]
    pref = 2.0 * src.coupling ** 4 * src.mass ** 4 / (TWO_PI ** 8 * setup.z1 ** 2 * setup.z2 ** 2)
    info: Dict = {}

    if a == 0.0:
        def separable(theta_nodes):
            def profile(k):
                return k ** 2 * _spectrum(k, setup) * theta_integral_grid(src.w ** 2 * k ** 2, src.w_z ** 2 * k ** 2,
                                                                          nodes=theta_nodes)

            return lambda k1, k2: profile(k1) * profile(k2) * _phase(k1, k2, setup)

        value, err = integrate_nd(separable(SEPARABLE_THETA_NODES), box, spec, breakpoints=edges, info=info)
        coarse, _ = tensor_rule(separable(SEPARABLE_THETA_NODES // 2), box, edges, info["nodes"], spec.chunk_points)
        theta_err = abs(value - coarse)
        meta.update(path="separable", theta_nodes=SEPARABLE_THETA_NODES)
    else:
        w2 = src.w ** 2

        def coupled(theta_nodes):
            def integrand(k1, k2):
                ksq = k1 ** 2 + k2 ** 2
                d1 = 1.0 + a ** 2 * w2 * ksq / setup.z1 ** 2
                d2 = 1.0 + a ** 2 * w2 * ksq / setup.z2 ** 2
                radial = k1 ** 2 * k2 ** 2 * _spectrum(k1, setup) * _spectrum(k2, setup) / (d1 * d2)
                return radial * _phase(k1, k2, setup) * _coupled_angular(k1, k2, setup, theta_nodes)

            return integrand

        def chunk(theta_nodes):
            nt = len(angular_rule(theta_nodes)[0])
            return max(1, spec.chunk_points // (nt * nt))

        theta_nodes = spec.theta_nodes
        value, err = integrate_nd(coupled(theta_nodes), box, spec.with_(chunk_points=chunk(theta_nodes)),
                                  breakpoints=edges, nodes=[COUPLED_K_NODES, COUPLED_K_NODES], info=info)
        half = max(2, theta_nodes // 2)
        previous, _ = tensor_rule(coupled(half), box, edges, info["nodes"], chunk(half))
        theta_err = abs(value - previous)
        theta_refinements = 0
        while theta_err > spec.tolerance(info["l1"]) and theta_refinements < spec.max_refine:
            theta_nodes *= 2
            previous = value
            value, _ = tensor_rule(coupled(theta_nodes), box, edges, info["nodes"], chunk(theta_nodes))
            theta_err = abs(value - previous)
            theta_refinements += 1
        if theta_err > spec.tolerance(info["l1"]):
            raise ConvergenceError(
                f"angular rule: error estimate {pref * theta_err:.3g} above tolerance "
                f"{pref * spec.tolerance(info['l1']):.3g} at {theta_nodes} nodes per panel",
                best_estimate=pref * complex(value), abs_error=pref * (err + theta_err))
        meta.update(path="coupled", theta_nodes=theta_nodes, theta_refinements=theta_refinements)

    meta.update(window=list(window), nodes=info["nodes"], refinements=info["refinements"],
                theta_rule_error=pref * theta_err)
    return pref * complex(value), pref * (err + theta_err), {"l1": pref * info["l1"]}


def _interference_gauss(setup: CollinearSetup, spec: QuadSpec, meta: Dict,
                        collected: List[str]) -> Tuple[complex, float, Dict]:
    src, a = setup.src, setup.det.a
    window, points = _momentum_grid(setup, spec)
    _check_saddle_range(setup, window, min(setup.z1, setup.z2), collected)
    inv = 0.5 / setup.z1 ** 2 + 0.5 / setup.z2 ** 2

    def integrand(k1, k2):
        denom = 1.0 + a ** 2 * src.w ** 2 * (k1 ** 2 + k2 ** 2) * inv
        return _spectrum(k1, setup) * _spectrum(k2, setup) / denom * _phase(k1, k2, setup)

    info: Dict = {}
    value, err = integrate_nd(integrand, [window, window], spec, breakpoints=[points, points], info=info)
    meta.update(window=list(window), nodes=info["nodes"], refinements=info["refinements"])
    pref = (src.coupling ** 4 * src.mass ** 4 * (math.pi / math.e)
            / (2.0 * TWO_PI ** 8 * src.w ** 4 * setup.z1 ** 2 * setup.z2 ** 2))
    return pref * complex(value), pref * err, {"l1": pref * info["l1"]}


def _dip_factors(setup: CollinearSetup) -> Tuple[float, float, float]:
    """(X, L, E): lateral X, longitudinal resolution L and separation decay E."""
    src, beam, det = setup.src, setup.beam, setup.det
    x = det.a ** 2 * src.w ** 2 * beam.k0 ** 2 * (1.0 / setup.z1 ** 2 + 1.0 / setup.z2 ** 2)
    resolution = 1.0 / math.sqrt(1.0 + 4.0 * beam.dk_z ** 2 * det.d ** 2)
    decay = math.exp(-(setup.z1 - setup.z2) ** 2 / (1.0 / beam.dk_z ** 2 + 4.0 * det.d ** 2))
    return x, resolution, decay


def _interference_analytic(setup: CollinearSetup) -> float:
    src, beam = setup.src, setup.beam
    n0 = occupation(src.omega(beam.k0), src)
    x, resolution, decay = _dip_factors(setup)
    pref = (src.coupling ** 4 * src.mass ** 4 * (math.pi / math.e) * n0 ** 2
            / (2.0 * TWO_PI ** 10 * src.w ** 4 * setup.z1 ** 2 * setup.z2 ** 2 * beam.dk_perp ** 4))
    return pref * resolution * decay / (1.0 + x)


def interference(setup: CollinearSetup, method=CorrMethod.NUMERIC, spec: Optional[QuadSpec] = None) -> CorrResult:
    """
    Interference term of the two-particle distribution.

    The value is positive for every statistics; the exchange sign enters only
    in `c_normalized`. The imaginary part vanishes by k1 <-> k2 symmetry and
    its residual is reported in `meta['imag_residual']`.

    Raises:
        ConvergenceError: If the quadrature misses its tolerance
        SymmetryError: If the imaginary residual exceeds the tolerance
    """
    method = CorrMethod.parse(method)
    spec = spec or QuadSpec.for_method(method)
    collected = list(setup.warnings())
    meta: Dict = {"z1": setup.z1, "z2": setup.z2}

    if method is CorrMethod.ANALYTIC:
        value, err = _interference_analytic(setup), 0.0
    else:
        if method is CorrMethod.NUMERIC:
            raw, err, info = _interference_numeric(setup, spec, meta)
        else:
            raw, err, info = _interference_gauss(setup, spec, meta, collected)
        value = _real_part(raw, err, info, spec, meta)

    return CorrResult(value=value, method=method, abs_error=abs(err),
                      normalized=value / setup.src.coupling ** 4, meta=meta, warnings=collected)


# ---------------------------------------------------------------------------
# normalized two-particle distribution
# ---------------------------------------------------------------------------

def c_analytic(setup: CollinearSetup) -> float:
    """
    Closed-form C for a well-monochromatized beam:

        1 + sign * 1/2 * [1 + X]^-1 * [1 + 4 dk_z^2 d^2]^-1/2
                 * exp[-(z1 - z2)^2 / (1/dk_z^2 + 4 d^2)]

    with X = a^2 w^2 k0^2 (1/z1^2 + 1/z2^2).
    """
    x, resolution, decay = _dip_factors(setup)
    return 1.0 + setup.sign * 0.5 * resolution * decay / (1.0 + x)


def c_normalized(setup: CollinearSetup, method=CorrMethod.NUMERIC, spec: Optional[QuadSpec] = None) -> CorrResult:
    """
    Normalized two-particle distribution C = 1 + sign * I / (rho1(z1) rho1(z2)).

    ANALYTIC returns `c_analytic`; the other methods divide the quadrature
    results and propagate their errors.

    Raises:
        DomainError: If the source band is empty (rho1 = 0)
        ConvergenceError, SymmetryError: From the underlying quadratures
    """
    method = CorrMethod.parse(method)
    collected = list(setup.warnings())

    if method is CorrMethod.ANALYTIC:
        if not setup.beam.well_monochromatized:
            warn_approximation("closed form used for a beam that is not well monochromatized", collected)
        value = c_analytic(setup)
        return CorrResult(value=value, method=method, meta={"z1": setup.z1, "z2": setup.z2}, warnings=collected)

    spec = spec or QuadSpec.for_method(method)
    first = rho1(setup, setup.z1, method, spec)
    second = first if setup.z2 == setup.z1 else rho1(setup, setup.z2, method, spec)
    inter = interference(setup, method, spec)
    if first.value <= 0.0 or second.value <= 0.0:
        raise DomainError("one-particle density vanishes: the source band does not reach the monochromator window")

    ratio = inter.value / (first.value * second.value)
    err = (inter.abs_error / (first.value * second.value)
           + abs(ratio) * (first.rel_error + second.rel_error))
    value = 1.0 + setup.sign * ratio
    for message in first.warnings + second.warnings + inter.warnings:
        if message not in collected:
            collected.append(message)
    low, high = SANITY_BAND
    if setup.src.statistics is Statistics.FERMION and not low <= value <= high:
        collected.append(f"fermion C = {value:.6g} outside the sanity band")

    meta = {"z1": setup.z1, "z2": setup.z2, "rho1": first.value, "rho2": second.value,
            "interference": inter.value, "imag_residual": inter.meta.get("imag_residual", 0.0)}
    return CorrResult(value=value, method=method, abs_error=err, normalized=value, meta=meta, warnings=collected)


def coherence_lengths(setup: CollinearSetup, zbar: Optional[float] = None) -> CoherenceLengths:
    """
    Lateral z / (sqrt(2) w k0) and longitudinal 1 / (2 dk_z) coherence lengths.

    Without `zbar` the lateral length uses the effective distance with
    1/z^2 = (1/z1^2 + 1/z2^2) / 2.
    """
    if zbar is None:
        zbar = 1.0 / math.sqrt(0.5 * (1.0 / setup.z1 ** 2 + 1.0 / setup.z2 ** 2))
    lateral = zbar / (math.sqrt(2.0) * setup.src.w * setup.beam.k0)
    return CoherenceLengths(lateral, 1.0 / (2.0 * setup.beam.dk_z))


def lambda_factor(k1: Vec3, k2: Vec3, src: SourceSpec, beam: BeamSpec) -> float:
    """Lambda of the detector-integration determinant for a momentum pair."""
    n1, n2 = float(k1.norm()), float(k2.norm())
    ksq = n1 ** 2 + n2 ** 2
    if ksq == 0.0:
        raise DomainError("lambda_factor needs a nonzero momentum")
    w2 = src.w ** 2
    return (1.0 + 1.0 / (2.0 * w2 * beam.dk_perp ** 2)
            - (1.0 - beam.k0 * (n1 + n2) / ksq) / (2.0 * w2 * beam.dk_z ** 2)
            - (src.w_z ** 2 / w2) * (1.0 - (n1 * k1.z + n2 * k2.z) / ksq))


def consistency_corrections(setup: CollinearSetup) -> ConsistencyReport:
    """
    Corrections from the finite lateral monochromator width.

    rho1(z_i) is divided by 1 + u_i with u_i = a^2 k0^2 / (dk_perp^2 z_i^2);
    the interference denominator 1 + X becomes 1 + X (1 + 1/(w^2 dk_perp^2)).
    Applied consistently, (1 + X)(1 + u1)(1 + u2), the corrections cancel
    in C; the literal denominator leaves a residual of second order in a^2.
    """
    src, beam, det = setup.src, setup.beam, setup.det
    u1, u2 = (det.a ** 2 * beam.k0 ** 2 / (beam.dk_perp ** 2 * z ** 2) for z in (setup.z1, setup.z2))
    x, resolution, decay = _dip_factors(setup)
    literal = 1.0 + x * (1.0 + 1.0 / (src.w ** 2 * beam.dk_perp ** 2))
    consistent = (1.0 + x) * (1.0 + u1) * (1.0 + u2)

    dip = 0.5 * resolution * decay
    corrected = 1.0 + setup.sign * dip * (1.0 + u1) * (1.0 + u2) / consistent
    c_literal = 1.0 + setup.sign * dip * (1.0 + u1) * (1.0 + u2) / literal
    bound = 0.5 * (u1 * u2 + x * (u1 + u2 + u1 * u2))
    return ConsistencyReport(
        rho_divisors=(1.0 + u1, 1.0 + u2),
        x=x,
        interference_denominator=literal,
        consistent_denominator=consistent,
        lambda_at_k0=lambda_factor(Vec3.axis(beam.k0), Vec3.axis(beam.k0), src, beam),
        c_corrected=corrected,
        c_literal=c_literal,
        literal_residual=c_literal - c_analytic(setup),
        residual_bound=bound,
    )


# ---------------------------------------------------------------------------
# dip shape
# ---------------------------------------------------------------------------

def dip_depth(setup: CollinearSetup, method=CorrMethod.ANALYTIC, spec: Optional[QuadSpec] = None) -> float:
    """|1 - C(z, z)| at z = z2."""
    aligned = setup.with_(z1=setup.z2)
    return abs(1.0 - c_normalized(aligned, method, spec).value)


def dip_half_width(setup: CollinearSetup, method=CorrMethod.ANALYTIC, spec: Optional[QuadSpec] = None) -> float:
    """
    Detector separation at which the dip has fallen to depth / e.

    Found by bracketing from the closed-form width sqrt(1/dk_z^2 + 4 d^2)
    and Brent's method on |1 - C(z2 + s, z2)|.

    Raises:
        DomainError: If there is no dip (classical statistics)
    """
    if setup.sign == 0:
        raise DomainError("classical particles show no dip")
    depth = dip_depth(setup, method, spec)
    target = depth / math.e

    def excess(sep):
        shifted = setup.with_(z1=setup.z2 + sep)
        return abs(1.0 - c_normalized(shifted, method, spec).value) - target

    guess = math.sqrt(1.0 / setup.beam.dk_z ** 2 + 4.0 * setup.det.d ** 2)
    lo, hi = 0.0, guess
    for _ in range(30):
        if excess(hi) < 0.0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise DomainError("dip half width could not be bracketed")
    return brentq(excess, lo, hi, xtol=1e-6 * guess)


def overlap_from_c(c_value: float, statistics: Statistics) -> float:
    """Normalized pair overlap x with C = 1 + sign * x / 2."""
    sign = Statistics.parse(statistics).exchange_sign
    if sign == 0:
        return 0.0
    return 2.0 * (c_value - 1.0) / sign


def spin_channels(normalized_overlap: float, statistics=Statistics.FERMION) -> SpinChannels:
    """
    Spin-resolved parts of C for an unpolarized spin-1/2 pair.

    The spin triplet (weight 3/4) pairs with the exchange-odd spatial state and
    the singlet (weight 1/4) with the exchange-even one: at full overlap the
    fermion value is 1 - 3/4 + 1/4 = 0.5.
    """
    x = float(normalized_overlap)
    if not 0.0 <= x <= 1.0 + 1e-12:
        raise DomainError(f"normalized overlap must lie in [0, 1], got {x}")
    sign = Statistics.parse(statistics).exchange_sign
    triplet = 0.75 * (1.0 + sign * x)
    singlet = 0.25 * (1.0 - sign * x)
    return SpinChannels(triplet, singlet, triplet + singlet)
