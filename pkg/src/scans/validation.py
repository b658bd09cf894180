"""
Validation Suite

Cross-checks between the evaluation paths and the identities the
correlators must satisfy, run on the parameters of one config file:

- normalization of the monochromator form factor and saddle stationarity
- dip floor of the closed form and of the saddle-point quadrature
- k1 <-> k2 exchange symmetry and coupling invariance
- saddle-point quadrature against the closed form in the flat-band regime
- temperature invariance of the depth and narrowing of the dip with temperature
- off-axis reduction identities, boson/fermion mirror, consistency corrections
"""
import json
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from src.core.errors import AntibunchError
from src.core.params import Collinear, CorrMethod, DetectorSpec, Statistics
from src.core.parsed_data import ParsedConfig
from src.correlators.collinear import (CollinearSetup, c_analytic, c_normalized, consistency_corrections,
                                       dip_depth, dip_half_width)
from src.correlators.offaxis import c_offaxis, c_offaxis_collinear_limit, d_funcs, d_tilde_funcs
from src.dists.form_factors import mono_f2_norm
from src.numerics.quadrature import QuadSpec
from src.numerics.saddle import SaddleParams, saddle_theta0, stationarity_residual

GAUSS = CorrMethod.GAUSSIAN_APPROX
DEFAULT_Z = 160.0
BETA_FACTORS = (1.0, 0.04, 0.01)
AGREEMENT_POINTS = 11
FLOOR_TOL = 0.02
AGREEMENT_TOL = 0.05
INVARIANCE_TOL = 0.02


@dataclass
class CheckResult:
    """Outcome of one validation check."""
    name: str
    passed: bool
    detail: str = ""
    value: Optional[float] = None
    target: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'passed': self.passed,
            'detail': self.detail,
            'value': self.value,
            'target': self.target,
        }


@dataclass
class ValidationReport:
    """All check results of one run plus the configuration warnings."""
    source_file: str
    checks: List[CheckResult] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> dict:
        return {
            'source_file': self.source_file,
            'passed': self.passed,
            'checks': [check.to_dict() for check in self.checks],
            'warnings': list(self.warnings),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, default=str)

    def summary(self) -> str:
        """
        Get a human-readable summary of the report.

        Returns:
            str: Summary text
        """
        lines = [f"Validation of {self.source_file}: "
                 f"{len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed"]
        for check in self.checks:
            marker = "✅" if check.passed else "❌"
            lines.append(f"  {marker} {check.name}: {check.detail}")
        for message in self.warnings:
            lines.append(f"  ⚠️  {message}")
        return "\n".join(lines)


def _base_setup(parsed: ParsedConfig) -> CollinearSetup:
    if isinstance(parsed.geometry, Collinear):
        return CollinearSetup(parsed.src, parsed.beam, parsed.det, parsed.geometry.z1, parsed.geometry.z2)
    z = parsed.scan.axis("z2", (DEFAULT_Z,))[0] if parsed.scan and parsed.scan.kind == "collinear" else DEFAULT_Z
    return CollinearSetup(parsed.src, parsed.beam, parsed.det, z, z)


def flat_band_setup(setup: CollinearSetup, spec: QuadSpec) -> CollinearSetup:
    """Fermion setup whose Fermi level lies far above the momentum window, so N is flat across it."""
    top = setup.beam.k0 + spec.k_window_sigmas * setup.beam.dk_z
    return setup.with_(src=setup.src.with_(mu=setup.src.omega(top) + 30.0 / setup.src.beta))


def _within(name: str, value: float, target: float, tol: float, label: str = "") -> CheckResult:
    deviation = abs(value - target)
    detail = f"{label}{value:.10g} vs {target:.10g} (|diff| {deviation:.3g}, tol {tol:.3g})"
    return CheckResult(name, deviation <= tol, detail, value, target)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def check_mono_normalization(setup: CollinearSetup, spec: QuadSpec) -> CheckResult:
    value, _ = mono_f2_norm(setup.beam)
    return _within("mono_f2_norm", value, 1.0, 1e-8)


def check_saddle_stationarity(setup: CollinearSetup, spec: QuadSpec) -> CheckResult:
    sp = SaddleParams.from_momentum(setup.beam.k0, setup.src, setup.det, setup.z2)
    point = saddle_theta0(sp)
    residual = abs(stationarity_residual(point.theta0, sp.total))
    return CheckResult("saddle_stationarity", residual < 1e-9, f"residual {residual:.3g} at k0", residual, 0.0)


def _ideal(setup: CollinearSetup) -> CollinearSetup:
    return setup.with_(det=DetectorSpec(), z1=setup.z2)


def check_analytic_floor(setup: CollinearSetup, spec: QuadSpec) -> CheckResult:
    target = 1.0 + 0.5 * setup.sign
    return _within("analytic_floor", c_analytic(_ideal(setup)), target, 1e-12)


def check_gauss_floor(setup: CollinearSetup, spec: QuadSpec) -> CheckResult:
    target = 1.0 + 0.5 * setup.sign
    return _within("gauss_floor", c_normalized(_ideal(setup), GAUSS, spec).value, target, FLOOR_TOL)


def _separated(setup: CollinearSetup) -> CollinearSetup:
    if setup.z1 != setup.z2:
        return setup
    return setup.with_(z1=setup.z2 + 1.0 / setup.beam.dk_z)


def check_exchange_symmetry(setup: CollinearSetup, spec: QuadSpec) -> CheckResult:
    pair = _separated(setup)
    forward = c_normalized(pair, GAUSS, spec).value
    backward = c_normalized(pair.with_(z1=pair.z2, z2=pair.z1), GAUSS, spec).value
    return _within("exchange_symmetry", forward, backward, 1e-9, "C(z1, z2) vs C(z2, z1): ")


def check_coupling_invariance(setup: CollinearSetup, spec: QuadSpec) -> CheckResult:
    pair = _separated(setup)
    plain = c_normalized(pair, GAUSS, spec).value
    scaled = c_normalized(pair.with_(src=pair.src.with_(coupling=2.5 * pair.src.coupling)), GAUSS, spec).value
    return _within("coupling_invariance", scaled, plain, 1e-9 * abs(plain))


def check_method_agreement(setup: CollinearSetup, spec: QuadSpec) -> CheckResult:
    flat = flat_band_setup(setup, spec)
    depth = abs(1.0 - c_analytic(flat.with_(z1=flat.z2)))
    width = math.sqrt(1.0 / flat.beam.dk_z ** 2 + 4.0 * flat.det.d ** 2)
    worst = 0.0
    for z1 in np.linspace(flat.z2 - 2.0 * width, flat.z2 + 2.0 * width, AGREEMENT_POINTS):
        point = flat.with_(z1=float(z1))
        worst = max(worst, abs(c_normalized(point, GAUSS, spec).value - c_analytic(point)))
    passed = worst <= AGREEMENT_TOL * depth
    detail = f"max |gauss - analytic| {worst:.3g} over {AGREEMENT_POINTS} points, depth {depth:.4g}"
    return CheckResult("method_agreement", passed, detail, worst, AGREEMENT_TOL * depth)


def _beta_ladder(setup: CollinearSetup) -> Tuple[float, ...]:
    return tuple(setup.src.beta * factor for factor in BETA_FACTORS)


def check_temperature_invariance(setup: CollinearSetup, spec: QuadSpec) -> CheckResult:
    ideal = _ideal(setup)
    ladder = _beta_ladder(setup)
    depths = [dip_depth(ideal.with_(src=ideal.src.with_(beta=beta)), GAUSS, spec) for beta in ladder]
    spread = (max(depths) - min(depths)) / max(depths)
    detail = "depths " + ", ".join(f"beta={b:g}: {d:.5g}" for b, d in zip(ladder, depths))
    return CheckResult("temperature_invariance", spread < INVARIANCE_TOL, detail, spread, INVARIANCE_TOL)


def check_temperature_narrowing(setup: CollinearSetup, spec: QuadSpec) -> CheckResult:
    ladder = _beta_ladder(setup)
    hot, cold = min(ladder), max(ladder)
    widths = {beta: dip_half_width(setup.with_(src=setup.src.with_(beta=beta)), GAUSS, spec) for beta in (hot, cold)}
    detail = f"half width beta={hot:g}: {widths[hot]:.5g}, beta={cold:g}: {widths[cold]:.5g}"
    return CheckResult("temperature_narrowing", widths[hot] < widths[cold], detail, widths[hot], widths[cold])


def check_reduction_identity(setup: CollinearSetup, spec: QuadSpec) -> CheckResult:
    src, beam, det = setup.src, setup.beam, setup.det
    pair = _separated(setup)
    on_axis = c_offaxis(0.0, pair.z1, pair.z2, src, beam, det).value
    limit = c_offaxis_collinear_limit(pair.z1, pair.z2, beam, det, src.statistics)
    x, y, z = 3.0, 4.0, setup.z2
    rbar2 = x * x + y * y + z * z
    tilde = d_tilde_funcs(x, y, z, src, beam, det)
    scaled = d_funcs(math.atan2(math.hypot(x, y), z), src, beam, det)
    cartesian = max(abs(t - rbar2 * s) / abs(t) for t, s in ((tilde.d1, scaled.d1), (tilde.d2, scaled.d2),
                                                            (tilde.d3, scaled.d3)))
    passed = abs(on_axis - limit) <= 1e-12 and cartesian <= 1e-10
    detail = f"theta_d = 0: |diff| {abs(on_axis - limit):.3g}; D~ vs r^2 D: rel {cartesian:.3g}"
    return CheckResult("reduction_identity", passed, detail, abs(on_axis - limit), 0.0)


def check_mirror(setup: CollinearSetup, spec: QuadSpec) -> CheckResult:
    pair = _separated(setup)
    fermion = pair.with_(src=pair.src.with_(statistics=Statistics.FERMION))
    boson = pair.with_(src=pair.src.with_(statistics=Statistics.BOSON))
    collinear_sum = c_analytic(fermion) + c_analytic(boson)
    theta = 0.3
    offaxis_sum = (c_offaxis(theta, pair.z1, pair.z2, pair.src, pair.beam, pair.det, Statistics.FERMION).value
                   + c_offaxis(theta, pair.z1, pair.z2, pair.src, pair.beam, pair.det, Statistics.BOSON).value)
    worst = max(abs(collinear_sum - 2.0), abs(offaxis_sum - 2.0))
    return CheckResult("boson_fermion_mirror", worst <= 1e-12,
                       f"C_b + C_f: collinear {collinear_sum:.15g}, off-axis {offaxis_sum:.15g}", worst, 0.0)


def check_consistency_corrections(setup: CollinearSetup, spec: QuadSpec) -> CheckResult:
    pair = _separated(setup)
    worst = 0.0
    for a in (0.0, 1.0, 3.0, 5.0):
        trial = pair.with_(det=pair.det.with_(a=a))
        worst = max(worst, abs(consistency_corrections(trial).c_corrected - c_analytic(trial)))
    return CheckResult("consistency_corrections", worst <= 1e-12, f"max |corrected - analytic| {worst:.3g}", worst, 0.0)


def check_numeric_floor(setup: CollinearSetup, spec: QuadSpec) -> CheckResult:
    target = 1.0 + 0.5 * setup.sign
    numeric = QuadSpec.for_method(CorrMethod.NUMERIC)
    return _within("numeric_floor", c_normalized(_ideal(setup), CorrMethod.NUMERIC, numeric).value, target, FLOOR_TOL)


Check = Callable[[CollinearSetup, QuadSpec], CheckResult]

CORE_CHECKS: Tuple[Check, ...] = (
    check_mono_normalization,
    check_saddle_stationarity,
    check_analytic_floor,
    check_gauss_floor,
    check_exchange_symmetry,
    check_coupling_invariance,
    check_reduction_identity,
    check_mirror,
    check_consistency_corrections,
)
QUANTUM_CHECKS: Tuple[Check, ...] = (check_temperature_invariance,)
FERMION_CHECKS: Tuple[Check, ...] = (check_method_agreement, check_temperature_narrowing)


def _run(check: Check, setup: CollinearSetup, spec: QuadSpec) -> CheckResult:
    try:
        return check(setup, spec)
    except (AntibunchError, ValueError, ArithmeticError) as e:
        name = check.__name__.replace("check_", "")
        return CheckResult(name, False, f"{type(e).__name__}: {e}")


def run_validation(parsed: ParsedConfig, include_numeric: bool = False,
                   extra_warnings: Optional[List[str]] = None) -> ValidationReport:
    """
    Run the validation suite on the parameters of a parsed config.

    The suite evaluates with its own tolerance ladder; the file's quadrature
    block only produces configuration warnings. Temperature invariance needs
    a dip; flat-band agreement and temperature narrowing apply to fermions; `include_numeric` adds the dip
    floor of the full quadrature, which takes minutes.
    """
    setup = _base_setup(parsed)
    spec = QuadSpec.for_method(GAUSS)
    checks = list(CORE_CHECKS)
    if setup.sign != 0:
        checks.extend(QUANTUM_CHECKS)
    if setup.src.statistics is Statistics.FERMION:
        checks.extend(FERMION_CHECKS)
    if include_numeric:
        checks.append(check_numeric_floor)

    warnings = list(parsed.warnings) + list(extra_warnings or [])
    return ValidationReport(parsed.source_file, [_run(check, setup, spec) for check in checks], warnings)
