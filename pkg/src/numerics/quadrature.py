"""
Quadrature engines.

`integrate_1d` wraps adaptive Gauss-Kronrod (QUADPACK via scipy) and turns
non-convergence into a ConvergenceError. `integrate_nd` is a tensor
Gauss-Legendre rule over per-axis panels for 1 to 4 dimensions. The
integrand receives broadcastable coordinate arrays and may return complex
values.
"""
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad

from src.core.errors import ConvergenceError, DomainError
from src.core.params import CorrMethod


@dataclass(frozen=True)
class QuadSpec:
    """
    Quadrature settings.

    rel_tol/abs_tol: target accuracy. max_subdiv: adaptive subdivision limit
    of the 1D engine. k_window_sigmas: momentum integrals are truncated at
    k0 +/- n dk_z before the bracketing scan. nodes: Gauss-Legendre nodes per
    panel. k_panels/theta_panels: uniform base panels on momentum and angle
    axes. max_refine: node doublings allowed in `integrate_nd` and in the
    coupled angular rule. theta_nodes: starting nodes per angle panel of the
    coupled angular rule.
    """
    rel_tol: float = 1e-8
    abs_tol: float = 1e-14
    max_subdiv: int = 200
    k_window_sigmas: float = 8.0
    nodes: int = 10
    k_panels: int = 8
    theta_panels: int = 3
    max_refine: int = 2
    theta_nodes: int = 6
    edge_fraction: float = 1e-10
    chunk_points: int = 2_000_000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError(f"tolerances must be positive, got rel_tol={self.rel_tol}, abs_tol={self.abs_tol}")
        if self.k_window_sigmas < 5:
            raise DomainError(f"k_window_sigmas must be at least 5, got {self.k_window_sigmas}")
        if (self.nodes < 2 or self.theta_nodes < 2 or self.max_subdiv < 1 or self.k_panels < 1
                or self.theta_panels < 1):
            raise DomainError("nodes >= 2 and positive subdivision/panel counts are required")

    def tolerance(self, scale: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(scale))

    def with_(self, **changes) -> "QuadSpec":
        return replace(self, **changes)

    @classmethod
    def for_method(cls, method: CorrMethod) -> "QuadSpec":
        """Tolerance ladder: GaussianApprox 1e-8, Numeric 1e-6."""
        if CorrMethod.parse(method) is CorrMethod.NUMERIC:
            return cls(rel_tol=1e-6)
        return cls(rel_tol=1e-8)


def integrate_1d(f: Callable[[float], float], a: float, b: float, spec: Optional[QuadSpec] = None,
                 weight: Optional[str] = None, wvar: Optional[float] = None,
                 points: Optional[Sequence[float]] = None) -> Tuple[float, float]:
    """
    Adaptive 1D integral of a real function.

    Args:
        f: Integrand
        a, b: Limits (finite)
        spec: Tolerances and subdivision limit
        weight: Optional QUADPACK weight ('cos' or 'sin') for oscillatory integrands
        wvar: Angular frequency for the weight
        points: Interior break points (not combinable with a weight)

    Returns:
        (value, abs_error)

    Raises:
        ConvergenceError: If QUADPACK reports a problem; carries the best estimate
    """
    spec = spec or QuadSpec()
    kwargs = dict(epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=spec.max_subdiv, full_output=1)
    if weight is not None:
        kwargs.update(weight=weight, wvar=wvar)
    elif points is not None:
        inner = [p for p in points if a < p < b]
        if inner:
            kwargs["points"] = inner
    result = quad(f, a, b, **kwargs)
    value, err = result[0], result[1]
    if len(result) > 3:
        raise ConvergenceError(f"integrate_1d on [{a}, {b}]: {result[3]}", best_estimate=value, abs_error=err)
    return value, err


def gauss_legendre_panels(lo: float, hi: float, breakpoints: Optional[Sequence[float]], nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of an n-point Gauss-Legendre rule on each panel of [lo, hi]."""
    edges = [lo, hi]
    if breakpoints is not None:
        edges.extend(p for p in breakpoints if lo < p < hi)
    edges = np.unique(np.asarray(edges, dtype=float))
    x, w = leggauss(nodes)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    xs = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    ws = (half[:, None] * w[None, :]).ravel()
    return xs, ws


def _tensor_sum(f: Callable, rules: Sequence[Tuple[np.ndarray, np.ndarray]], chunk_points: int) -> Tuple[complex, float]:
    """Sum of w * f and of w * |f| over the tensor grid, chunked along axis 0."""
    dims = len(rules)
    shape = tuple(len(x) for x, _ in rules)
    inner = int(np.prod(shape[1:])) if dims > 1 else 1
    step = max(1, chunk_points // max(inner, 1))

    def axis_array(values, axis):
        view = [1] * dims
        view[axis] = -1
        return values.reshape(view)

    others = [axis_array(rules[i][0], i) for i in range(1, dims)]
    total = 0.0 + 0.0j
    l1 = 0.0
    x0, w0 = rules[0]
    for start in range(0, len(x0), step):
        sl = slice(start, start + step)
        vals = np.asarray(f(axis_array(x0[sl], 0), *others))
        vals = np.broadcast_to(vals, (len(x0[sl]),) + shape[1:])
        mags = np.abs(vals)
        weights = [w0[sl]] + [rules[i][1] for i in range(1, dims)]
        for w in reversed(weights):
            vals = np.tensordot(vals, w, axes=([vals.ndim - 1], [0]))
            mags = np.tensordot(mags, w, axes=([mags.ndim - 1], [0]))
        total += complex(vals)
        l1 += float(mags)
    return total, l1


def tensor_rule(f: Callable[..., np.ndarray], box: Sequence[Tuple[float, float]],
                breakpoints: Sequence[Optional[Sequence[float]]], nodes: Sequence[int],
                chunk_points: int = QuadSpec.chunk_points) -> Tuple[complex, float]:
    """One fixed tensor Gauss-Legendre sum, no error estimate: (value, integral of |f|)."""
    rules = [gauss_legendre_panels(lo, hi, breakpoints[i], nodes[i]) for i, (lo, hi) in enumerate(box)]
    return _tensor_sum(f, rules, chunk_points)


def integrate_nd(f: Callable[..., np.ndarray], box: Sequence[Tuple[float, float]], spec: Optional[QuadSpec] = None,
                 breakpoints: Optional[Sequence[Optional[Sequence[float]]]] = None,
                 nodes: Optional[Sequence[int]] = None, info: Optional[dict] = None) -> Tuple[complex, float]:
    """
    Tensor-product Gauss-Legendre integral over a box of up to 4 dimensions.

    The error estimate is the sum over axes of the change in the result when
    that axis alone is integrated with half the nodes per panel. Axes whose
    share exceeds the tolerance are refined by doubling their node count, up
    to `spec.max_refine` times. The tolerance is relative to the integral of
    |f| so oscillatory integrals with near-zero value stay well posed.

    Args:
        f: Vectorized integrand f(x0, x1, ...) on broadcastable arrays
        box: (lo, hi) per axis
        spec: Quadrature settings
        breakpoints: Optional interior panel edges per axis
        nodes: Optional nodes per panel per axis (default spec.nodes)
        info: Optional dict filled with node counts and refinement steps

    Returns:
        (value, abs_error); value is complex when f is

    Raises:
        ConvergenceError: If the estimate stays above tolerance
    """
    spec = spec or QuadSpec()
    dims = len(box)
    if not 1 <= dims <= 4:
        raise DomainError(f"integrate_nd supports 1 to 4 dimensions, got {dims}")
    breakpoints = list(breakpoints) if breakpoints is not None else [None] * dims
    counts = list(nodes) if nodes is not None else [spec.nodes] * dims

    refinements = 0
    while True:
        rules = [gauss_legendre_panels(lo, hi, breakpoints[i], counts[i]) for i, (lo, hi) in enumerate(box)]
        value, l1 = _tensor_sum(f, rules, spec.chunk_points)
        per_axis = []
        for i, (lo, hi) in enumerate(box):
            coarse = list(rules)
            coarse[i] = gauss_legendre_panels(lo, hi, breakpoints[i], max(1, counts[i] // 2))
            coarse_value, _ = _tensor_sum(f, coarse, spec.chunk_points)
            per_axis.append(abs(coarse_value - value))
        err = float(sum(per_axis))
        tol = spec.tolerance(l1)
        if err <= tol:
            break
        if refinements >= spec.max_refine:
            raise ConvergenceError(
                f"integrate_nd: error estimate {err:.3g} above tolerance {tol:.3g} after {refinements} refinements",
                best_estimate=value, abs_error=err)
        share = tol / dims
        counts = [c * 2 if e > share else c for c, e in zip(counts, per_axis)]
        refinements += 1

    if info is not None:
        info.update(nodes=counts, refinements=refinements, points=int(np.prod([len(x) for x, _ in rules])), l1=l1)
    if value.imag == 0.0:
        return value.real, err
    return value, err
