"""
Gaussian form factors of the emission model.

- g, g~ : emitting window W^2 = diag(w^2, w^2, w_z^2) and its Fourier transform
- f     : monochromator, a normalized Gaussian amplitude around k0 = (0, 0, k0)
- R     : detector acceptance D^2 = diag(a^2, a^2, d^2)
- T     : emission matrix f(k') g~(k' - k) theta(k_z)

Vec3 components may be floats or numpy arrays; every function is
vectorized over them. Zero widths (w_z, a or d = 0) are delta functions
along that axis: the density is returned with that dimension integrated out.
"""
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from src.core.errors import DomainError
from src.core.params import BeamSpec, DetectorSpec, SourceSpec
from src.numerics.quadrature import QuadSpec, integrate_nd

TWO_PI_CUBED = (2.0 * math.pi) ** 3


@dataclass(frozen=True)
class Vec3:
    """Momentum or position vector."""
    x: object
    y: object
    z: object

    def __post_init__(self):
        for comp in (self.x, self.y, self.z):
            if not np.all(np.isfinite(comp)):
                raise DomainError("Vec3 components must be finite")

    @classmethod
    def from_spherical(cls, r, theta, phi=0.0) -> "Vec3":
        return cls(r * np.sin(theta) * np.cos(phi), r * np.sin(theta) * np.sin(phi), r * np.cos(theta))

    @classmethod
    def axis(cls, z) -> "Vec3":
        return cls(0.0, 0.0, z)

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, scalar) -> "Vec3":
        return Vec3(self.x * scalar, self.y * scalar, self.z * scalar)

    __rmul__ = __mul__

    def dot(self, other: "Vec3"):
        return self.x * other.x + self.y * other.y + self.z * other.z

    def perp2(self):
        return self.x ** 2 + self.y ** 2

    def norm(self):
        return np.sqrt(self.dot(self))

    def unit(self) -> "Vec3":
        n = self.norm()
        if np.any(n == 0):
            raise DomainError("cannot normalize a zero vector")
        return self * (1.0 / n)

    def rotate_z(self, angle: float) -> "Vec3":
        c, s = math.cos(angle), math.sin(angle)
        return Vec3(c * self.x - s * self.y, s * self.x + c * self.y, self.z)


def _gaussian_density(offset: Vec3, widths: Tuple[float, float, float]):
    """Normalized 3D Gaussian with diagonal widths; zero widths are integrated out."""
    log_val = 0.0
    for comp, width in zip((offset.x, offset.y, offset.z), widths):
        if width > 0:
            log_val = log_val - 0.5 * np.asarray(comp) ** 2 / width ** 2 - 0.5 * math.log(2.0 * math.pi * width ** 2)
    return np.exp(log_val)


def window_g(r: Vec3, src: SourceSpec):
    """Emitting-window density g(r), normalized to 1 over r."""
    return _gaussian_density(r, (src.w, src.w, src.w_z))


def window_g_tilde(dk: Vec3, src: SourceSpec):
    """g~(dk) = (2 pi)^-3 exp(-dk . W^2 dk / 2)."""
    return np.exp(-0.5 * (src.w ** 2 * dk.perp2() + src.w_z ** 2 * dk.z ** 2)) / TWO_PI_CUBED


def _log_mono_norm(beam: BeamSpec) -> float:
    return -0.25 * math.log(TWO_PI_CUBED * beam.dk_perp ** 4 * beam.dk_z ** 2)


def log_mono_f(k: Vec3, beam: BeamSpec):
    return _log_mono_norm(beam) - 0.25 * (k.perp2() / beam.dk_perp ** 2 + (k.z - beam.k0) ** 2 / beam.dk_z ** 2)


def mono_f(k: Vec3, beam: BeamSpec):
    """Monochromator amplitude f(k); f^2 integrates to 1 over d^3k."""
    return np.exp(log_mono_f(k, beam))


def mono_f2_axis(k, beam: BeamSpec):
    """f^2(k z^) along the beam axis; its integral over k is 1 / (2 pi dk_perp^2)."""
    return np.exp(2.0 * log_mono_f(Vec3.axis(np.asarray(k, dtype=float)), beam))


def log_mono_f2_angle(k, theta_d: float, beam: BeamSpec):
    """ln f^2(k, theta_d): f evaluated at k (sin theta_d, 0, cos theta_d)."""
    kv = Vec3.from_spherical(np.asarray(k, dtype=float), theta_d)
    return 2.0 * log_mono_f(kv, beam)


def mono_f_angle(k, theta_d: float, beam: BeamSpec):
    return np.exp(0.5 * log_mono_f2_angle(k, theta_d, beam))


def mono_f2_norm(beam: BeamSpec, spec: Optional[QuadSpec] = None) -> Tuple[float, float]:
    """Integral of f^2 over d^3k on a +/- n sigma box; equals 1."""
    spec = spec or QuadSpec(rel_tol=1e-10)
    n = spec.k_window_sigmas
    box = [(-n * beam.dk_perp, n * beam.dk_perp), (-n * beam.dk_perp, n * beam.dk_perp),
           (beam.k0 - n * beam.dk_z, beam.k0 + n * beam.dk_z)]
    value, err = integrate_nd(lambda x, y, z: mono_f(Vec3(x, y, z), beam) ** 2, box, spec,
                              breakpoints=[_sigma_edges(0.0, beam.dk_perp, n), _sigma_edges(0.0, beam.dk_perp, n),
                                           _sigma_edges(beam.k0, beam.dk_z, n)])
    return float(np.real(value)), err


def _sigma_edges(centre: float, sigma: float, n: float) -> Sequence[float]:
    return list(centre + sigma * np.arange(-math.floor(n), math.floor(n) + 1))


def resolution_R(r: Vec3, rbar: Vec3, det: DetectorSpec):
    """Detector acceptance R_rbar(r), normalized to 1 over r."""
    return _gaussian_density(r - rbar, (det.a, det.a, det.d))


def emission_T(kprime: Vec3, k: Vec3, src: SourceSpec, beam: BeamSpec):
    """Emission matrix f(k') g~(k' - k) theta(k_z); theta(0) = 0."""
    value = mono_f(kprime, beam) * window_g_tilde(kprime - k, src)
    gated = np.where(np.asarray(k.z) > 0, value, 0.0)
    return float(gated) if gated.ndim == 0 else gated
