"""
Special functions used by the correlator integrands.
"""
import numpy as np
from scipy.special import i0e

from src.core.errors import DomainError


def bessel_i0_scaled(x):
    """
    Exponentially scaled modified Bessel function e^{-x} I0(x) for x >= 0.

    The azimuthal average of e^{x cos(phi)} is I0(x); integrands carry the
    factor as exp(exponent + x) * bessel_i0_scaled(x) so nothing overflows
    for large x.

    Raises:
        DomainError: If any x < 0
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise DomainError("bessel_i0_scaled is defined for x >= 0")
    out = i0e(arr)
    return float(out) if out.ndim == 0 else out
