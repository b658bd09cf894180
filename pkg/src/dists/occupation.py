"""
Thermal occupation N(omega) of the source.
"""
import numpy as np
from scipy.special import expit

from src.core.errors import DomainError
from src.core.params import SourceSpec, Statistics


def _reduced_energy(omega, src: SourceSpec) -> np.ndarray:
    x = src.beta * (np.asarray(omega, dtype=float) - src.mu)
    if src.statistics is Statistics.BOSON and np.any(x <= 0):
        raise DomainError(f"Bose occupation needs omega > mu = {src.mu:g}")
    return x


def _as_output(values: np.ndarray):
    return float(values) if values.ndim == 0 else values


def occupation(omega, src: SourceSpec):
    """
    Occupation of a mode with energy omega.

    Fermion: 1 / (e^{beta(omega-mu)} + 1)
    Boson: 1 / (e^{beta(omega-mu)} - 1), requires omega > mu
    Classical: e^{-beta(omega-mu)}

    Raises:
        DomainError: Bose occupation at omega <= mu
    """
    x = _reduced_energy(omega, src)
    if src.statistics is Statistics.FERMION:
        return _as_output(expit(-x))
    if src.statistics is Statistics.BOSON:
        return _as_output(1.0 / np.expm1(x))
    return _as_output(np.exp(-x))


def log_occupation(omega, src: SourceSpec):
    """Natural logarithm of `occupation`, finite far into the tails."""
    x = _reduced_energy(omega, src)
    if src.statistics is Statistics.FERMION:
        return _as_output(-np.logaddexp(0.0, x))
    if src.statistics is Statistics.BOSON:
        return _as_output(-np.log(np.expm1(x)))
    return _as_output(-x)
