"""Frequency-domain correlations between two motionless points.

Every quantity here is the coefficient of delta(omega + omega') in the
spectral correlation, with the transform convention (1/2pi) int f(t) e^{i omega t} dt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._jit import njit
from .errors import DomainError
from .specfun import ThermalContext, occupancy

__all__ = [
    "StaticSpectrum",
    "static_ctilde",
    "static_correlation",
    "static_spectrum",
    "self_correlation",
    "spectral_weight",
    "SMALL_X",
]

# below this value of |omega| s the shape brackets use their Taylor expansions
SMALL_X = 1e-3


@dataclass(frozen=True)
class StaticSpectrum:
    """Coefficient of delta(omega + omega') for one projection."""

    coefficient: float
    omega: float
    separation: float
    projection: str = "parallel"


@njit(cache=True)
def _sinc(x):
    if x < SMALL_X:
        x2 = x * x
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
    return math.sin(x) / x


@njit(cache=True)
def _quad_shape(x):
    # ((2 - x^2) sin x - 2 x cos x) / x^3
    if x < SMALL_X:
        x2 = x * x
        return -1.0 / 3.0 + x2 / 10.0 - x2 * x2 / 168.0 + x2 * x2 * x2 / 6480.0
    return ((2.0 - x * x) * math.sin(x) - 2.0 * x * math.cos(x)) / (x * x * x)


@njit(cache=True)
def _weight(temperature, omega, symmetrized):
    n = occupancy(temperature, abs(omega))
    if symmetrized:
        return n + 0.5
    if omega > 0.0:
        return n + 1.0
    if omega < 0.0:
        return n
    return n + 0.5


def spectral_weight(ctx: ThermalContext, omega: float, symmetrized: bool = True) -> float:
    """N(|omega|) + 1/2 when symmetrized, N(|omega|) + Theta(omega) otherwise (Theta(0) = 1/2)."""
    return float(_weight(ctx.temperature, float(omega), bool(symmetrized)))


def _validate(omega: float, s: float) -> None:
    if not math.isfinite(omega) or omega == 0.0:
        raise DomainError(f"omega must be finite and nonzero, got {omega}")
    if not (math.isfinite(s) and s > 0.0):
        raise DomainError(f"separation must be positive, got {s}")


def static_ctilde(which: int, omega: float, s: float, ctx: ThermalContext, symmetrized: bool = True) -> float:
    """Fourier coefficient of C0 (``which=0``) or C2 (``which=2``)."""
    omega = float(omega)
    s = float(s)
    _validate(omega, s)
    w = abs(omega)
    x = w * s
    weight = _weight(ctx.temperature, omega, bool(symmetrized))
    if which == 0:
        return 2.0 * w**3 * _sinc(x) * weight
    if which == 2:
        return -2.0 * w**3 * _quad_shape(x) * weight
    raise DomainError(f"which must be 0 or 2, got {which}")


def static_correlation(projection: str, omega: float, s: float, ctx: ThermalContext, symmetrized: bool = True) -> float:
    """Static E-E spectral coefficient for components parallel or perpendicular to the separation."""
    k0 = static_ctilde(0, omega, s, ctx, symmetrized)
    k2 = static_ctilde(2, omega, s, ctx, symmetrized)
    if projection == "parallel":
        return (k0 - k2) / (8.0 * math.pi**2)
    if projection == "perpendicular":
        return (k0 + k2) / (16.0 * math.pi**2)
    raise DomainError(f"projection must be 'parallel' or 'perpendicular', got {projection!r}")


def static_spectrum(projection: str, omega: float, s: float, ctx: ThermalContext, symmetrized: bool = True) -> StaticSpectrum:
    """Wrap :func:`static_correlation` in a :class:`StaticSpectrum`."""
    coeff = static_correlation(projection, omega, s, ctx, symmetrized)
    return StaticSpectrum(coefficient=coeff, omega=float(omega), separation=float(s), projection=projection)


def self_correlation(omega: float, ctx: ThermalContext) -> float:
    """Coincidence limit of either projection: |omega|^3 (N + 1/2) / (6 pi^2)."""
    omega = float(omega)
    if not math.isfinite(omega) or omega == 0.0:
        raise DomainError(f"omega must be finite and nonzero, got {omega}")
    w = abs(omega)
    return w**3 * (occupancy(ctx.temperature, w) + 0.5) / (6.0 * math.pi**2)
