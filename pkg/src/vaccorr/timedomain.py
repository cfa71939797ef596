"""Time-domain electric-electric correlators between two fixed points.

The kernels C0 and C2 are the angular-integrated mode sums with weights 1 and
cos^2(theta); their zero-temperature parts are rational in (dt, s) and their
thermal parts close in terms of the digamma family on the line 1 + i y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._jit import njit
from .errors import DomainError, LightConeError
from .specfun import ThermalContext, _polygamma_line

__all__ = [
    "SpacetimeSeparation",
    "c0",
    "c2",
    "time_correlator",
    "thermal_parts",
    "PROJECTIONS",
]

PROJECTIONS = ("parallel", "perpendicular", "cross")
_CONE_TOL = 1e-12


@dataclass(frozen=True)
class SpacetimeSeparation:
    """Time difference ``dt = t - t'`` and spatial distance ``s > 0``."""

    dt: float
    s: float

    def __post_init__(self):
        if not (math.isfinite(self.dt) and math.isfinite(self.s)):
            raise DomainError("separation components must be finite")
        if not self.s > 0.0:
            raise DomainError(f"spatial distance must be positive, got {self.s}")


@njit(cache=True)
def _vacuum_parts(dt, s):
    d = dt * dt - s * s
    d3 = d * d * d
    return 4.0 * (3.0 * dt * dt + s * s) / d3, 4.0 * (dt * dt + 3.0 * s * s) / d3


@njit(cache=True)
def _thermal_parts(dt, s, temp):
    # thermal contributions to C0 and C2 for temp > 0
    yp = temp * (dt + s)
    ym = temp * (dt - s)
    p0 = _polygamma_line(0, yp)
    m0 = _polygamma_line(0, ym)
    p1 = _polygamma_line(1, yp)
    m1 = _polygamma_line(1, ym)
    p2 = _polygamma_line(2, yp)
    m2 = _polygamma_line(2, ym)
    th0 = 2.0 * temp**3 / s * (p2 - m2).imag
    ts = temp * s
    inner = 2.0 * (p0 - m0) - 2j * ts * (p1 + m1) - ts * ts * (p2 - m2)
    th2 = -2.0 * temp / s**3 * inner.imag
    return th0, th2


@njit(cache=True)
def _thermal_parts_array(dt, s, temp):
    n = dt.shape[0]
    out0 = np.empty(n)
    out2 = np.empty(n)
    for i in range(n):
        a, b = _thermal_parts(dt[i], s, temp)
        out0[i] = a
        out2[i] = b
    return out0, out2


def _check_cone(sep: SpacetimeSeparation) -> None:
    if abs(1.0 - abs(sep.dt) / sep.s) < _CONE_TOL:
        raise LightConeError(f"|dt| = s on the light cone (dt={sep.dt}, s={sep.s})")


def thermal_parts(sep: SpacetimeSeparation, ctx: ThermalContext) -> tuple[float, float]:
    """Thermal contributions (to C0, to C2); exactly zero at T = 0."""
    if ctx.zero_temperature_flag:
        return 0.0, 0.0
    a, b = _thermal_parts(float(sep.dt), float(sep.s), ctx.temperature)
    return float(a), float(b)


def _kernels(sep: SpacetimeSeparation, ctx: ThermalContext) -> tuple[float, float]:
    _check_cone(sep)
    v0, v2 = _vacuum_parts(float(sep.dt), float(sep.s))
    t0, t2 = thermal_parts(sep, ctx)
    return float(v0) + t0, float(v2) + t2


def c0(sep: SpacetimeSeparation, ctx: ThermalContext) -> float:
    """Isotropic kernel C0(dt, s) at temperature ``ctx``."""
    return _kernels(sep, ctx)[0]


def c2(sep: SpacetimeSeparation, ctx: ThermalContext) -> float:
    """Longitudinal kernel C2(dt, s), the cos^2-weighted counterpart of C0."""
    return _kernels(sep, ctx)[1]


def time_correlator(projection: str, sep: SpacetimeSeparation, ctx: ThermalContext) -> float:
    """Symmetrized E-E correlator for components parallel/perpendicular to the separation."""
    if projection not in PROJECTIONS:
        raise DomainError(f"projection must be one of {PROJECTIONS}, got {projection!r}")
    k0, k2 = _kernels(sep, ctx)
    if projection == "cross":
        return 0.0
    if projection == "parallel":
        return (k0 - k2) / (8.0 * math.pi**2)
    return (k0 + k2) / (16.0 * math.pi**2)
