"""Two points in opposite uniform rectilinear motion.

Point A sits at ``-a/2`` on the X axis moving with ``-v/2`` along Y, point B
mirrors it. The cross-spectra are supported on a Doppler band of omega'/omega;
first-order expansions in v are expressed as delta and delta-prime lines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import mpmath
import numpy as np

from .errors import DomainError
from .lines import SpectralLine
from .specfun import ThermalContext, _bessel_j, occupancy, occupancy_slope, polylog
from .staticfreq import self_correlation, static_correlation

__all__ = [
    "RectilinearConfig",
    "SupportBand",
    "band",
    "rect_exact",
    "rect_first_order",
    "rect_self",
    "rect_self_zero_point",
    "lorentz_consistency",
    "in_band",
    "integrate_band",
    "xy_unreduced_amplitude",
    "PAIRS",
    "SELF_PAIRS",
]

PAIRS = ("XX", "YY", "ZZ", "XY")
SELF_PAIRS = ("YY", "XX_or_ZZ")
_EDGE_TOL = 1e-12
# thermal self-correlation terms cancelling beyond this ratio are redone in extended precision
_SELF_CONDITION_LIMIT = 1e6
# below this |v|/2 the thermal bracket cancels to ~1/beta^3 and is evaluated in extended precision from the start
_SMALL_BETA = 1e-4
# below this |v|/2 the O(beta^2) motional corrections are beyond double precision
_REST_BETA = 1e-30


@dataclass(frozen=True)
class RectilinearConfig:
    """Separation ``a`` along X, relative velocity ``v`` along Y (each point moves at v/2)."""

    a: float
    v: float
    ctx: ThermalContext = field(default_factory=ThermalContext)

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise DomainError(f"separation a must be positive, got {self.a}")
        if not (math.isfinite(self.v) and abs(self.v) < 2.0):
            raise DomainError(f"each point must be slower than light (|v|/2 < 1), got v={self.v}")

    @property
    def beta(self) -> float:
        return 0.5 * self.v


@dataclass(frozen=True)
class SupportBand:
    """Doppler band: omega' lies in ``[lower, upper]``, i.e. omega'/omega in [-w, -1/w]."""

    w: float
    omega: float
    lower: float
    upper: float

    def contains(self, omega_prime: float) -> bool:
        return self.lower <= omega_prime <= self.upper


def band(config: RectilinearConfig, omega: float) -> SupportBand:
    """Admissible omega' interval for a given omega."""
    if omega == 0.0:
        raise DomainError("omega must be nonzero")
    if config.v == 0.0:
        raise DomainError("v = 0 collapses the band to the single point omega' = -omega")
    b = abs(config.beta)
    w = (1.0 + b) / (1.0 - b)
    ends = (-w * omega, -omega / w)
    return SupportBand(w=w, omega=float(omega), lower=min(ends), upper=max(ends))


def _band_variable(config: RectilinearConfig, omega: float, omega_prime: float) -> float:
    half_diff = 0.5 * (omega - omega_prime)
    total = omega + omega_prime
    if half_diff == 0.0:
        return math.inf
    return total / (half_diff * config.v)


def in_band(config: RectilinearConfig, omega: float, omega_prime: float) -> bool:
    """Whether (omega, omega') lies in the closed support band, edges within the edge tolerance."""
    if config.v == 0.0:
        return omega_prime == -omega
    return abs(_band_variable(config, float(omega), float(omega_prime))) - 1.0 <= _EDGE_TOL


def rect_exact(pair: str, config: RectilinearConfig, omega: float, omega_prime: float) -> complex:
    """Symmetrized spectral density of the pair at (omega, omega'), zero outside the band."""
    if pair not in PAIRS:
        raise DomainError(f"pair must be one of {PAIRS}, got {pair!r}")
    omega = float(omega)
    omega_prime = float(omega_prime)
    if omega == 0.0 and omega_prime == 0.0:
        raise DomainError("(omega, omega') = (0, 0) is excluded")
    if config.v == 0.0:
        raise DomainError("v = 0: the spectrum is a pure delta line, use the static module")
    u = _band_variable(config, omega, omega_prime)
    excess = abs(u) - 1.0
    if excess > _EDGE_TOL:
        return 0j
    edge = abs(excess) <= _EDGE_TOL
    u = max(-1.0, min(1.0, u))
    half_diff = 0.5 * (omega - omega_prime)
    k = abs(half_diff)
    root = math.sqrt(max(0.0, 1.0 - u * u))
    z = k * config.a * root
    weight = occupancy(config.ctx.temperature, k) + 0.5
    jac = 1.0 / (k * abs(config.v))
    cube = k**3 * weight * jac
    if pair == "XX":
        val = complex(cube * (_bessel_j(0, z) * (1.0 + u * u) + _bessel_j(2, z) * (1.0 - u * u)) / (16.0 * math.pi**2))
    elif pair == "YY":
        val = complex(cube * _bessel_j(0, z) * (1.0 - u * u) / (8.0 * math.pi**2))
    elif pair == "ZZ":
        val = complex(cube * (_bessel_j(0, z) * (1.0 + u * u) - _bessel_j(2, z) * (1.0 - u * u)) / (16.0 * math.pi**2))
    else:
        val = 1j * half_diff**3 * _bessel_j(1, z) * root * u * weight * jac / (8.0 * math.pi**2)
    return 0.5 * val if edge else val


def integrate_band(pair: str, config: RectilinearConfig, omega: float, g: Callable[[float], float], nodes: int = 64) -> complex:
    """Integral over omega' of ``rect_exact(pair, ...) * g(omega')`` by Gauss-Legendre on the band."""
    sb = band(config, omega)
    x, w = np.polynomial.legendre.leggauss(nodes)
    half = 0.5 * (sb.upper - sb.lower)
    mid = 0.5 * (sb.upper + sb.lower)
    total = 0j
    for xi, wi in zip(x, w):
        op = mid + half * xi
        total += wi * rect_exact(pair, config, omega, op) * g(op)
    return total * half


def _cubic_bracket(x: float) -> float:
    # (3 - x^2) sin x - 3 x cos x
    return (3.0 - x * x) * math.sin(x) - 3.0 * x * math.cos(x)


def rect_first_order(pair: str, config: RectilinearConfig, omega: float) -> list[SpectralLine]:
    """Spectrum to first order in v as delta / delta-prime lines in omega + omega'."""
    if pair not in PAIRS:
        raise DomainError(f"pair must be one of {PAIRS}, got {pair!r}")
    omega = float(omega)
    if omega == 0.0:
        raise DomainError("omega must be nonzero")
    a = config.a
    ctx = config.ctx
    if pair == "XX":
        return [SpectralLine(0, 0.0, static_correlation("parallel", omega, a, ctx))]
    if pair in ("YY", "ZZ"):
        return [SpectralLine(0, 0.0, static_correlation("perpendicular", omega, a, ctx))]

    v = config.v
    temp = ctx.temperature
    pref = -1j * v / (4.0 * math.pi**2 * a**3)
    x = abs(omega) * a
    n = occupancy(temp, abs(omega))
    slope = occupancy_slope(temp, abs(omega))
    c_prime = pref / a * (n + 0.5) * _cubic_bracket(x)
    zero_part = pref * 0.5 * (n + 0.5) * (omega * a) * (math.sin(x) - x * math.cos(x))
    thermal_part = pref * (-0.5) * slope / (omega * a) * _cubic_bracket(x)
    return [
        SpectralLine(1, 0.0, c_prime),
        SpectralLine(0, 0.0, zero_part),
        SpectralLine(0, 0.0, thermal_part),
    ]


def xy_unreduced_amplitude(config: RectilinearConfig, omega: float) -> tuple[Callable[[float], complex], Callable[[float], complex]]:
    """First-order XY as f(omega') delta'(omega + omega'), returned as (f, df/domega').

    Feeding these to :func:`reduce_delta_prime` at omega' = -omega yields the
    delta-prime line and the sum of the two delta lines of :func:`rect_first_order`.
    """
    a = config.a
    temp = config.ctx.temperature
    pref = -1j * config.v / (4.0 * math.pi**2 * a**4)
    omega = float(omega)

    def amp(d: float) -> complex:
        kk = abs(d)
        return pref * (occupancy(temp, kk) + 0.5) * _cubic_bracket(kk * a)

    def amp_slope(d: float) -> complex:
        kk = abs(d)
        x = kk * a
        sg = math.copysign(1.0, d) if d != 0.0 else 0.0
        n = occupancy(temp, kk)
        dn = 0.0 if temp == 0.0 else -n * (n + 1.0) / temp
        # d/dx of the cubic bracket is x (sin x - x cos x)
        return pref * sg * ((n + 0.5) * a * x * (math.sin(x) - x * math.cos(x)) + dn * _cubic_bracket(x))

    def f(op: float) -> complex:
        return amp(0.5 * (omega - op))

    def fprime(op: float) -> complex:
        # D = (omega - omega')/2, so d/domega' = -(1/2) d/dD
        return -0.5 * amp_slope(0.5 * (omega - op))

    return f, fprime


def _gamma_factors(beta: float) -> tuple[float, float]:
    g2 = 1.0 / (1.0 - beta * beta)
    eta = (1.0 + beta * beta) * g2
    return g2, eta


def rect_self_zero_point(pair: str, config: RectilinearConfig, omega: float) -> float:
    """Temperature-independent part of the self-correlation coefficient."""
    g2, eta = _gamma_factors(abs(config.beta))
    w3 = abs(float(omega)) ** 3
    if pair == "YY":
        return w3 / (4.0 * math.pi**2) * g2 * g2 / 3.0
    if pair in ("XX_or_ZZ", "XX", "ZZ"):
        return w3 / (8.0 * math.pi**2) * (2.0 / 3.0) * eta * g2 * g2
    raise DomainError(f"pair must be one of {SELF_PAIRS}, got {pair!r}")


def _thermal_terms(pair: str, beta, tau, li, g2, eta):
    # individual terms of the thermal bracket; `li(n, x)` supplies the polylog
    ep = mpmath.exp(-1 / (tau * (1 + beta))) if isinstance(beta, mpmath.mpf) else math.exp(-1.0 / (tau * (1.0 + beta)))
    em = mpmath.exp(-1 / (tau * (1 - beta))) if isinstance(beta, mpmath.mpf) else math.exp(-1.0 / (tau * (1.0 - beta)))
    r = tau / beta
    if pair == "YY":
        return [
            r * r * li(2, ep),
            r * r * li(2, em),
            -(r**3) / g2 * li(3, ep),
            (r**3) / g2 * li(3, em),
        ]
    p = (1 + beta) ** -2
    m = (1 - beta) ** -2
    return [
        r * p * li(1, ep),
        -r * m * li(1, em),
        -r * r / g2 * p * li(2, ep),
        -r * r / g2 * m * li(2, em),
        (r**3) * eta / g2 * li(3, ep),
        -(r**3) * eta / g2 * li(3, em),
    ]


def _thermal_self(pair: str, beta: float, tau: float) -> float:
    if beta >= _SMALL_BETA:
        g2, eta = _gamma_factors(beta)
        terms = _thermal_terms(pair, beta, tau, polylog, g2, eta)
        total = math.fsum(terms)
        scale = math.fsum(abs(t) for t in terms)
        if scale == 0.0:
            return 0.0
        cond = scale / abs(total) if total != 0.0 else math.inf
        if cond <= _SELF_CONDITION_LIMIT:
            return total
        digits = 25 + (int(math.log10(cond)) if math.isfinite(cond) else 40)
    else:
        digits = 30 + 3 * math.ceil(-math.log10(beta))
    with mpmath.workdps(digits):
        b = mpmath.mpf(beta)
        t = mpmath.mpf(tau)
        g2m = 1 / (1 - b * b)
        etam = (1 + b * b) * g2m
        terms = _thermal_terms(pair, b, t, lambda n, x: mpmath.polylog(n, x), g2m, etam)
        return float(mpmath.fsum(terms))


def rect_self(pair: str, config: RectilinearConfig, omega: float) -> float:
    """Self-correlation coefficient of delta(omega + omega') for one moving point."""
    if pair not in SELF_PAIRS and pair not in ("XX", "ZZ"):
        raise DomainError(f"pair must be one of {SELF_PAIRS}, got {pair!r}")
    omega = float(omega)
    if omega == 0.0:
        raise DomainError("omega must be nonzero")
    beta = abs(config.beta)
    ctx = config.ctx
    if beta < _REST_BETA:
        return self_correlation(omega, ctx)
    zero = rect_self_zero_point(pair, config, omega)
    if ctx.zero_temperature_flag:
        return zero
    w = abs(omega)
    tau = ctx.temperature / w
    pref = w**3 / (4.0 * math.pi**2) if pair == "YY" else w**3 / (8.0 * math.pi**2)
    return zero + pref * _thermal_self("YY" if pair == "YY" else "XX", beta, tau)


def lorentz_consistency(config: RectilinearConfig, omega: float) -> float:
    """Max relative gap between the zero-point self-correlations and their Lorentz-boosted static values."""
    if not config.ctx.zero_temperature_flag:
        raise DomainError("the Lorentz reconstruction applies to the zero-point part only (T = 0)")
    omega = float(omega)
    beta = config.beta
    gamma = 1.0 / math.sqrt(1.0 - beta * beta)
    rest = self_correlation(gamma * omega, config.ctx)
    # each transformed spectrum picks up gamma from the time dilation and 1/gamma from the delta
    boosted_yy = gamma * rest
    # transverse components mix E and B with weights gamma^2 and gamma^2 beta^2; static <E B> = 0
    boosted_xx = gamma * gamma * gamma * (1.0 + beta * beta) * rest
    direct_yy = rect_self("YY", config, omega)
    direct_xx = rect_self("XX_or_ZZ", config, omega)
    return max(abs(direct_yy - boosted_yy) / abs(boosted_yy), abs(direct_xx - boosted_xx) / abs(boosted_xx))
