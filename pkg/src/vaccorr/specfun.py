"""Special functions: reciprocal gamma, digamma family on 1+iy, polylogarithms,
integer-order Bessel J, regularized generalized hypergeometric series and the
Planck occupancy.

All scalar kernels are compiled with numba unless ``VACCORR_DISABLE_JIT`` is set.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from ._jit import njit
from .errors import DomainError, NonConvergenceError

__all__ = [
    "HypergeometricSpec",
    "ThermalContext",
    "reciprocal_gamma",
    "digamma_family",
    "polylog",
    "bessel_j",
    "hyp_pfq_regularized",
    "pfq_regularized",
    "thermal_occupancy",
    "occupancy",
    "occupancy_slope",
    "DEFAULT_TERM_CAP",
]

DEFAULT_TERM_CAP = 10**6
# Above this ratio of sum(|terms|)/|sum| the double-precision series is redone
# with extended-precision arithmetic.
_CONDITION_LIMIT = 1.0e4

# Bernoulli numbers B_2 .. B_16
_B2K = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
)


# ---------------------------------------------------------------------------
# reciprocal gamma
# ---------------------------------------------------------------------------


@njit(cache=True)
def _sinpi(z):
    # sin(pi z) with exact zeros at integers; z - round(z) is exact, so no
    # accuracy is lost next to the integers
    n = math.floor(z + 0.5)
    d = z - n
    if d == 0.0:
        return 0.0
    s = math.sin(math.pi * d)
    if n - 2.0 * math.floor(0.5 * n) != 0.0:
        return -s
    return s


@njit(cache=True)
def _rgamma(z):
    if z <= 0.0 and z == math.floor(z):
        return 0.0
    if z > 0.0:
        if z < 171.0:
            return 1.0 / math.gamma(z)
        return math.exp(-math.lgamma(z))
    w = 1.0 - z
    s = _sinpi(z)
    if w < 171.0:
        return s * math.gamma(w) / math.pi
    return s * math.exp(math.lgamma(w)) / math.pi


@njit(cache=True)
def _log_abs_rgamma(z):
    # (log|1/Gamma(z)|, sign); caller guarantees z is not a pole
    lg = math.lgamma(z)
    sign = 1.0
    if z < 0.0:
        if int(math.ceil(-z)) % 2 == 1:
            sign = -1.0
    return -lg, sign


def reciprocal_gamma(z: float) -> float:
    """Return 1/Gamma(z); exactly zero at nonpositive integers."""
    return float(_rgamma(float(z)))


# ---------------------------------------------------------------------------
# digamma family on the line 1 + i y
# ---------------------------------------------------------------------------


@njit(cache=True)
def _polygamma_line(order, y):
    yy = abs(y)
    z = complex(1.0, yy)
    acc = 0j
    for j in range(7):
        zj = z + j
        if order == 0:
            acc -= 1.0 / zj
        elif order == 1:
            acc += 1.0 / (zj * zj)
        else:
            acc -= 2.0 / (zj * zj * zj)
    w = z + 7.0
    iw = 1.0 / w
    iw2 = iw * iw
    if order == 0:
        s = cmath.log(w) - 0.5 * iw
        p = iw2
        for k in range(8):
            s -= _B2K[k] / (2.0 * (k + 1)) * p
            p *= iw2
    elif order == 1:
        s = iw + 0.5 * iw2
        p = iw2 * iw
        for k in range(8):
            s += _B2K[k] * p
            p *= iw2
    else:
        s = -iw2 - iw2 * iw
        p = iw2 * iw2
        for k in range(8):
            s -= (2.0 * k + 3.0) * _B2K[k] * p
            p *= iw2
    res = s + acc
    if y < 0.0:
        res = res.conjugate()
    return res


@njit(cache=True)
def _polygamma_line_array(order, y):
    out = np.empty(y.shape[0], dtype=np.complex128)
    for i in range(y.shape[0]):
        out[i] = _polygamma_line(order, y[i])
    return out


def digamma_family(order: int, y: float) -> complex:
    """psi, psi' or psi'' (``order`` 0, 1, 2) evaluated at 1 + i*y."""
    if order not in (0, 1, 2):
        raise DomainError(f"order must be 0, 1 or 2, got {order}")
    return complex(_polygamma_line(int(order), float(y)))


# ---------------------------------------------------------------------------
# polylogarithms Li_1 .. Li_3 on [0, 1)
# ---------------------------------------------------------------------------

# zeta(3 - k) for k = 0 .. 22; the k = n - 1 entry is never used (pole at 1)
_ZETA_DESC = (
    1.2020569031595942854,  # zeta(3)
    math.pi**2 / 6.0,  # zeta(2)
    0.0,  # zeta(1), unused
    -0.5,  # zeta(0)
    -1.0 / 12.0,
    0.0,
    1.0 / 120.0,
    0.0,
    -1.0 / 252.0,
    0.0,
    1.0 / 240.0,
    0.0,
    -1.0 / 132.0,
    0.0,
    691.0 / 32760.0,
    0.0,
    -1.0 / 12.0,
    0.0,
    3617.0 / 8160.0,
    0.0,
    -43867.0 / 14364.0,
    0.0,
    174611.0 / 6600.0,
)


@njit(cache=True)
def _polylog(n, x):
    if n == 1:
        return -math.log1p(-x)
    if x == 0.0:
        return 0.0
    if x <= 0.5:
        s = 0.0
        p = 1.0
        for k in range(1, 200):
            p *= x
            t = p / float(k) ** n
            s += t
            if t < 1e-17 * s:
                break
        return s
    # expansion in mu = -ln x around x = 1
    mu = -math.log(x)
    off = 3 - n  # index of zeta(n) in the descending table
    harmonic = 1.0 if n == 2 else 1.5
    s = 0.0
    p = 1.0  # (-mu)^k / k!
    for k in range(0, 23 - off):
        if k == n - 1:
            if mu > 0.0:
                s += p * (harmonic - math.log(mu))
        else:
            s += _ZETA_DESC[off + k] * p
        p *= -mu / (k + 1)
    return s


def polylog(n: int, x: float) -> float:
    """Li_n(x) = sum_k x^k / k^n for n in {1, 2, 3} and 0 <= x < 1."""
    if n not in (1, 2, 3):
        raise DomainError(f"polylog order must be 1, 2 or 3, got {n}")
    x = float(x)
    if not (0.0 <= x < 1.0):
        raise DomainError(f"polylog argument must lie in [0, 1), got {x}")
    return float(_polylog(int(n), x))


# ---------------------------------------------------------------------------
# Bessel J of integer order
# ---------------------------------------------------------------------------


@njit(cache=True)
def _bessel_series(n, x):
    h = 0.5 * x
    t = 1.0
    for k in range(1, n + 1):
        t *= h / k
    s = t
    q = -h * h
    k = 1
    while True:
        t *= q / (k * (n + k))
        s += t
        if abs(t) <= 1e-17 * abs(s) or t == 0.0:
            break
        k += 1
    return s


@njit(cache=True)
def _bessel_miller(n, x):
    big = max(n, int(x))
    m = big + 30 + int(math.sqrt(40.0 * big))
    if m % 2 == 1:
        m += 1
    bjp = 0.0
    bj = 1e-30
    ans = bj if m == n else 0.0
    norm = 2.0 * bj
    tox = 2.0 / x
    for k in range(m, 0, -1):
        bjm = k * tox * bj - bjp
        bjp = bj
        bj = bjm
        if abs(bj) > 1e250:
            bj *= 1e-250
            bjp *= 1e-250
            ans *= 1e-250
            norm *= 1e-250
        kk = k - 1
        if kk == n:
            ans = bj
        if kk % 2 == 0:
            norm += bj if kk == 0 else 2.0 * bj
    return ans / norm


@njit(cache=True)
def _bessel_j(n, x):
    sign = 1.0
    if n < 0:
        n = -n
        if n % 2 == 1:
            sign = -sign
    if x < 0.0:
        x = -x
        if n % 2 == 1:
            sign = -sign
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    # the power series is used only where its terms do not cancel badly
    if x <= 2.0 or 4.0 * n >= x * x:
        return sign * _bessel_series(n, x)
    return sign * _bessel_miller(n, x)


def bessel_j(n: int, x: float) -> float:
    """Bessel function of the first kind J_n(x) for integer n and real x."""
    return float(_bessel_j(int(n), float(x)))


# ---------------------------------------------------------------------------
# regularized generalized hypergeometric series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HypergeometricSpec:
    """Parameters of a regularized pFq series sum_k prod(a)_k / prod Gamma(b+k) x^k / k!."""

    upper: tuple
    lower: tuple
    argument: float

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        if len(self.upper) > len(self.lower):
            raise DomainError("the series needs at least as many lower as upper parameters")


@njit(cache=True)
def _start_index(b):
    k0 = 0
    for j in range(b.shape[0]):
        bj = b[j]
        if bj <= 0.0 and bj == math.floor(bj):
            k = int(1.0 - bj)
            if k > k0:
                k0 = k
    return k0


@njit(cache=True)
def _first_term(a, b, x, k0):
    if k0 <= 30:
        t = 1.0
        for j in range(k0):
            t *= x / (j + 1.0)
            for i in range(a.shape[0]):
                t *= a[i] + j
        for i in range(b.shape[0]):
            t *= _rgamma(b[i] + k0)
        return t
    # log domain for long runs of leading zeros
    sign = 1.0
    if x < 0.0 and k0 % 2 == 1:
        sign = -1.0
    logt = k0 * math.log(abs(x)) - math.lgamma(k0 + 1.0)
    for i in range(a.shape[0]):
        for j in range(k0):
            v = a[i] + j
            if v == 0.0:
                return 0.0
            if v < 0.0:
                sign = -sign
            logt += math.log(abs(v))
    for i in range(b.shape[0]):
        lr, sg = _log_abs_rgamma(b[i] + k0)
        logt += lr
        sign *= sg
    return sign * math.exp(logt)


@njit(cache=True)
def _pfq_double(a, b, x, cap):
    # returns (sum, sum of |terms|, terms used, status); status 1 = cap, 2 = overflow
    k0 = _start_index(b)
    if x == 0.0:
        if k0 > 0:
            return 0.0, 0.0, 0, 0
        t = 1.0
        for i in range(b.shape[0]):
            t *= _rgamma(b[i])
        return t, abs(t), 1, 0
    t = _first_term(a, b, x, k0)
    s = t
    acc = abs(t)
    k = k0
    small = 0
    ax = abs(x)
    used = 1
    while True:
        r = x / (k + 1.0)
        for i in range(a.shape[0]):
            r *= a[i] + k
        for i in range(b.shape[0]):
            r /= b[i] + k
        t *= r
        k += 1
        used += 1
        s += t
        acc += abs(t)
        if not math.isfinite(acc):
            return s, acc, used, 2
        if abs(t) < 1e-15 * abs(s) or t == 0.0:
            small += 1
        else:
            small = 0
        if small >= 3 and k > ax:
            return s, acc, used, 0
        if used > cap:
            return s, acc, used, 1


def _pfq_mp_pass(a, b, x, dps, cap):
    with mpmath.workdps(dps):
        X = mpmath.mpf(x)
        A = [mpmath.mpf(v) for v in a]
        B = [mpmath.mpf(v) for v in b]
        k0 = 0
        for bj in b:
            if bj <= 0 and bj == math.floor(bj):
                k0 = max(k0, int(1 - bj))
        t = mpmath.mpf(1)
        for j in range(k0):
            t *= X / (j + 1)
            for ai in A:
                t *= ai + j
        for bj in B:
            t *= mpmath.rgamma(bj + k0)
        s = t
        acc = abs(t)
        k = k0
        small = 0
        used = 1
        eps = mpmath.mpf(10) ** (-22)
        ax = abs(x)
        while True:
            r = X / (k + 1)
            for ai in A:
                r *= ai + k
            for bj in B:
                r /= bj + k
            t *= r
            k += 1
            used += 1
            s += t
            acc += abs(t)
            if abs(t) < eps * abs(s) or t == 0:
                small += 1
            else:
                small = 0
            if small >= 3 and k > ax:
                return s, acc
            if used > cap:
                raise NonConvergenceError(f"hypergeometric series exceeded {cap} terms at x={x}")


def _pfq_extended(a, b, x, cap, cond_hint):
    if math.isfinite(cond_hint) and cond_hint > 0:
        lost = math.log10(cond_hint)
    else:
        lost = 0.9 * math.sqrt(abs(x)) + 10.0
    dps = int(30 + lost)
    for _ in range(6):
        s, acc = _pfq_mp_pass(a, b, x, dps, cap)
        if s == 0:
            if acc == 0:
                return 0.0
            lost_now = dps  # total cancellation: raise precision
        else:
            lost_now = float(mpmath.log10(acc / abs(s)))
        if dps - lost_now >= 22:
            return float(s)
        dps = int(lost_now + 40)
    raise NonConvergenceError(f"extended-precision series did not stabilise at x={x}")


def pfq_regularized(upper: Sequence[float], lower: Sequence[float], x: float, cap: int = DEFAULT_TERM_CAP) -> float:
    """Regularized pFq at real ``x`` with the given upper and lower parameter lists."""
    a = np.asarray([float(v) for v in upper], dtype=np.float64)
    b = np.asarray([float(v) for v in lower], dtype=np.float64)
    x = float(x)
    s, acc, used, status = _pfq_double(a, b, x, cap)
    if status == 1:
        raise NonConvergenceError(f"hypergeometric series exceeded {cap} terms at x={x}")
    if status == 0:
        if acc == 0.0:
            return 0.0
        cond = acc / abs(s) if s != 0.0 else math.inf
        if cond <= _CONDITION_LIMIT:
            return float(s)
    else:
        cond = math.inf
    return _pfq_extended(tuple(a), tuple(b), x, cap, cond)


def hyp_pfq_regularized(spec: HypergeometricSpec, cap: int = DEFAULT_TERM_CAP) -> float:
    """Evaluate the regularized series described by ``spec``."""
    up = [float(Fraction(v)) if isinstance(v, (str, Fraction)) else float(v) for v in spec.upper]
    lo = [float(Fraction(v)) if isinstance(v, (str, Fraction)) else float(v) for v in spec.lower]
    return pfq_regularized(up, lo, spec.argument, cap)


# ---------------------------------------------------------------------------
# thermal occupancy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThermalContext:
    """Temperature in natural units; T = 0 selects the exact zero-temperature branch."""

    temperature: float = 0.0
    zero_temperature_flag: bool = field(init=False)

    def __post_init__(self):
        t = float(self.temperature)
        if not math.isfinite(t) or t < 0.0:
            raise DomainError(f"temperature must be finite and nonnegative, got {self.temperature}")
        object.__setattr__(self, "temperature", t)
        object.__setattr__(self, "zero_temperature_flag", t == 0.0)


@njit(cache=True)
def occupancy(temperature, omega):
    """Planck occupancy 1/(exp(omega/T) - 1) for omega > 0; 0 at T = 0."""
    if temperature == 0.0:
        return 0.0
    r = omega / temperature
    if r > 700.0:
        return math.exp(-r)
    return 1.0 / math.expm1(r)


@njit(cache=True)
def occupancy_slope(temperature, omega):
    """(omega/T) N (N + 1), the logarithmic temperature derivative of N; 0 at T = 0."""
    if temperature == 0.0:
        return 0.0
    r = omega / temperature
    if r > 700.0:
        return r * math.exp(-r)
    n = 1.0 / math.expm1(r)
    return r * n * (n + 1.0)


def thermal_occupancy(ctx: ThermalContext, omega: float) -> float:
    """N[omega] for the given thermal context; requires omega > 0."""
    omega = float(omega)
    if not omega > 0.0:
        raise DomainError(f"occupancy needs omega > 0, got {omega}")
    if ctx.zero_temperature_flag:
        return 0.0
    return float(occupancy(ctx.temperature, omega))
