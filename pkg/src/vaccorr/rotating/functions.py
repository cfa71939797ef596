"""Spectral shape functions of revolving points and the Bessel-product integrals behind them.

Every shape is a prefactored regularized 2F3 of argument -(x/2)^2, where
x = |omega_n| r is the dimensionless shifted frequency of mode n.
"""

from __future__ import annotations

import math
from enum import Enum

from ..errors import DomainError
from ..specfun import pfq_regularized

__all__ = ["CorrelationFunctionId", "corr_fn", "bessel_integral_closed", "X_PARITY"]


class CorrelationFunctionId(str, Enum):
    """Tags of the shape functions."""

    G0 = "G0"
    Gplus = "Gplus"
    Gminus = "Gminus"
    GZ = "GZ"
    QZ = "QZ"
    Hplus = "Hplus"
    Hminus = "Hminus"
    PtimesPlus = "PtimesPlus"
    PtimesMinus = "PtimesMinus"
    PdivPlus = "PdivPlus"
    PdivMinus = "PdivMinus"
    P3plus = "P3plus"
    P3minus = "P3minus"
    PZplus = "PZplus"
    PZminus = "PZminus"
    PparaPlus = "PparaPlus"
    PparaMinus = "PparaMinus"
    PnparaPlus = "PnparaPlus"
    PnparaMinus = "PnparaMinus"

    @property
    def sign(self) -> int:
        """+1 / -1 for the signed members of a family, 0 otherwise."""
        v = self.value
        if v.endswith(("plus", "Plus")):
            return 1
        if v.endswith(("minus", "Minus")):
            return -1
        return 0


C = CorrelationFunctionId
_EVEN = {C.G0, C.Gplus, C.Gminus, C.GZ, C.QZ}
# +1: even in x, -1: odd in x
X_PARITY = {fid: (1 if fid in _EVEN else -1) for fid in C}

_HALF = 0.5


def _dipole_pair(n: int, sign: int) -> tuple[float, float]:
    # lower parameters of the first-derivative family for the + / - member
    if sign > 0:
        return (2.0 - n, 1.0 + n)
    return (1.0 - n, 2.0 + n)


def corr_fn(fid: CorrelationFunctionId | str, n: int, x: float) -> float:
    """Evaluate shape ``fid`` for mode index ``n`` at dimensionless frequency ``x``."""
    fid = CorrelationFunctionId(fid)
    n = int(n)
    x = float(x)
    k = 0.5 * x
    z = -k * k
    nf = float(n)
    if fid is C.G0:
        low = (1.0 - nf, 1.0 + nf)
        return 2.0 * pfq_regularized((_HALF, 1.0), (1.5,) + low, z) - pfq_regularized((_HALF, 2.0), (2.5,) + low, z)
    if fid is C.GZ:
        return 2.0 * pfq_regularized((_HALF, 2.0), (2.5, 1.0 - nf, 1.0 + nf), z)
    if fid is C.QZ:
        return pfq_regularized((_HALF, 1.0), (2.5, 1.0 - nf, 1.0 + nf), z)
    if fid in (C.Gplus, C.Gminus):
        low = (3.0 - nf, 1.0 + nf) if fid is C.Gplus else (1.0 - nf, 3.0 + nf)
        return 0.25 * k * k * pfq_regularized((1.5, 2.0), (3.5,) + low, z)
    if fid in (C.Hplus, C.Hminus):
        low = _dipole_pair(n, fid.sign)
        return 0.5 * k * pfq_regularized((1.0, 1.5), (2.5,) + low, z)
    if fid in (C.P3plus, C.P3minus):
        low = (4.0 - nf, 1.0 + nf) if fid is C.P3plus else (1.0 - nf, 4.0 + nf)
        return 3.0 / 16.0 * k**3 * pfq_regularized((2.0, 2.5), (4.5,) + low, z)
    low = _dipole_pair(n, fid.sign)
    f1 = pfq_regularized((1.0, 1.5), (3.5,) + low, z)
    if fid in (C.PZplus, C.PZminus):
        return 0.25 * k * f1
    f2 = pfq_regularized((1.5, 2.0), (3.5,) + low, z)
    if fid in (C.PtimesPlus, C.PtimesMinus):
        return 0.125 * k * (f1 + f2)
    f52 = pfq_regularized((1.0, 1.5), (2.5,) + low, z)
    if fid in (C.PdivPlus, C.PdivMinus):
        return 0.25 * k * (f52 - 0.5 * f1 - 0.5 * f2)
    if fid in (C.PparaPlus, C.PparaMinus):
        return 0.5 * k * (f52 - 0.75 * f1 - 0.75 * f2)
    if fid in (C.PnparaPlus, C.PnparaMinus):
        return -0.5 * k * (f52 - 0.25 * f1 - 0.25 * f2)
    raise DomainError(f"unknown correlation function {fid!r}")


def bessel_integral_closed(l: int, m: int, n: int, kappa: float) -> float:
    """Closed form of int_0^{pi/2} sin^l(t) J_n(kappa sin t) J_{m-n}(kappa sin t) dt."""
    l = int(l)
    m = int(m)
    n = int(n)
    kappa = float(kappa)
    if m < 0:
        # J_n J_{m-n} = (-1)^m J_{-n} J_{|m|+n}
        sign = -1.0 if (-m) % 2 == 1 else 1.0
        return sign * bessel_integral_closed(l, -m, -n, kappa)
    if l + m < 0 or 1 + l + m <= 0:
        raise DomainError(f"integral diverges at the origin for l={l}, m={m}")
    upper = (0.5 * (1 + m), 0.5 * (2 + m), 0.5 * (1 + l + m))
    lower = (1.0 + n, 1.0 + m - n, 1.0 + m, 0.5 * (2 + l + m))
    series = pfq_regularized(upper, lower, -kappa * kappa)
    pref = 0.5 * math.sqrt(math.pi) * (0.5 * kappa) ** m * math.factorial(m) * math.gamma(0.5 * (1 + l + m))
    return pref * series


