"""Mode sums expanded to first order in Omega r, in closed trigonometric form.

Each function returns the same quantity as :func:`mode_sum` for the given
shape and weight, dropping terms of order (Omega r)^2. The thermal pieces
carry the slope (omega/T) N (N + 1) of the occupancy.
"""

from __future__ import annotations

import math

from ..errors import DomainError
from ..specfun import occupancy, occupancy_slope
from .config import RotatingConfig
from .functions import CorrelationFunctionId as C

__all__ = ["first_order_sum", "FIRST_ORDER_KEYS"]

_SQRT_PI = math.sqrt(math.pi)

_FAMILIES = {
    C.PtimesPlus: "times", C.PtimesMinus: "times",
    C.PdivPlus: "div", C.PdivMinus: "div",
    C.P3plus: "p3", C.P3minus: "p3",
    C.PZplus: "pz", C.PZminus: "pz",
}

# (shape, weight) combinations that appear in the catalog
FIRST_ORDER_KEYS = frozenset(
    [(C.G0, "abs3"), (C.Gplus, "abs3"), (C.Gminus, "abs3"), (C.GZ, "abs3"), (C.Hplus, "signed3"), (C.Hminus, "signed3")]
    + [(fid, "abs4") for fid in _FAMILIES]
    + [(C.GZ, "signed4"), (C.Gplus, "signed4"), (C.Gminus, "signed4"), (C.QZ, "signed4")]
)


def _derivative_family(family, sg, alt, nh, dn, a, y, wr, s, c):
    a3 = a**3
    if family == "times":
        if alt:
            return -sg * y * wr * a3 * (5.0 * nh - dn) / (15.0 * _SQRT_PI)
        b = (3.0 - 2.0 * a * a) * s - (3.0 - a * a) * a * c
        b1 = (1.0 + a * a) * s - a * c
        return -(2.0 * nh * b - sg * nh * y * wr * b1 - sg * dn * y / wr * b) / (4.0 * _SQRT_PI)
    if family == "div":
        if alt:
            return -sg * y * wr * a3 * (5.0 * nh - dn) / (10.0 * _SQRT_PI)
        b = 3.0 * s - (3.0 + a * a) * a * c
        b1 = (3.0 + a * a) * s - 3.0 * a * c
        return (2.0 * nh * b + sg * nh * y * wr * b1 - sg * dn * y / wr * b) / (4.0 * _SQRT_PI)
    if family == "p3":
        if alt:
            return 0.0
        b = 3.0 * (5.0 - 2.0 * a * a) * s - (15.0 - a * a) * a * c
        b1 = (3.0 - a * a) * s - 3.0 * a * c
        return (2.0 * nh * b + 3.0 * sg * nh * y * wr * b1 - 3.0 * sg * dn * y / wr * b) / (4.0 * _SQRT_PI)
    # pz
    if alt:
        return -sg * y * wr * a3 * (5.0 * nh - dn) / (15.0 * _SQRT_PI)
    b = (3.0 - a * a) * s - 3.0 * a * c
    b1 = s - a * c
    return (2.0 * nh * b + sg * nh * y * wr * b1 - sg * dn * y / wr * b) / _SQRT_PI


def first_order_sum(shape: C | str, weight: str, self_factor: bool, config: RotatingConfig, omega: float) -> float:
    """First-order-in-Omega counterpart of ``mode_sum(shape, weight, self_factor, config, omega)``."""
    shape = C(shape)
    if (shape, weight) not in FIRST_ORDER_KEYS:
        raise DomainError(f"no first-order form for {shape.value} with weight {weight}")
    omega = float(omega)
    if omega == 0.0 or not math.isfinite(omega):
        raise DomainError(f"omega must be finite and nonzero, got {omega}")
    w = abs(omega)
    r = config.r
    temp = config.ctx.temperature
    a = w * r
    y = config.Omega * r
    wr = omega * r
    nh = occupancy(temp, w) + 0.5
    dn = occupancy_slope(temp, w)
    s = math.sin(a)
    c = math.cos(a)
    a3 = a**3
    alt = bool(self_factor)
    sg = shape.sign

    if weight == "abs3":
        if shape is C.G0:
            return 8.0 / (3.0 * _SQRT_PI) * nh * a3 if alt else 2.0 / _SQRT_PI * nh * ((1.0 + a * a) * s - a * c)
        if shape is C.GZ:
            return 8.0 / (3.0 * _SQRT_PI) * nh * a3 if alt else -4.0 / _SQRT_PI * nh * ((1.0 - a * a) * s - a * c)
        # G plus / minus
        if alt:
            return 0.0
        b = (3.0 - a * a) * s - 3.0 * a * c
        return (nh * b + sg * nh * y * wr * (s - a * c) - sg * dn * y / wr * b) / _SQRT_PI
    if weight == "signed3":
        if alt:
            return -sg * y * a3 * (4.0 * nh - dn) / (3.0 * _SQRT_PI)
        return (2.0 * nh * wr * (s - a * c) + sg * nh * y * ((1.0 + a * a) * s - a * c) - sg * dn * y * (s - a * c)) / _SQRT_PI
    if weight == "abs4":
        return _derivative_family(_FAMILIES[shape], sg, alt, nh, dn, a, y, wr, s, c)
    # signed4
    if shape is C.GZ:
        return 8.0 / (3.0 * _SQRT_PI) * nh * wr * a3 if alt else -4.0 / _SQRT_PI * nh * wr * ((1.0 - a * a) * s - a * c)
    if shape is C.QZ:
        return 4.0 / (3.0 * _SQRT_PI) * nh * wr * a3 if alt else 4.0 / _SQRT_PI * nh * wr * (s - a * c)
    if alt:
        return 0.0
    b = (3.0 - a * a) * s - 3.0 * a * c
    return (nh * wr * b + sg * nh * y * (3.0 * s - (3.0 + a * a) * a * c) - sg * dn * y * b) / _SQRT_PI
