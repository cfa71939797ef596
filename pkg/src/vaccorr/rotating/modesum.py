"""Adaptive sums over the harmonics omega_n = omega + n Omega."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from ..errors import DomainError, NonConvergenceError
from ..specfun import occupancy
from .config import RotatingConfig
from .functions import CorrelationFunctionId, corr_fn

__all__ = ["ModeSum", "mode_sum", "WEIGHTS", "DEFAULT_TOL", "DEFAULT_CAP", "mode_weight"]

# abs3: |x|^3, signed3: x|x|^2, abs4: x^4, signed4: x|x|^3 with x = omega_n r
WEIGHTS = ("abs3", "signed3", "abs4", "signed4")
DEFAULT_TOL = 1e-15
DEFAULT_CAP = 100_000
# consecutive negligible levels required before stopping
_QUIET_LEVELS = 5
_TAIL_FACTOR = 10.0


@dataclass(frozen=True)
class ModeSum:
    """Value of a mode sum, the largest |n| visited and a bound on the omitted tail."""

    value: float
    n_max: int
    tail: float


def mode_weight(weight: str, x: float) -> float:
    """Power weight of the signed dimensionless frequency ``x = omega_n r``."""
    a = abs(x)
    if weight == "abs3":
        return a**3
    if weight == "signed3":
        return x * a * a
    if weight == "abs4":
        return a**4
    if weight == "signed4":
        return x * a**3
    raise DomainError(f"weight must be one of {WEIGHTS}, got {weight!r}")


def _term(shape: CorrelationFunctionId, weight: str, self_factor: bool, r: float, Omega: float, temperature: float, omega: float, n: int) -> float:
    wn = omega + n * Omega
    if wn == 0.0:
        return 0.0
    a = abs(wn)
    x = wn * r
    t = (occupancy(temperature, a) + 0.5) * mode_weight(weight, x) * corr_fn(shape, n, a * r)
    if self_factor and n % 2:
        t = -t
    return t


@lru_cache(maxsize=4096)
def _mode_sum_cached(shape, weight, self_factor, r, Omega, temperature, omega, tol, cap):
    total = _term(shape, weight, self_factor, r, Omega, temperature, omega, 0)
    quiet = 0
    last = abs(total)
    n = 0
    while quiet < _QUIET_LEVELS:
        n += 1
        if n > cap:
            raise NonConvergenceError(f"mode sum of {shape.value} did not converge within |n| <= {cap} (omega={omega}, Omega={Omega}, r={r})")
        level = _term(shape, weight, self_factor, r, Omega, temperature, omega, n)
        level += _term(shape, weight, self_factor, r, Omega, temperature, omega, -n)
        total += level
        last = abs(level)
        if last <= tol * abs(total) or (level == 0.0 and total == 0.0):
            quiet += 1
        else:
            quiet = 0
    return ModeSum(value=total, n_max=n, tail=_TAIL_FACTOR * last)


def mode_sum(shape: CorrelationFunctionId | str, weight: str, self_factor: bool, config: RotatingConfig, omega: float, tol: float = DEFAULT_TOL, cap: int = DEFAULT_CAP) -> ModeSum:
    """Sum (sign)^n (N[|omega_n|] + 1/2) weight(omega_n r) shape_n(|omega_n| r) over all integers n.

    ``self_factor`` inserts (-1)^n for two fields taken at the same point.
    Symmetric levels {n, -n} are added until five in a row fall below
    ``tol`` times the running sum.
    """
    shape = CorrelationFunctionId(shape)
    if weight not in WEIGHTS:
        raise DomainError(f"weight must be one of {WEIGHTS}, got {weight!r}")
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol}")
    omega = float(omega)
    if not math.isfinite(omega):
        raise DomainError(f"omega must be finite, got {omega}")
    return _mode_sum_cached(shape, weight, bool(self_factor), config.r, config.Omega, config.ctx.temperature, omega, float(tol), int(cap))
