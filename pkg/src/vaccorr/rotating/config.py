"""Geometry and thermal state of two points revolving on a common circle."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from ..errors import DomainError
from ..specfun import ThermalContext

__all__ = ["RotatingConfig", "SuperluminalWarning"]


class SuperluminalWarning(UserWarning):
    """The points move faster than light (|Omega| r / 2 >= 1)."""


@dataclass(frozen=True)
class RotatingConfig:
    """Points A and B diametrically opposed on a circle of diameter ``r`` turning at ``Omega``."""

    r: float
    Omega: float
    ctx: ThermalContext = field(default_factory=ThermalContext)

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r > 0.0):
            raise DomainError(f"diameter r must be positive, got {self.r}")
        if not math.isfinite(self.Omega):
            raise DomainError(f"Omega must be finite, got {self.Omega}")
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "Omega", float(self.Omega))
        if abs(self.Omega) * self.r / 2.0 >= 1.0:
            warnings.warn(f"point speed |Omega| r / 2 = {abs(self.Omega) * self.r / 2.0} is not below light speed", SuperluminalWarning, stacklevel=2)

    @property
    def speed(self) -> float:
        """Speed of each point, |Omega| r / 2."""
        return abs(self.Omega) * self.r / 2.0

    def reversed(self) -> "RotatingConfig":
        """Same configuration turning the other way."""
        return RotatingConfig(self.r, -self.Omega, self.ctx)
