"""Distributional spectral lines and the delta-prime reduction rule."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

__all__ = ["SpectralLine", "reduce_delta_prime", "pair_with_test_function"]


@dataclass(frozen=True)
class SpectralLine:
    """One term ``coefficient * delta^(k)(omega + omega' + shift)``."""

    derivative_order: int
    shift: float
    coefficient: complex

    def __post_init__(self):
        if self.derivative_order not in (0, 1):
            raise ValueError(f"derivative order must be 0 or 1, got {self.derivative_order}")
        object.__setattr__(self, "coefficient", complex(self.coefficient))
        object.__setattr__(self, "shift", float(self.shift))


def reduce_delta_prime(f: Callable[[float], complex], fprime: Callable[[float], complex], y: float) -> tuple[complex, complex]:
    """Rewrite f(x) delta'(x - y) as A delta'(x - y) + B delta(x - y).

    Returns ``(A, B) = (f(y), -f'(y))``.
    """
    return complex(f(y)), -complex(fprime(y))


def pair_with_test_function(lines: Iterable[SpectralLine], g: Callable[[float], complex], gprime: Callable[[float], complex], center: float) -> complex:
    """Integrate lines located at ``x = center - shift`` against a smooth test function g.

    A delta line contributes ``c g(x0)``, a delta-prime line ``-c g'(x0)``.
    """
    total = 0j
    for line in lines:
        x0 = center - line.shift
        if line.derivative_order == 0:
            total += line.coefficient * g(x0)
        else:
            total -= line.coefficient * gprime(x0)
    return total
