"""Correlations between two points revolving on a circle."""

from .catalog import (
    PREFACTOR,
    FieldPair,
    RotatingLine,
    RotatingSpectrum,
    all_pairs,
    cartesian_from_circular,
    circular_terms,
    correlation,
    direct_cartesian,
)
from .checks import CheckReport, index_symmetry_check, omega_reversal_check, quarter_turn_delay_check
from .config import RotatingConfig, SuperluminalWarning
from .firstorder import first_order_sum
from .functions import CorrelationFunctionId, bessel_integral_closed, corr_fn
from .modesum import ModeSum, mode_sum

__all__ = [
    "PREFACTOR",
    "FieldPair",
    "RotatingLine",
    "RotatingSpectrum",
    "all_pairs",
    "cartesian_from_circular",
    "circular_terms",
    "correlation",
    "direct_cartesian",
    "CheckReport",
    "index_symmetry_check",
    "omega_reversal_check",
    "quarter_turn_delay_check",
    "RotatingConfig",
    "SuperluminalWarning",
    "first_order_sum",
    "CorrelationFunctionId",
    "bessel_integral_closed",
    "corr_fn",
    "ModeSum",
    "mode_sum",
]
