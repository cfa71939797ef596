import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from vaccorr.errors import DomainError, LightConeError
from vaccorr.oracle import quad_thermal_time
from vaccorr.specfun import ThermalContext
from vaccorr.timedomain import SpacetimeSeparation, c0, c2, thermal_parts, time_correlator

ZERO = ThermalContext(0.0)
# 40-digit mpmath quadratures of the thermal integrands at dt=0.5, s=1, T=1
C0_THERMAL = 3.8054739868951987833
C2_THERMAL = 1.1591611769756859386


def test_zero_temperature_examples():
    assert c0(SpacetimeSeparation(0.0, 1.0), ZERO) == -4.0
    assert c0(SpacetimeSeparation(0.0, 2.0), ZERO) == -0.25
    assert c2(SpacetimeSeparation(0.0, 1.0), ZERO) == -12.0
    sep = SpacetimeSeparation(0.0, 1.0)
    assert c0(sep, ZERO) - c2(sep, ZERO) == 8.0


def test_thermal_parts_frozen():
    t0, t2 = thermal_parts(SpacetimeSeparation(0.5, 1.0), ThermalContext(1.0))
    assert t0 == pytest.approx(C0_THERMAL, rel=1e-12)
    assert t2 == pytest.approx(C2_THERMAL, rel=1e-12)


@pytest.mark.parametrize("dt,s,temp", [(0.5, 1.0, 1.0), (2.0, 0.3, 0.4), (-1.0, 3.0, 2.5), (0.0, 0.7, 0.1)])
def test_thermal_parts_vs_frequency_quadrature(dt, s, temp):
    t0, t2 = thermal_parts(SpacetimeSeparation(dt, s), ThermalContext(temp))
    assert t0 == pytest.approx(quad_thermal_time(0, dt, s, temp), rel=1e-10)
    assert t2 == pytest.approx(quad_thermal_time(2, dt, s, temp), rel=1e-10)


def test_zero_temperature_branch_is_exact():
    assert thermal_parts(SpacetimeSeparation(0.3, 1.0), ZERO) == (0.0, 0.0)


@pytest.mark.parametrize("dt", [1.0, -1.0, 1.0 + 1e-14])
def test_light_cone(dt):
    with pytest.raises(LightConeError):
        c0(SpacetimeSeparation(dt, 1.0), ZERO)


@pytest.mark.parametrize("s", [0.0, -1.0, math.nan])
def test_separation_validation(s):
    with pytest.raises(DomainError):
        SpacetimeSeparation(0.1, s)


def test_projection_validation():
    with pytest.raises(DomainError):
        time_correlator("diagonal", SpacetimeSeparation(0.1, 1.0), ZERO)


@given(st.floats(-5.0, 5.0), st.floats(0.1, 5.0), st.floats(0.0, 3.0))
def test_projections_and_time_reversal(dt, s, temp):
    assume(abs(abs(dt) - s) > 1e-3)
    ctx = ThermalContext(temp)
    sep = SpacetimeSeparation(dt, s)
    k0, k2 = c0(sep, ctx), c2(sep, ctx)
    assert time_correlator("parallel", sep, ctx) == (k0 - k2) / (8.0 * math.pi**2)
    assert time_correlator("perpendicular", sep, ctx) == (k0 + k2) / (16.0 * math.pi**2)
    assert time_correlator("cross", sep, ctx) == 0.0
    # symmetrized correlators are even in the time difference
    rev = SpacetimeSeparation(-dt, s)
    scale = max(abs(k0), abs(k2), 1.0)
    assert abs(c0(rev, ctx) - k0) <= 1e-12 * scale
    assert abs(c2(rev, ctx) - k2) <= 1e-12 * scale


@given(st.floats(0.2, 3.0), st.floats(1e-3, 0.03))
def test_low_temperature_stefan_boltzmann_limit(s, temp):
    # at s T << 1 the thermal part tends to 4 Gamma(4) zeta(4) T^4 with an O((sT)^2) correction
    t0, _ = thermal_parts(SpacetimeSeparation(0.0, s), ThermalContext(temp))
    limit = 4.0 * math.pi**4 / 15.0 * temp**4
    assert abs(t0 / limit - 1.0) <= 4.0 * (s * temp) ** 2
