import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vaccorr.errors import DomainError
from vaccorr.oracle import fourier_crosscheck
from vaccorr.specfun import ThermalContext
from vaccorr.staticfreq import self_correlation, spectral_weight, static_correlation, static_ctilde, static_spectrum

COINCIDENCE = 1.0 / (12.0 * math.pi**2)
ZERO = ThermalContext(0.0)
# 40-digit mpmath evaluations of the closed forms
PARALLEL_W2_S15_T1 = 0.030658895476503751392
PERPENDICULAR_W2_S15_T1 = -0.0090713262525820725952
CTILDE2_W1_S1_T05 = 0.31399089010639985833


def test_coincidence_limits():
    for proj in ("parallel", "perpendicular"):
        assert static_correlation(proj, 1.0, 1e-9, ZERO) == pytest.approx(COINCIDENCE, rel=1e-13)
    assert self_correlation(1.0, ZERO) == pytest.approx(COINCIDENCE, rel=1e-15)


def test_ctilde_examples():
    assert abs(static_ctilde(0, 1.0, math.pi, ZERO)) < 1e-15
    assert static_ctilde(0, -1.0, 1.0, ZERO, symmetrized=False) == 0.0
    assert static_ctilde(2, 1.0, 1.0, ThermalContext(0.5)) == pytest.approx(CTILDE2_W1_S1_T05, rel=1e-13)


def test_frozen_projections():
    ctx = ThermalContext(1.0)
    assert static_correlation("parallel", 2.0, 1.5, ctx) == pytest.approx(PARALLEL_W2_S15_T1, rel=1e-13)
    assert static_correlation("perpendicular", 2.0, 1.5, ctx) == pytest.approx(PERPENDICULAR_W2_S15_T1, rel=1e-13)


@given(st.floats(-20.0, 20.0).filter(lambda w: abs(w) > 1e-6), st.floats(1e-6, 20.0), st.floats(0.0, 5.0))
def test_projection_structure_and_evenness(omega, s, temp):
    ctx = ThermalContext(temp)
    k0 = static_ctilde(0, omega, s, ctx)
    k2 = static_ctilde(2, omega, s, ctx)
    assert static_correlation("parallel", omega, s, ctx) == (k0 - k2) / (8.0 * math.pi**2)
    assert static_correlation("perpendicular", omega, s, ctx) == (k0 + k2) / (16.0 * math.pi**2)
    for proj in ("parallel", "perpendicular"):
        assert static_correlation(proj, omega, s, ctx) == static_correlation(proj, -omega, s, ctx)


@given(st.floats(1e-3, 20.0), st.floats(1e-3, 20.0), st.floats(0.0, 5.0))
def test_symmetrized_is_mean_of_ordered(w, s, temp):
    ctx = ThermalContext(temp)
    for which in (0, 2):
        sym = static_ctilde(which, w, s, ctx)
        ordered = 0.5 * (static_ctilde(which, w, s, ctx, False) + static_ctilde(which, -w, s, ctx, False))
        assert abs(sym - ordered) <= 1e-13 * max(abs(sym), 1e-300)


@given(st.floats(1e-5, 5e-3), st.floats(0.5, 3.0))
def test_small_argument_branch_is_continuous(x, w):
    # the Taylor branch and the trigonometric form agree across the switch
    s_lo = 0.999e-3 / w
    s_hi = 1.001e-3 / w
    for which in (0, 2):
        lo = static_ctilde(which, w, s_lo, ZERO)
        hi = static_ctilde(which, w, s_hi, ZERO)
        assert abs(lo - hi) <= 1e-5 * abs(hi)


def test_weights():
    ctx = ThermalContext(1.0)
    n = 1.0 / math.expm1(2.0)
    assert spectral_weight(ctx, 2.0) == pytest.approx(n + 0.5)
    assert spectral_weight(ctx, 2.0, False) == pytest.approx(n + 1.0)
    assert spectral_weight(ctx, -2.0, False) == pytest.approx(n)


@pytest.mark.parametrize("omega,s", [(0.0, 1.0), (1.0, 0.0), (1.0, -1.0), (math.inf, 1.0)])
def test_domain(omega, s):
    with pytest.raises(DomainError):
        static_correlation("parallel", omega, s, ZERO)


def test_unknown_projection():
    with pytest.raises(DomainError):
        static_correlation("diagonal", 1.0, 1.0, ZERO)
    with pytest.raises(DomainError):
        static_ctilde(1, 1.0, 1.0, ZERO)


def test_spectrum_wrapper():
    sp = static_spectrum("parallel", 1.0, 2.0, ZERO)
    assert sp.coefficient == static_correlation("parallel", 1.0, 2.0, ZERO)


@pytest.mark.parametrize("s,temp,omega", [(1.0, 1.0, 2.0), (1.0, 1.0, 0.5), (2.0, 0.3, 1.0)])
def test_fourier_examples(s, temp, omega):
    rep = fourier_crosscheck(s, temp, [omega])
    assert rep.max_relative_error <= 1e-6
