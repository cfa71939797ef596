import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vaccorr.errors import DomainError, NonConvergenceError
from vaccorr.oracle import (
    QuadratureSpec,
    composite_gauss_legendre,
    fourier_crosscheck,
    quad_bessel_product,
    quad_cosine_integral_zero,
    quad_digamma_identity,
    quad_thermal_self,
    quad_thermal_time,
)
from vaccorr.specfun import digamma_family


def test_quadrature_known_integrals():
    assert composite_gauss_legendre(np.sin, 0.0, math.pi).value == pytest.approx(2.0, rel=1e-14)
    assert composite_gauss_legendre(lambda x: np.exp(-x * x), -8.0, 8.0).value == pytest.approx(math.sqrt(math.pi), rel=1e-14)


def test_quadrature_reports_nonconvergence():
    # a kink-free but wildly oscillating integrand cannot settle with a tiny rule
    spec = QuadratureSpec(node_count=16, subdivisions=1, target_tol=1e-15)
    with pytest.raises(NonConvergenceError):
        composite_gauss_legendre(lambda x: np.sin(1e5 * x), 0.0, 1.0, spec)


@pytest.mark.parametrize("kw", [dict(node_count=4), dict(subdivisions=0), dict(target_tol=0.0)])
def test_spec_validation(kw):
    with pytest.raises(DomainError):
        QuadratureSpec(**kw)


def test_bessel_product_wallis():
    # int_0^{pi/2} sin^3 t dt = 2/3
    assert quad_bessel_product(3, 0, 0, 0.0) == pytest.approx(2.0 / 3.0, rel=1e-14)


@given(st.integers(0, 4), st.integers(-3, 3), st.integers(-3, 3), st.floats(0.0, 10.0))
def test_odd_polar_integrals_vanish(l, n, m, kappa):
    assert abs(quad_cosine_integral_zero(l, n, m, kappa)) <= 1e-12


@pytest.mark.parametrize("order", [0, 1, 2])
@pytest.mark.parametrize("x,y", [(0.0, 1.0), (0.7, 0.3), (-2.0, 1.5)])
def test_digamma_identities(order, x, y):
    a = digamma_family(order, x + y)
    b = digamma_family(order, x - y)
    lhs = a + b if order == 1 else a - b
    assert abs(quad_digamma_identity(order, x, y) - lhs) <= 1e-10 * abs(lhs)


def test_digamma_example():
    # order 2 at x = 0, y = 1: 2 i Im psi''(1 + i)
    val = quad_digamma_identity(2, 0.0, 1.0)
    assert val.real == pytest.approx(0.0, abs=1e-14)
    assert val.imag == pytest.approx(2.0 * digamma_family(2, 1.0).imag, rel=1e-12)


def test_thermal_self_rest_values():
    # at v = 0, T = 0 the angular integrals are 2/3 and 4/3 times 1/2
    assert quad_thermal_self("parallel", 0.0, 0.0, 1.0) == pytest.approx(2.0 / 3.0, rel=1e-14)
    assert quad_thermal_self("transverse", 0.0, 0.0, 1.0) == pytest.approx(4.0 / 3.0, rel=1e-14)
    with pytest.raises(DomainError):
        quad_thermal_self("diagonal", 0.0, 0.0, 1.0)


def test_thermal_time_validation():
    with pytest.raises(DomainError):
        quad_thermal_time(0, 0.1, 1.0, 0.0)
    with pytest.raises(DomainError):
        quad_thermal_time(1, 0.1, 1.0, 1.0)


@pytest.mark.parametrize("s,temp", [(1.0, 1.0), (2.0, 0.3)])
def test_fourier_report(s, temp):
    rep = fourier_crosscheck(s, temp, [0.5, 2.0])
    assert rep.max_relative_error <= 1e-6
    assert len(rep.numeric) == len(rep.reference) == 2


def test_fourier_zero_temperature_rejected():
    with pytest.raises(DomainError):
        fourier_crosscheck(1.0, 0.0, [1.0])
