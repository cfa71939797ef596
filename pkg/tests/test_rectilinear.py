import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vaccorr.errors import DomainError
from vaccorr.lines import pair_with_test_function, reduce_delta_prime
from vaccorr.oracle import quad_rect_coefficient, quad_thermal_self
from vaccorr.rectilinear import (
    PAIRS,
    RectilinearConfig,
    band,
    in_band,
    integrate_band,
    lorentz_consistency,
    rect_exact,
    rect_first_order,
    rect_self,
    xy_unreduced_amplitude,
)
from vaccorr.specfun import ThermalContext
from vaccorr.staticfreq import static_correlation

COINCIDENCE = 1.0 / (12.0 * math.pi**2)
# angular quadrature oracle at v/2 = 0.5, a = 1, omega = 1, omega' = -2
XX_INTERIOR = 0.007873810461384391
# mpmath quadrature of the angular integral behind the thermal self-correlation
XX_SELF_B03_T07 = 0.018089031936051806316
# the displayed first-order XY bracket at v = 0.1, a = 1, omega = 1, T = 1 (imaginary part)
XY_DPRIME = -0.00017001816526284794226


class TestBand:
    def test_edges(self):
        b = band(RectilinearConfig(1.0, 1.0), 1.0)
        assert b.lower == pytest.approx(-3.0) and b.upper == pytest.approx(-1.0 / 3.0)

    def test_outside_is_zero(self):
        cfg = RectilinearConfig(1.0, 1.0)
        assert rect_exact("XX", cfg, 1.0, -4.0) == 0
        assert not in_band(cfg, 1.0, -4.0)

    @given(st.sampled_from(PAIRS), st.floats(0.05, 1.9), st.floats(0.1, 3.0))
    def test_xy_vanishes_on_the_diagonal(self, pair, v, omega):
        cfg = RectilinearConfig(1.0, v)
        assert rect_exact("XY", cfg, omega, -omega) == 0

    def test_edge_value_is_halved(self):
        cfg = RectilinearConfig(1.0, 1.0)
        b = band(cfg, 1.0)
        inner = rect_exact("YY", cfg, 1.0, b.upper - 1e-9)
        edge = rect_exact("YY", cfg, 1.0, b.upper)
        assert abs(edge) <= abs(inner)
        assert quad_rect_coefficient("YY", cfg, 1.0, b.upper) == pytest.approx(2.0 * edge.real, rel=1e-6, abs=1e-15)

    @pytest.mark.parametrize("kw", [dict(a=0.0, v=0.1), dict(a=1.0, v=2.0), dict(a=1.0, v=math.nan)])
    def test_config_validation(self, kw):
        with pytest.raises(DomainError):
            RectilinearConfig(**kw)

    def test_rest_has_no_band(self):
        with pytest.raises(DomainError):
            band(RectilinearConfig(1.0, 0.0), 1.0)
        with pytest.raises(DomainError):
            rect_exact("XX", RectilinearConfig(1.0, 0.0), 1.0, -1.0)


class TestExact:
    def test_interior_frozen(self):
        assert rect_exact("XX", RectilinearConfig(1.0, 1.0), 1.0, -2.0).real == pytest.approx(XX_INTERIOR, rel=1e-12)

    @given(
        st.sampled_from(PAIRS),
        st.floats(0.3, 3.0),
        st.floats(-1.8, 1.8).filter(lambda v: abs(v) > 0.05),
        st.floats(0.0, 2.0),
        st.floats(0.2, 3.0),
        st.floats(0.02, 0.98),
    )
    def test_vs_angular_quadrature(self, pair, a, v, temp, omega, frac):
        cfg = RectilinearConfig(a, v, ThermalContext(temp))
        b = band(cfg, omega)
        op = b.lower + frac * (b.upper - b.lower)
        got = rect_exact(pair, cfg, omega, op)
        ref = quad_rect_coefficient(pair, cfg, omega, op)
        scale = abs(rect_exact("YY", cfg, omega, op)) + abs(rect_exact("XX", cfg, omega, op))
        assert abs(got - ref) <= 1e-9 * scale

    @given(st.floats(0.3, 3.0), st.floats(0.1, 1.8), st.floats(0.2, 3.0), st.floats(0.02, 0.98))
    def test_symmetric_pairs_real_xy_imaginary(self, a, v, omega, frac):
        cfg = RectilinearConfig(a, v)
        b = band(cfg, omega)
        op = b.lower + frac * (b.upper - b.lower)
        for pair in ("XX", "YY", "ZZ"):
            assert rect_exact(pair, cfg, omega, op).imag == 0.0
        assert rect_exact("XY", cfg, omega, op).real == 0.0


class TestBandCollapse:
    @pytest.mark.parametrize("pair,proj", [("XX", "parallel"), ("YY", "perpendicular"), ("ZZ", "perpendicular")])
    def test_static_limit(self, pair, proj):
        ctx = ThermalContext(0.6)
        ref = static_correlation(proj, 0.9, 1.3, ctx)
        errs = [abs(integrate_band(pair, RectilinearConfig(1.3, 2 * b, ctx), 0.9, lambda o: 1.0) - ref) / abs(ref) for b in (1e-2, 1e-3)]
        assert errs[1] < errs[0] / 10.0
        assert errs[1] < 1e-4

    def test_xy_band_integral_is_first_order(self):
        vals = [abs(integrate_band("XY", RectilinearConfig(1.0, 2 * b), 1.0, lambda o: 1.0)) for b in (1e-2, 1e-3)]
        assert vals[0] / vals[1] == pytest.approx(10.0, rel=0.05)


class TestFirstOrder:
    def test_symmetric_pairs_are_static(self):
        lines = rect_first_order("YY", RectilinearConfig(1.0, 0.2), 1.0)
        assert len(lines) == 1
        assert lines[0].coefficient == static_correlation("perpendicular", 1.0, 1.0, ThermalContext())

    def test_xy_vanishes_at_rest(self):
        assert all(ln.coefficient == 0 for ln in rect_first_order("XY", RectilinearConfig(1.0, 0.0), 1.0))

    def test_xy_delta_prime_frozen(self):
        lines = rect_first_order("XY", RectilinearConfig(1.0, 0.1, ThermalContext(1.0)), 1.0)
        dprime = [ln for ln in lines if ln.derivative_order == 1]
        assert len(dprime) == 1
        assert dprime[0].coefficient.imag == pytest.approx(XY_DPRIME, rel=1e-13)

    @given(st.floats(0.3, 3.0), st.floats(0.0, 2.0), st.floats(-3.0, 3.0).filter(lambda w: abs(w) > 0.1))
    def test_reduction_of_the_unreduced_form(self, a, temp, omega):
        cfg = RectilinearConfig(a, 0.05, ThermalContext(temp))
        f, fp = xy_unreduced_amplitude(cfg, omega)
        coef_dp, coef_d = reduce_delta_prime(f, fp, -omega)
        lines = rect_first_order("XY", cfg, omega)
        dp = sum(ln.coefficient for ln in lines if ln.derivative_order == 1)
        d = sum(ln.coefficient for ln in lines if ln.derivative_order == 0)
        scale = abs(dp) + abs(d) + 1e-300
        assert abs(coef_dp - dp) <= 1e-12 * scale
        assert abs(coef_d - d) <= 1e-12 * scale

    def test_first_order_xy_matches_band_integral(self):
        # pairing with a smooth test function: exact band integral vs line form, error O(v^2)
        g = lambda o: math.exp(-((o + 1.2) ** 2))
        gp = lambda o: -2.0 * (o + 1.2) * g(o)
        errs = []
        for v in (0.02, 0.002):
            cfg = RectilinearConfig(1.0, v, ThermalContext(0.5))
            exact = integrate_band("XY", cfg, 1.0, g, nodes=128)
            lines = rect_first_order("XY", cfg, 1.0)
            approx = pair_with_test_function(lines, g, gp, -1.0)
            errs.append(abs(exact - approx) / abs(approx))
        assert errs[1] < errs[0] / 10.0


class TestSelf:
    def test_examples(self):
        assert rect_self("YY", RectilinearConfig(1.0, 0.0), 1.0) == pytest.approx(COINCIDENCE, rel=1e-14)
        assert rect_self("YY", RectilinearConfig(1.0, 1.0), 1.0) == pytest.approx(16.0 / (108.0 * math.pi**2), rel=1e-14)
        assert rect_self("XX_or_ZZ", RectilinearConfig(1.0, 0.6, ThermalContext(0.7)), 1.0) == pytest.approx(XX_SELF_B03_T07, rel=1e-12)

    @given(st.floats(-0.95, 0.95), st.floats(0.01, 4.0), st.floats(0.05, 8.0))
    def test_vs_quadrature(self, beta, temp, omega):
        cfg = RectilinearConfig(1.0, 2.0 * beta, ThermalContext(temp))
        w3 = omega**3
        yy = w3 / (8.0 * math.pi**2) * quad_thermal_self("parallel", 2.0 * beta, temp, omega)
        xx = w3 / (16.0 * math.pi**2) * quad_thermal_self("transverse", 2.0 * beta, temp, omega)
        assert rect_self("YY", cfg, omega) == pytest.approx(yy, rel=1e-9)
        assert rect_self("XX_or_ZZ", cfg, omega) == pytest.approx(xx, rel=1e-9)

    @given(st.floats(1e-9, 1e-4), st.floats(0.05, 3.0))
    def test_small_velocity_is_continuous(self, beta, temp):
        # the thermal bracket cancels strongly as v -> 0
        ctx = ThermalContext(temp)
        rest = rect_self("YY", RectilinearConfig(1.0, 0.0, ctx), 1.0)
        moving = rect_self("YY", RectilinearConfig(1.0, 2.0 * beta, ctx), 1.0)
        assert moving == pytest.approx(rest, rel=1e-6)

    @pytest.mark.parametrize("beta", [0.1, 0.5, 0.9])
    @pytest.mark.parametrize("omega", [1.0, 2.0])
    def test_lorentz(self, beta, omega):
        assert lorentz_consistency(RectilinearConfig(1.0, 2.0 * beta), omega) <= 1e-11

    def test_lorentz_rejects_temperature(self):
        with pytest.raises(DomainError):
            lorentz_consistency(RectilinearConfig(1.0, 0.5, ThermalContext(1.0)), 1.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            rect_self("XY", RectilinearConfig(1.0, 0.5), 1.0)
        with pytest.raises(DomainError):
            rect_self("YY", RectilinearConfig(1.0, 0.5), 0.0)
