import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vaccorr.lines import SpectralLine, pair_with_test_function, reduce_delta_prime


def test_order_validation():
    with pytest.raises(ValueError):
        SpectralLine(2, 0.0, 1.0)


@given(st.floats(-3.0, 3.0), st.floats(-2.0, 2.0))
def test_delta_prime_reduction_preserves_pairing(y, c):
    # f(x) delta'(x - y) against g equals -(f g)'(y); the reduced form must agree
    f = lambda x: c + math.sin(x)
    fp = lambda x: math.cos(x)
    g = lambda x: math.exp(-x * x)
    gp = lambda x: -2.0 * x * g(x)
    a, b = reduce_delta_prime(f, fp, y)
    reduced = pair_with_test_function([SpectralLine(1, 0.0, a), SpectralLine(0, 0.0, b)], g, gp, y)
    direct = -(fp(y) * g(y) + f(y) * gp(y))
    assert abs(reduced - direct) <= 1e-12 * max(1.0, abs(direct))


def test_shifted_line_location():
    # a line at shift s sits at x = center - s
    val = pair_with_test_function([SpectralLine(0, 0.5, 2.0)], lambda x: x, lambda x: 1.0, 1.0)
    assert val == pytest.approx(1.0)
