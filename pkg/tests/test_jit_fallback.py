import json
import os
import subprocess
import sys

import pytest

PROBE = r"""
import json
from vaccorr._jit import JIT_DISABLED
from vaccorr.specfun import ThermalContext, bessel_j, digamma_family, polylog, pfq_regularized, reciprocal_gamma
from vaccorr.timedomain import SpacetimeSeparation, c0, c2
from vaccorr.rotating import RotatingConfig, correlation
from vaccorr.rectilinear import RectilinearConfig, rect_exact, rect_self
d = digamma_family(2, 0.7)
spec = correlation("EXEY", RotatingConfig(1.0, 0.3, ThermalContext(0.4)), 1.1).line(2)
vals = [
    reciprocal_gamma(-2.5), bessel_j(7, 3.3), polylog(3, 0.97), d.real, d.imag,
    pfq_regularized((0.5, 2.0), (2.5, -1.0, 3.0), -9.0),
    c0(SpacetimeSeparation(0.4, 1.2), ThermalContext(0.8)), c2(SpacetimeSeparation(0.4, 1.2), ThermalContext(0.8)),
    spec.real, spec.imag,
    rect_exact("ZZ", RectilinearConfig(1.0, 0.8, ThermalContext(0.3)), 1.0, -1.2).real,
    rect_self("YY", RectilinearConfig(1.0, 0.8, ThermalContext(0.3)), 1.0),
]
print(json.dumps({"disabled": JIT_DISABLED, "values": vals}))
"""


def probe(disable: bool) -> dict:
    env = dict(os.environ, VACCORR_DISABLE_JIT="1" if disable else "0")
    out = subprocess.run([sys.executable, "-c", PROBE], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def test_fallback_matches_compiled():
    jit = probe(False)
    plain = probe(True)
    assert jit["disabled"] is False and plain["disabled"] is True
    for a, b in zip(jit["values"], plain["values"]):
        assert a == pytest.approx(b, rel=1e-13, abs=1e-300)
