"""Time the numeric kernels compiled with numba against the plain-Python fallback.

Each mode runs in its own interpreter because the JIT switch is read at import.
Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

WORKLOAD = r"""
import json, sys, time
import numpy as np
from vaccorr.specfun import pfq_regularized, bessel_j, polylog, digamma_family
from vaccorr.timedomain import _thermal_parts_array
from vaccorr.rotating import RotatingConfig, correlation
from vaccorr.rotating.modesum import _mode_sum_cached
from vaccorr.specfun import ThermalContext

repeat = int(sys.argv[1])
dt = np.linspace(-20.0, 20.0, 2001)
cases = {
    "pfq_regularized x200": lambda: [pfq_regularized((0.5, 2.0), (2.5, 1.0 - n, 1.0 + n), -0.01 * k) for n in range(-4, 5) for k in range(1, 23)],
    "bessel_j x400": lambda: [bessel_j(n, 0.1 * k) for n in range(-10, 10) for k in range(1, 21)],
    "polylog x300": lambda: [polylog(n, 0.003 * k) for n in (1, 2, 3) for k in range(1, 101)],
    "digamma_family x300": lambda: [digamma_family(o, 0.1 * k) for o in (0, 1, 2) for k in range(-50, 50)],
    "thermal_parts 2001 points": lambda: _thermal_parts_array(dt, 1.0, 0.7),
    "rotating EXEX spectrum": lambda: (_mode_sum_cached.cache_clear(), correlation("EXEX", RotatingConfig(1.0, 0.4, ThermalContext(0.5)), 1.3)),
}
out = {}
for name, fn in cases.items():
    t0 = time.perf_counter(); first = fn(); warm = time.perf_counter() - t0
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter(); fn(); best = min(best, time.perf_counter() - t0)
    out[name] = {"first_call": warm, "best": best}
probe = correlation("EXEX", RotatingConfig(1.0, 0.4, ThermalContext(0.5)), 1.3).line(0)
out["_probe"] = [probe.real, probe.imag]
print(json.dumps(out))
"""


def run(disable_jit: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["VACCORR_DISABLE_JIT"] = "1" if disable_jit else "0"
    proc = subprocess.run([sys.executable, "-c", WORKLOAD, str(repeat)], env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    jit = run(False, args.repeat)
    plain = run(True, args.repeat)
    print(f"{'kernel':30s} {'numba [ms]':>12s} {'python [ms]':>12s} {'speedup':>9s}  {'numba first call [ms]':>22s}")
    for name in jit:
        if name.startswith("_"):
            continue
        a, b = jit[name]["best"] * 1e3, plain[name]["best"] * 1e3
        print(f"{name:30s} {a:12.3f} {b:12.3f} {b / a:9.1f}  {jit[name]['first_call'] * 1e3:22.1f}")
    pa, pb = complex(*jit["_probe"]), complex(*plain["_probe"])
    print(f"probe agreement |numba - python| / |numba| = {abs(pa - pb) / abs(pa):.2e}")


if __name__ == "__main__":
    main()
