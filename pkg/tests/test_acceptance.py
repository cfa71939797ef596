"""The ten acceptance criteria; each test prints one PASS/FAIL line."""

import json
import subprocess
import sys
import time

import pytest

from vaccorr import verify

from conftest import ACCEPTANCE_LINES


def report(number: int, title: str, results, elapsed: float, budget: float | None = None):
    ok = all(r.passed for r in results)
    within = budget is None or elapsed < budget
    status = "PASS" if ok and within else "FAIL"
    detail = "; ".join(f"{r.name}: {r.value:.3g}" + ("" if r.lower is None else f" (>= {r.lower:g})") + f" (<= {r.upper:g})" for r in results)
    timing = f"{elapsed:.1f}s" + ("" if budget is None else f" of {budget:g}s")
    line = f"criterion {number:2d} {status}  {title} [{timing}] {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    for r in results:
        assert r.passed, f"{r.name}: {r.value} worst at {r.worst_case}"
    assert within, f"runtime {elapsed:.1f}s exceeds {budget}s"


def timed(fn):
    t0 = time.perf_counter()
    res = fn()
    return res, time.perf_counter() - t0


def test_criterion_01_bessel_closed_form():
    res, dt = timed(verify.check_bessel_closed_form)
    report(1, "Bessel-product closed form vs quadrature", res, dt, 30.0)


def test_criterion_02_index_symmetries():
    res, dt = timed(verify.check_index_symmetry)
    report(2, "index symmetries, parities and the P relation", res, dt, 10.0)


def test_criterion_03_first_order():
    res, dt = timed(verify.check_first_order)
    report(3, "first-order forms vs exact mode sums", res, dt, 60.0)


def test_criterion_04_static_limits():
    res, dt = timed(verify.check_static_limits)
    report(4, "static limits, band collapse and the coincidence value", res, dt)


def test_criterion_05_lorentz():
    res, dt = timed(verify.check_lorentz)
    report(5, "Lorentz reconstruction of zero-point self-correlations", res, dt)


def test_criterion_06_self_quadrature():
    res, dt = timed(verify.check_self_quadrature)
    report(6, "polylog self-correlation vs quadrature", res, dt)


def test_criterion_07_fourier():
    res, dt = timed(verify.check_fourier)
    report(7, "thermal Fourier round trip", res, dt, 120.0)


def test_criterion_08_quarter_turn():
    res, dt = timed(verify.check_quarter_turn)
    report(8, "quarter-turn delay identity", res, dt)


def test_criterion_09_identities():
    res, dt = timed(verify.check_identities)
    report(9, "Jacobi-Anger and digamma Fourier identities", res, dt)


def test_criterion_10_determinism(tmp_path):
    t0 = time.perf_counter()
    outputs = []
    for i in range(2):
        path = tmp_path / f"report{i}.json"
        proc = subprocess.run([sys.executable, "-m", "vaccorr.cli", "verify", "--suite", "all", "-o", str(path)], capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        outputs.append(path.read_bytes())
    dt = time.perf_counter() - t0
    same = outputs[0] == outputs[1]
    doc = json.loads(outputs[0])
    res = [verify.PropertyResult("byte differences between two verify runs", 0.0 if same else 1.0, 0.0, 2)]
    report(10, "two CLI verify runs are byte-identical", res, dt)
    assert doc["passed"] is True
