"""Verification suite: every structural identity and oracle comparison, as a report.

The report is a plain dict with a fixed key order and no timings, so two runs
on the same build serialize to identical bytes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .rectilinear import RectilinearConfig, integrate_band, lorentz_consistency, rect_self
from .rotating import (
    FieldPair,
    RotatingConfig,
    all_pairs,
    bessel_integral_closed,
    cartesian_from_circular,
    correlation,
    direct_cartesian,
    index_symmetry_check,
    omega_reversal_check,
    quarter_turn_delay_check,
)
from .rotating.checks import spectrum_distance
from .specfun import ThermalContext, bessel_j, digamma_family
from .staticfreq import self_correlation, static_correlation

__all__ = ["PropertyResult", "SUITES", "run_suite", "report_dict", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1
COINCIDENCE = 1.0 / (12.0 * math.pi**2)


@dataclass(frozen=True)
class PropertyResult:
    """One verified property: a measured value against an upper bound (and optional lower bound)."""

    name: str
    value: float
    upper: float
    cases: int
    lower: float | None = None
    worst_case: str = ""

    @property
    def passed(self) -> bool:
        value = float(self.value)
        if not math.isfinite(value):
            return False
        if self.lower is not None and value < self.lower:
            return False
        return bool(value <= self.upper)


def _rel(a, b) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


class _Worst:
    def __init__(self):
        self.value = 0.0
        self.case = ""
        self.count = 0

    def add(self, v: float, case: str) -> None:
        self.count += 1
        if v > self.value or not math.isfinite(v):
            self.value, self.case = v, case


# --------------------------------------------------------------------------- bessel


def bessel_grid():
    """(l, m, n, kappa) cases of the closed-form Bessel-product comparison."""
    for l in range(4):
        for m in range(-3, 4):
            if l + abs(m) < 0:
                continue
            for n in range(-3, 4):
                for kappa in (0.3, 1.0, 4.0, 9.0):
                    yield l, m, n, kappa


def check_bessel_closed_form(tol: float = 1e-9) -> list[PropertyResult]:
    w = _Worst()
    for l, m, n, kappa in bessel_grid():
        closed = bessel_integral_closed(l, m, n, kappa)
        quad = oracle.quad_bessel_product(l, m, n, kappa)
        # absolute floor for integrals that vanish identically
        v = abs(closed - quad) / max(abs(quad), 1e-12)
        w.add(v, f"l={l} m={m} n={n} kappa={kappa}")
    cos = _Worst()
    for l in range(4):
        for n in range(-2, 3):
            for m in range(-2, 3):
                for kappa in (0.0, 1.0, 2.3):
                    cos.add(abs(oracle.quad_cosine_integral_zero(l, n, m, kappa)), f"l={l} n={n} m={m} kappa={kappa}")
    return [
        PropertyResult("bessel product closed form vs quadrature", w.value, tol, w.count, worst_case=w.case),
        PropertyResult("odd polar integrals vanish", cos.value, 1e-12, cos.count, worst_case=cos.case),
    ]


# --------------------------------------------------------------------------- symmetry


def check_index_symmetry(tol: float = 1e-11) -> list[PropertyResult]:
    rep = index_symmetry_check(threshold=tol)
    return [PropertyResult("correlation function index symmetries and parities", rep.max_violation, tol, rep.cases, worst_case=rep.worst_case)]


# --------------------------------------------------------------------------- first order

FIRST_ORDER_STEPS = (1e-2, 1e-3)
FIRST_ORDER_POINTS = ((1.0, 0.0), (-0.7, 0.9))


def first_order_errors(pairs=None, points=FIRST_ORDER_POINTS, steps=FIRST_ORDER_STEPS, r: float = 1.0):
    """Yield (pair, omega, T, [absolute errors per step], vanishing) for every pair with a nonzero line."""
    pairs = all_pairs("circular") if pairs is None else pairs
    for pair in pairs:
        for omega, temp in points:
            errs = []
            vanishing = False
            for step in steps:
                cfg = RotatingConfig(r, step / r, ThermalContext(temp))
                ex = correlation(pair, cfg, omega)
                if not ex.lines:
                    break
                fo = correlation(pair, cfg, omega, exact=False)
                m = pair.shift_charge
                # absolute errors: lines that are themselves O(Omega) would halve a relative ratio
                vanishing = fo.line(m) == 0
                errs.append(abs(ex.line(m) - fo.line(m)))
            if len(errs) == len(steps):
                yield pair, omega, temp, errs, vanishing


def check_first_order(lower: float = 30.0, upper: float = 300.0) -> list[PropertyResult]:
    lo = math.inf
    hi = 0.0
    lo_case = hi_case = ""
    count = 0
    van_min = math.inf
    van_case = ""
    van_count = 0
    for pair, omega, temp, errs, vanishing in first_order_errors():
        label = f"{pair.label} {pair.points} omega={omega} T={temp}"
        if errs[1] == 0.0:
            ratio = math.inf if errs[0] > 0.0 else 100.0
        else:
            ratio = errs[0] / errs[1]
        if vanishing:
            van_count += 1
            if ratio < van_min:
                van_min, van_case = ratio, label
            continue
        count += 1
        if ratio < lo:
            lo, lo_case = ratio, label
        if ratio > hi:
            hi, hi_case = ratio, label
    return [
        PropertyResult("first-order error ratio, smallest", lo, upper, count, lower=lower, worst_case=lo_case),
        PropertyResult("first-order error ratio, largest", hi, upper, count, lower=lower, worst_case=hi_case),
        PropertyResult("first-order-vanishing lines shrink at least quadratically", van_min, math.inf, van_count, lower=lower, worst_case=van_case),
    ]


# --------------------------------------------------------------------------- static limits

STATIC_POINTS = ((1.0, 1.0, 0.0), (0.8, 1.3, 0.4), (-2.5, 0.6, 1.5))


def _line_sum(spec) -> complex:
    return sum((ln.coefficient for ln in spec.lines), 0j)


def check_static_limits(tol: float = 1e-9, coincidence_tol: float = 1e-10) -> list[PropertyResult]:
    w = _Worst()
    for omega, r, temp in STATIC_POINTS:
        ctx = ThermalContext(temp)
        cfg = RotatingConfig(r, 0.0, ctx)
        for label, proj in (("EXEX", "parallel"), ("EYEY", "perpendicular"), ("EZEZ", "perpendicular")):
            got = _line_sum(correlation(label, cfg, omega))
            ref = static_correlation(proj, omega, r, ctx)
            w.add(abs(got - ref) / abs(ref), f"{label} omega={omega} r={r} T={temp}")
        got = _line_sum(correlation("EXEY", cfg, omega))
        w.add(abs(got) / abs(static_correlation("parallel", omega, r, ctx)), f"EXEY omega={omega} r={r} T={temp}")

    paths = _Worst()
    zero = ThermalContext(0.0)
    values = {
        "static small separation parallel": static_correlation("parallel", 1.0, 1e-6, zero),
        "static small separation perpendicular": static_correlation("perpendicular", 1.0, 1e-6, zero),
        "rotating EZEZ same point": correlation(FieldPair("EZ", "EZ", None, "AA"), RotatingConfig(1.0, 0.0, zero), 1.0).line(0).real,
        "rectilinear self YY at rest": rect_self("YY", RectilinearConfig(1.0, 0.0, zero), 1.0),
        "rectilinear self XX at rest": rect_self("XX_or_ZZ", RectilinearConfig(1.0, 0.0, zero), 1.0),
    }
    for label, val in values.items():
        paths.add(abs(val - COINCIDENCE) / COINCIDENCE, label)

    band = _Worst()
    ctx = ThermalContext(0.6)
    omega, a = 0.9, 1.3
    for pair, proj in (("XX", "parallel"), ("YY", "perpendicular"), ("ZZ", "perpendicular")):
        ref = static_correlation(proj, omega, a, ctx)
        errs = []
        for beta in (1e-2, 1e-3):
            val = integrate_band(pair, RectilinearConfig(a, 2.0 * beta, ctx), omega, lambda o: 1.0)
            errs.append(abs(val - ref) / abs(ref))
        # shrinking at least linearly with the band width
        band.add(errs[1] / errs[0] * 10.0, f"{pair} errors {errs[0]:.3e} -> {errs[1]:.3e}")
    return [
        PropertyResult("rotating spectra at Omega = 0 reproduce static coefficients", w.value, tol, w.count, worst_case=w.case),
        PropertyResult("coincidence value 1/(12 pi^2) from independent paths", paths.value, coincidence_tol, paths.count, worst_case=paths.case),
        PropertyResult("rectilinear band collapse: error(v/10) * 10 / error(v)", band.value, 1.5, band.count, worst_case=band.case),
    ]


# --------------------------------------------------------------------------- rectilinear


def check_lorentz(tol: float = 1e-11) -> list[PropertyResult]:
    w = _Worst()
    for beta in (0.1, 0.5, 0.9):
        for omega in (1.0, 2.0, -0.6):
            w.add(lorentz_consistency(RectilinearConfig(1.0, 2.0 * beta), omega), f"v/2={beta} omega={omega}")
    return [PropertyResult("zero-point self-correlations from Lorentz transformation", w.value, tol, w.count, worst_case=w.case)]


SELF_SEED = 20240611


def self_quadrature_triples(count: int = 10, seed: int = SELF_SEED):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        beta = float(rng.uniform(-0.9, 0.9))
        temp = float(rng.uniform(0.05, 3.0))
        omega = float(rng.uniform(0.1, 5.0) * rng.choice([-1.0, 1.0]))
        yield beta, temp, omega


def check_self_quadrature(tol: float = 1e-9) -> list[PropertyResult]:
    w = _Worst()
    for beta, temp, omega in self_quadrature_triples():
        cfg = RectilinearConfig(1.0, 2.0 * beta, ThermalContext(temp))
        w3 = abs(omega) ** 3
        yy = w3 / (8.0 * math.pi**2) * oracle.quad_thermal_self("parallel", 2.0 * beta, temp, omega)
        xx = w3 / (16.0 * math.pi**2) * oracle.quad_thermal_self("transverse", 2.0 * beta, temp, omega)
        w.add(_rel(rect_self("YY", cfg, omega), yy), f"YY v/2={beta:.6f} T={temp:.6f} omega={omega:.6f}")
        w.add(_rel(rect_self("XX_or_ZZ", cfg, omega), xx), f"XX v/2={beta:.6f} T={temp:.6f} omega={omega:.6f}")
    return [PropertyResult("rectilinear self-correlation polylog form vs quadrature", w.value, tol, w.count, worst_case=w.case)]


def check_rectilinear_exact(tol: float = 1e-10) -> list[PropertyResult]:
    w = _Worst()
    for a, v, temp in ((1.0, 1.0, 0.4), (2.0, 0.3, 0.0), (0.7, -1.4, 1.2)):
        cfg = RectilinearConfig(a, v, ThermalContext(temp))
        for omega in (1.0, -0.8):
            lo, hi = sorted((-omega * (1 + abs(v) / 2) / (1 - abs(v) / 2), -omega * (1 - abs(v) / 2) / (1 + abs(v) / 2)))
            for frac in (0.1, 0.37, 0.5, 0.81):
                op = lo + frac * (hi - lo)
                for pair in ("XX", "YY", "ZZ", "XY"):
                    from .rectilinear import rect_exact

                    got = rect_exact(pair, cfg, omega, op)
                    ref = oracle.quad_rect_coefficient(pair, cfg, omega, op)
                    scale = max(abs(ref), abs(rect_exact("XX", cfg, omega, op)))
                    w.add(abs(got - ref) / scale, f"{pair} a={a} v={v} T={temp} omega={omega} omega'={op:.6f}")
    return [PropertyResult("rectilinear exact spectra vs angular quadrature", w.value, tol, w.count, worst_case=w.case)]


# --------------------------------------------------------------------------- Fourier

FOURIER_S = (0.5, 1.0, 2.0)
FOURIER_T = (0.3, 1.0, 2.0)
FOURIER_OMEGA = (0.5, 1.0, 2.0, 3.5, 5.0)


def check_fourier(tol: float = 1e-6) -> list[PropertyResult]:
    w = _Worst()
    for s in FOURIER_S:
        for temp in FOURIER_T:
            rep = oracle.fourier_crosscheck(s, temp, FOURIER_OMEGA)
            w.add(rep.max_relative_error, f"s={s} T={temp}")
    kern = _Worst()
    from .timedomain import SpacetimeSeparation, thermal_parts

    for dt, s, temp in ((0.0, 1.0, 1.0), (0.7, 1.2, 0.8), (3.0, 0.5, 0.3), (-1.5, 2.0, 2.0)):
        t0, t2 = thermal_parts(SpacetimeSeparation(dt, s), ThermalContext(temp))
        kern.add(_rel(t0, oracle.quad_thermal_time(0, dt, s, temp)), f"C0 dt={dt} s={s} T={temp}")
        kern.add(_rel(t2, oracle.quad_thermal_time(2, dt, s, temp)), f"C2 dt={dt} s={s} T={temp}")
    return [
        PropertyResult("thermal Fourier round trip", w.value, tol, len(FOURIER_S) * len(FOURIER_T) * len(FOURIER_OMEGA), worst_case=w.case),
        PropertyResult("thermal time kernels vs frequency quadrature", kern.value, 1e-10, kern.count, worst_case=kern.case),
    ]


# --------------------------------------------------------------------------- rotating catalog


def check_quarter_turn(tol: float = 1e-12) -> list[PropertyResult]:
    w = _Worst()
    for temp in (0.0, 0.5):
        cfg = RotatingConfig(1.0, 0.2, ThermalContext(temp))
        for points in ("AB", "AA"):
            rep = quarter_turn_delay_check(cfg, 1.0, points, tol)
            w.add(rep.max_violation, f"{points} T={temp}")
    return [PropertyResult("quarter-turn delay maps XX lines onto YY lines", w.value, tol, w.count, worst_case=w.case)]


def check_catalog(tol: float = 1e-12, brute_tol: float = 1e-6) -> list[PropertyResult]:
    cfg = RotatingConfig(1.0, 0.2, ThermalContext(0.5))
    omega = 1.1
    both = _Worst()
    for pair in all_pairs("cartesian"):
        a = cartesian_from_circular(pair, cfg, omega)
        b = direct_cartesian(pair, cfg, omega)
        scale = max((abs(ln.coefficient) for ln in a.lines + b.lines), default=0.0)
        diff = max((abs(a.line(m) - b.line(m)) for m in set(a.shifts) | set(b.shifts)), default=0.0)
        both.add(0.0 if scale == 0.0 else diff / scale, f"{pair.label} {pair.points}")
    rev = omega_reversal_check(all_pairs("circular"), cfg, omega, tol)

    # brute-force angular quadrature for the electric-type circular pairs
    bf = _Worst()
    r, Om, temp, w = 1.0, 0.4, 0.7, 1.3
    bcfg = RotatingConfig(r, Om, ThermalContext(temp))
    for pair in all_pairs("circular"):
        if pair.first[0] != pair.second[0] and pair.deriv is None and pair.first[0] == "B":
            continue
        if pair.first[0] == "B" and pair.second[0] == "B":
            continue
        if pair.first[0] == "E" and pair.second[0] == "B" and pair.deriv is not None:
            continue
        m = pair.shift_charge
        ref = oracle.quad_rotating_line(pair.first, pair.second, pair.deriv, pair.points, r, Om, temp, w, m, n_max=30, polar_nodes=96, azimuthal_nodes=24)
        got = correlation(pair, bcfg, w).line(m)
        bf.add(abs(got - ref) / 1e-2, f"{pair.label} {pair.points}")
    return [
        PropertyResult("Cartesian spectra: circular assembly vs direct transcription", both.value, tol, both.count, worst_case=both.case),
        PropertyResult("Omega -> -Omega swaps + and - components", rev.max_violation, tol, rev.cases, worst_case=rev.worst_case),
        PropertyResult("circular catalog vs brute-force angular quadrature (absolute / 1e-2)", bf.value, brute_tol, bf.count, worst_case=bf.case),
    ]


# --------------------------------------------------------------------------- special-function identities


def check_identities(tol: float = 1e-10) -> list[PropertyResult]:
    ja = _Worst()
    for x in (0.5, 2.0, 10.0):
        nmax = math.ceil(x) + 30
        for phi in (0.0, 1.0, 2.0):
            total = sum((1j) ** (n % 4) * bessel_j(n, x) * cmath.exp(1j * n * phi) for n in range(-nmax, nmax + 1))
            ja.add(abs(total - cmath.exp(1j * x * math.cos(phi))), f"x={x} phi={phi}")
    dg = _Worst()
    for order in (0, 1, 2):
        for x, y in ((0.0, 1.0), (0.7, 0.3), (-2.0, 1.5), (4.0, 2.5)):
            a = digamma_family(order, x + y)
            b = digamma_family(order, x - y)
            lhs = a + b if order == 1 else a - b
            rhs = oracle.quad_digamma_identity(order, x, y)
            dg.add(abs(lhs - rhs) / max(abs(lhs), 1e-300), f"order={order} x={x} y={y}")
    return [
        PropertyResult("Jacobi-Anger expansion", ja.value, tol, ja.count, worst_case=ja.case),
        PropertyResult("digamma Fourier identities", dg.value, tol, dg.count, worst_case=dg.case),
    ]


SUITES = {
    "bessel": check_bessel_closed_form,
    "symmetry": check_index_symmetry,
    "firstorder": check_first_order,
    "static": check_static_limits,
    "lorentz": check_lorentz,
    "selfquad": check_self_quadrature,
    "rectilinear": check_rectilinear_exact,
    "fourier": check_fourier,
    "quarterturn": check_quarter_turn,
    "catalog": check_catalog,
    "identities": check_identities,
}


def run_suite(name: str = "all") -> list[PropertyResult]:
    """Run one named suite, or all of them in a fixed order."""
    if name == "all":
        out: list[PropertyResult] = []
        for key in SUITES:
            out.extend(SUITES[key]())
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return SUITES[name]()


def _num(x: float | None):
    if x is None:
        return None
    x = float(x)
    if not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    return float(format(x, ".17g"))


def report_dict(suite: str, results: list[PropertyResult]) -> dict:
    """Serializable report with a stable key order."""
    return {
        "schema_version": SCHEMA_VERSION,
        "suite": suite,
        "passed": all(r.passed for r in results),
        "properties": [
            {
                "name": r.name,
                "passed": r.passed,
                "value": _num(r.value),
                "lower": _num(r.lower),
                "upper": _num(r.upper),
                "cases": int(r.cases),
                "worst_case": r.worst_case,
            }
            for r in results
        ],
    }
