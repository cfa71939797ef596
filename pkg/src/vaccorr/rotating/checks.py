"""Structural identities of the rotating correlations, reported as max violations."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .catalog import FieldPair, RotatingSpectrum, correlation
from .config import RotatingConfig
from .functions import X_PARITY, CorrelationFunctionId as C, corr_fn

__all__ = [
    "CheckReport",
    "index_symmetry_check",
    "quarter_turn_factor",
    "quarter_turn_delay_check",
    "omega_reversal_check",
    "spectrum_distance",
    "SYMMETRY_N_RANGE",
    "SYMMETRY_X_GRID",
]

SYMMETRY_N_RANGE = range(-12, 13)
SYMMETRY_X_GRID = (0.3, 1.0, 4.0, 9.0)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one identity check."""

    name: str
    max_violation: float
    threshold: float
    cases: int
    worst_case: str = ""
    details: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.threshold


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


_DIPOLE_FAMILIES = {
    "H": (C.Hplus, C.Hminus),
    "Ptimes": (C.PtimesPlus, C.PtimesMinus),
    "Pdiv": (C.PdivPlus, C.PdivMinus),
    "Ppara": (C.PparaPlus, C.PparaMinus),
    "Pnpara": (C.PnparaPlus, C.PnparaMinus),
    "PZ": (C.PZplus, C.PZminus),
}
FAMILIES = ("G", "Q", "P3") + tuple(_DIPOLE_FAMILIES)


def _identities(family: str, n: int, x: float):
    """Yield (label, lhs, rhs) pairs that must agree."""
    f = corr_fn
    if family == "G":
        for fid in (C.G0, C.GZ):
            yield f"{fid.value}_n = {fid.value}_-n", f(fid, n, x), f(fid, -n, x)
        yield "G+_n = G-_-n", f(C.Gplus, n, x), f(C.Gminus, -n, x)
        yield "G+_n = G+_2-n", f(C.Gplus, n, x), f(C.Gplus, 2 - n, x)
        yield "G-_n = G-_-2-n", f(C.Gminus, n, x), f(C.Gminus, -2 - n, x)
        yield "G+_n+2 = G-_n", f(C.Gplus, n + 2, x), f(C.Gminus, n, x)
    elif family == "Q":
        yield "QZ_n = QZ_-n", f(C.QZ, n, x), f(C.QZ, -n, x)
    elif family == "P3":
        yield "P3+_n = P3-_-n", f(C.P3plus, n, x), f(C.P3minus, -n, x)
        yield "P3+_n = P3+_3-n", f(C.P3plus, n, x), f(C.P3plus, 3 - n, x)
        yield "P3-_n = P3-_-3-n", f(C.P3minus, n, x), f(C.P3minus, -3 - n, x)
        yield "P3+_n+3 = P3-_n", f(C.P3plus, n + 3, x), f(C.P3minus, n, x)
    else:
        plus, minus = _DIPOLE_FAMILIES[family]
        yield f"{family}+_n = {family}-_-n", f(plus, n, x), f(minus, -n, x)
        yield f"{family}+_n = {family}+_1-n", f(plus, n, x), f(plus, 1 - n, x)
        yield f"{family}-_n = {family}-_-1-n", f(minus, n, x), f(minus, -1 - n, x)
        yield f"{family}+_n+1 = {family}-_n", f(plus, n + 1, x), f(minus, n, x)


def _family_members(family: str):
    if family == "G":
        return (C.G0, C.GZ, C.Gplus, C.Gminus)
    if family == "Q":
        return (C.QZ,)
    if family == "P3":
        return (C.P3plus, C.P3minus)
    return _DIPOLE_FAMILIES[family]


def index_symmetry_check(family: str | None = None, n_range=SYMMETRY_N_RANGE, x_grid=SYMMETRY_X_GRID, threshold: float = 1e-11) -> CheckReport:
    """Index exchange identities, argument parities and the linear P relations."""
    families = FAMILIES if family is None else (family,)
    worst = 0.0
    worst_case = ""
    cases = 0
    for fam in families:
        for n in n_range:
            for x in x_grid:
                checks = list(_identities(fam, n, x))
                for fid in _family_members(fam):
                    checks.append((f"{fid.value} parity", corr_fn(fid, n, -x), X_PARITY[fid] * corr_fn(fid, n, x)))
                for label, lhs, rhs in checks:
                    v = _rel(lhs, rhs)
                    cases += 1
                    if v > worst:
                        worst, worst_case = v, f"{label} at n={n}, x={x}"
                # the linear P relations are checked once, with the parallel family
                if fam == "Ppara":
                    for s, (pp, pn, pt, pd) in (
                        ("+", (C.PparaPlus, C.PnparaPlus, C.PtimesPlus, C.PdivPlus)),
                        ("-", (C.PparaMinus, C.PnparaMinus, C.PtimesMinus, C.PdivMinus)),
                    ):
                        a, b, t, d = (corr_fn(fid, n, x) for fid in (pp, pn, pt, pd))
                        scale = abs(a) + abs(b) + 2.0 * abs(t)
                        v = 0.0 if scale == 0.0 else abs(a + b + 2.0 * t) / scale
                        cases += 1
                        if v > worst:
                            worst, worst_case = v, f"Ppara{s}+Pnpara{s}+2Ptimes{s}=0 at n={n}, x={x}"
                        scale = abs(d) + 0.25 * (abs(a) + abs(b))
                        v = 0.0 if scale == 0.0 else abs(d - 0.25 * (a - b)) / scale
                        cases += 1
                        if v > worst:
                            worst, worst_case = v, f"Pdiv{s}=(Ppara{s}-Pnpara{s})/4 at n={n}, x={x}"
    name = "index symmetries" if family is None else f"index symmetries ({family})"
    return CheckReport(name, worst, threshold, cases, worst_case)


def quarter_turn_factor(m: int) -> complex:
    """exp(i (omega + omega') pi / (2 Omega)) on the support omega + omega' = -m Omega."""
    # exact values for the multiples that occur
    table = {0: 1.0 + 0j, 2: -1.0 + 0j, -2: -1.0 + 0j, 1: -1j, -1: 1j, 3: 1j, -3: -1j}
    if m in table:
        return table[m]
    return cmath.exp(-0.5j * math.pi * m)


def spectrum_distance(a: RotatingSpectrum, b: RotatingSpectrum, factor=None) -> float:
    """Largest |factor(m) a_m - b_m| over all shift multiples, relative to the largest |b_m|."""
    shifts = set(a.shifts) | set(b.shifts)
    scale = max((abs(b.line(m)) for m in shifts), default=0.0)
    diff = 0.0
    for m in shifts:
        f = 1.0 if factor is None else factor(m)
        diff = max(diff, abs(f * a.line(m) - b.line(m)))
    return 0.0 if scale == 0.0 else diff / scale


def quarter_turn_delay_check(config: RotatingConfig, omega: float, points: str = "AB", threshold: float = 1e-12) -> CheckReport:
    """A quarter-turn delay maps the XX spectrum onto the YY spectrum line by line."""
    xx = correlation(FieldPair("EX", "EX", None, points), config, omega)
    yy = correlation(FieldPair("EY", "EY", None, points), config, omega)
    v = spectrum_distance(xx, yy, quarter_turn_factor)
    return CheckReport(
        f"quarter-turn XX->YY ({points})",
        v,
        threshold,
        len(set(xx.shifts) | set(yy.shifts)),
        details={"xx": {ln.shift_multiple: ln.coefficient for ln in xx.lines}, "yy": {ln.shift_multiple: ln.coefficient for ln in yy.lines}},
    )


def omega_reversal_check(pairs, config: RotatingConfig, omega: float, threshold: float = 1e-12) -> CheckReport:
    """Reversing the rotation equals swapping + and - components (with a sign for odd rows).

    Odd rows are those whose mode sum carries the signed frequency weight.
    Lines are matched by their frequency shift m Omega.
    """
    rev = config.reversed()
    worst = 0.0
    worst_case = ""
    count = 0
    for pair in pairs:
        lhs = correlation(pair, rev, omega)
        rhs = correlation(pair.swapped_circular(), config, omega)
        parity = -1.0 if _is_odd(pair) else 1.0
        # lhs line m sits at m (-Omega), i.e. at rhs multiple -m
        shifts = {-m for m in lhs.shifts} | set(rhs.shifts)
        scale = max((abs(rhs.line(m)) for m in shifts), default=0.0)
        diff = max((abs(parity * lhs.line(-m) - rhs.line(m)) for m in shifts), default=0.0)
        v = 0.0 if scale == 0.0 else diff / scale
        count += 1
        if v > worst:
            worst, worst_case = v, f"{pair.label} {pair.points}"
    return CheckReport("Omega -> -Omega", worst, threshold, count, worst_case)


def _is_odd(pair: FieldPair) -> bool:
    kinds = pair.first[0] + pair.second[0]
    return kinds in ("EB", "BE")
