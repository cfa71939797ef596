"""Catalog of two-point field correlations for revolving points.

Spectra are assembled from circular components E+-, EZ (and the magnetic
counterparts, and derivatives d+-, dZ). Cartesian pairs are linear
combinations of circular ones through EX = E+ + E-, EY = -i (E+ - E-).
A second, independent transcription of the Cartesian results is kept in
:func:`direct_cartesian` so both assembly routes can be compared.
"""

from __future__ import annotations

import math
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from ..errors import DomainError, UnknownPairError
from ..lines import SpectralLine
from .config import RotatingConfig
from .firstorder import first_order_sum
from .functions import CorrelationFunctionId as C
from .modesum import DEFAULT_TOL, mode_sum

__all__ = [
    "FieldPair",
    "RotatingLine",
    "RotatingSpectrum",
    "Term",
    "correlation",
    "cartesian_from_circular",
    "direct_cartesian",
    "circular_terms",
    "spectrum_from_terms",
    "PREFACTOR",
    "CIRCULAR",
    "CARTESIAN",
    "all_pairs",
]

# 1 / (16 pi^{3/2}) in natural units
PREFACTOR = 1.0 / (16.0 * math.pi**1.5)

CIRCULAR = ("+", "-", "Z")
CARTESIAN = ("X", "Y", "Z")
_SIGN = {"+": 1, "-": -1, "Z": 0}
_POINTS = ("AB", "AA")
_ZERO_TOL = 0.0


@dataclass(frozen=True)
class FieldPair:
    """``<first(A) d_deriv second(B or A)>``; components are 'X','Y','Z','+','-'."""

    first: str
    second: str
    deriv: str | None = None
    points: str = "AB"

    def __post_init__(self):
        for label in (self.first, self.second):
            if len(label) != 2 or label[0] not in "EB" or label[1] not in "XYZ+-":
                raise UnknownPairError(f"bad field component {label!r}")
        if self.deriv is not None and self.deriv not in ("X", "Y", "Z", "+", "-"):
            raise UnknownPairError(f"bad derivative direction {self.deriv!r}")
        if self.points not in _POINTS:
            raise UnknownPairError(f"points must be one of {_POINTS}, got {self.points!r}")
        comps = [self.first[1], self.second[1]] + ([self.deriv] if self.deriv else [])
        has_circ = any(c in ("+", "-") for c in comps)
        has_cart = any(c in ("X", "Y") for c in comps)
        if has_circ and has_cart:
            raise UnknownPairError(f"pair {self.label} mixes circular and Cartesian components")

    _PATTERN = re.compile(r"^([EB])([XYZ+\-])(?:d([XYZ+\-]))?([EB])([XYZ+\-])$")

    @classmethod
    def parse(cls, text: str, points: str = "AB") -> "FieldPair":
        """Parse labels like ``EXEY``, ``E+d-E+``, ``BZdXEX`` (``plus``/``minus`` spelled out is accepted)."""
        t = text.replace("plus", "+").replace("minus", "-").replace(" ", "")
        m = cls._PATTERN.match(t)
        if not m:
            raise UnknownPairError(f"cannot parse field pair {text!r}")
        f1, c1, d, f2, c2 = m.groups()
        return cls(first=f1 + c1, second=f2 + c2, deriv=d, points=points)

    @property
    def label(self) -> str:
        d = f"d{self.deriv}" if self.deriv else ""
        return f"{self.first}{d}{self.second}"

    @property
    def is_circular(self) -> bool:
        comps = (self.first[1], self.second[1], self.deriv)
        return not any(c is not None and c in "XY" for c in comps)

    @property
    def is_cartesian(self) -> bool:
        comps = (self.first[1], self.second[1], self.deriv)
        return not any(c in ("+", "-") for c in comps if c is not None)

    @property
    def shift_charge(self) -> int:
        """Signed count of + and - components; the shift multiple of every circular line."""
        return sum(_SIGN.get(c, 0) for c in (self.first[1], self.second[1], self.deriv or ""))

    def with_components(self, first: str, deriv: str | None, second: str) -> "FieldPair":
        return FieldPair(self.first[0] + first, self.second[0] + second, deriv, self.points)

    def swapped_circular(self) -> "FieldPair":
        """Exchange + and - in every component."""
        sw = {"+": "-", "-": "+"}
        d = sw.get(self.deriv, self.deriv) if self.deriv else None
        return self.with_components(sw.get(self.first[1], self.first[1]), d, sw.get(self.second[1], self.second[1]))


@dataclass(frozen=True)
class Term:
    """``coef * PREFACTOR * sum_n (...) shape_n`` placed at shift ``m Omega``."""

    m: int
    shape: C
    weight: str
    coef: complex


@dataclass(frozen=True)
class RotatingLine:
    """One delta line of a rotating spectrum at omega + omega' + m Omega = 0."""

    shift_multiple: int
    coefficient: complex
    n_max: int
    tail: float

    def as_spectral_line(self, Omega: float) -> SpectralLine:
        return SpectralLine(derivative_order=0, shift=self.shift_multiple * Omega, coefficient=self.coefficient)


@dataclass(frozen=True)
class RotatingSpectrum:
    """Delta lines of one correlation, ordered by shift multiple."""

    pair: FieldPair
    omega: float
    lines: tuple[RotatingLine, ...]
    mode_truncation: int
    tail_estimate: float
    exact: bool = True

    def line(self, m: int) -> complex:
        """Coefficient at shift multiple ``m`` (0 when absent)."""
        for ln in self.lines:
            if ln.shift_multiple == m:
                return ln.coefficient
        return 0j

    @property
    def shifts(self) -> tuple[int, ...]:
        return tuple(ln.shift_multiple for ln in self.lines)

    def spectral_lines(self, Omega: float) -> list[SpectralLine]:
        return [ln.as_spectral_line(Omega) for ln in self.lines]


# ---------------------------------------------------------------------------
# circular tables
# ---------------------------------------------------------------------------

_G = {1: C.Gplus, -1: C.Gminus}
_H = {1: C.Hplus, -1: C.Hminus}
_P3 = {1: C.P3plus, -1: C.P3minus}
_PDIV = {1: C.PdivPlus, -1: C.PdivMinus}
_PTIMES = {1: C.PtimesPlus, -1: C.PtimesMinus}
_PZ = {1: C.PZplus, -1: C.PZminus}


def _ee(c1: str, c2: str) -> list[Term]:
    s1, s2 = _SIGN[c1], _SIGN[c2]
    if s1 and s2:
        if s1 == -s2:
            return [Term(0, C.G0, "abs3", 0.5)]
        return [Term(2 * s1, _G[s1], "abs3", 1.0)]
    if c1 == "Z" and c2 == "Z":
        return [Term(0, C.GZ, "abs3", 1.0)]
    return []


def _eb(c1: str, c2: str, same_point: bool) -> list[Term]:
    s1, s2 = _SIGN[c1], _SIGN[c2]
    sigma = -1.0 if same_point else 1.0
    if s1 and c2 == "Z":
        return [Term(s1, _H[s1], "signed3", sigma * s1)]
    if c1 == "Z" and s2:
        return [Term(s2, _H[s2], "signed3", -sigma * s2)]
    return []


def _ede(c1: str, cd: str, c2: str, same_point: bool) -> list[Term]:
    s1, sd, s2 = _SIGN[c1], _SIGN[cd], _SIGN[c2]
    sigma = -1.0 if same_point else 1.0
    if s1 and sd and s2:
        if s1 == sd == s2:
            return [Term(3 * s1, _P3[s1], "abs4", -sigma)]
        if s1 == sd == -s2:
            return [Term(sd, _PDIV[sd], "abs4", -sigma)]
        if -s1 == sd == s2:
            return [Term(sd, _PDIV[sd], "abs4", -sigma)]
        # s1 == s2 == -sd
        return [Term(s1, _PTIMES[s1], "abs4", sigma)]
    if s1 and cd == "Z" and c2 == "Z":
        return [Term(s1, _PZ[s1], "abs4", sigma)]
    if c1 == "Z" and cd == "Z" and s2:
        return [Term(s2, _PZ[s2], "abs4", sigma)]
    if c1 == "Z" and sd and c2 == "Z":
        return [Term(sd, _PTIMES[sd], "abs4", -4.0 * sigma)]
    return []


def _bde(c1: str, cd: str, c2: str) -> list[Term]:
    s1, sd, s2 = _SIGN[c1], _SIGN[cd], _SIGN[c2]
    if s1 and sd and c2 == "Z":
        if s1 == sd:
            return [Term(2 * s1, _G[s1], "signed4", float(s1))]
        return [Term(0, C.GZ, "signed4", -s1 / 4.0)]
    if c1 == "Z" and sd and s2:
        if sd == s2:
            return [Term(2 * s2, _G[s2], "signed4", -float(s2))]
        return [Term(0, C.GZ, "signed4", s2 / 4.0)]
    if s1 and cd == "Z" and s2 == -s1:
        return [Term(0, C.QZ, "signed4", s1 / 2.0)]
    return []


def circular_terms(pair: FieldPair) -> list[Term]:
    """Nonzero terms of a circular pair (an empty list for vanishing pairs)."""
    if not pair.is_circular:
        raise UnknownPairError(f"{pair.label} is not a circular pair")
    same = pair.points == "AA"
    f1, c1 = pair.first
    f2, c2 = pair.second
    kinds = f1 + f2
    if pair.deriv is None:
        if kinds in ("EE", "BB"):
            return _ee(c1, c2)
        if kinds == "EB":
            return _eb(c1, c2, same)
        return [Term(t.m, t.shape, t.weight, -t.coef) for t in _eb(c1, c2, same)]
    if kinds in ("EE", "BB"):
        return _ede(c1, pair.deriv, c2, same)
    if kinds == "BE":
        return _bde(c1, pair.deriv, c2)
    return [Term(t.m, t.shape, t.weight, -t.coef) for t in _bde(c1, pair.deriv, c2)]


# Cartesian component as combination of circular ones
_TO_CIRCULAR = {"X": (("+", 1.0), ("-", 1.0)), "Y": (("+", -1j), ("-", 1j)), "Z": (("Z", 1.0),)}


def _cartesian_terms(pair: FieldPair) -> list[Term]:
    derivs = _TO_CIRCULAR[pair.deriv] if pair.deriv else ((None, 1.0),)
    out: list[Term] = []
    for c1, w1 in _TO_CIRCULAR[pair.first[1]]:
        for cd, wd in derivs:
            for c2, w2 in _TO_CIRCULAR[pair.second[1]]:
                sub = pair.with_components(c1, cd, c2)
                for t in circular_terms(sub):
                    out.append(Term(t.m, t.shape, t.weight, t.coef * w1 * wd * w2))
    return _merge(out)


def _merge(terms: Iterable[Term]) -> list[Term]:
    acc: dict[tuple, complex] = defaultdict(complex)
    order: list[tuple] = []
    for t in terms:
        key = (t.m, t.shape, t.weight)
        if key not in acc:
            order.append(key)
        acc[key] += t.coef
    return [Term(m, shape, wt, acc[(m, shape, wt)]) for (m, shape, wt) in order if abs(acc[(m, shape, wt)]) > _ZERO_TOL]


def _power(weight: str) -> int:
    return 3 if weight.endswith("3") else 4


def spectrum_from_terms(pair: FieldPair, terms: list[Term], config: RotatingConfig, omega: float, exact: bool = True, tol: float = DEFAULT_TOL) -> RotatingSpectrum:
    """Evaluate the mode sums behind ``terms`` and collect them into delta lines."""
    coeff: dict[int, complex] = defaultdict(complex)
    nmax: dict[int, int] = defaultdict(int)
    tails: dict[int, float] = defaultdict(float)
    same = pair.points == "AA"
    for t in terms:
        scale = PREFACTOR / config.r ** _power(t.weight)
        if exact:
            ms = mode_sum(t.shape, t.weight, same, config, omega, tol)
            coeff[t.m] += t.coef * scale * ms.value
            nmax[t.m] = max(nmax[t.m], ms.n_max)
            tails[t.m] += abs(t.coef) * scale * ms.tail
        else:
            coeff[t.m] += t.coef * scale * first_order_sum(t.shape, t.weight, same, config, omega)
    lines = tuple(RotatingLine(m, complex(coeff[m]), nmax[m], tails[m]) for m in sorted(coeff))
    return RotatingSpectrum(
        pair=pair,
        omega=float(omega),
        lines=lines,
        mode_truncation=max(nmax.values(), default=0),
        tail_estimate=float(sum(tails.values())),
        exact=exact,
    )


def _as_pair(pair: FieldPair | str, points: str | None) -> FieldPair:
    if isinstance(pair, FieldPair):
        if points is not None and points != pair.points:
            return FieldPair(pair.first, pair.second, pair.deriv, points)
        return pair
    return FieldPair.parse(pair, points or "AB")


def correlation(pair: FieldPair | str, config: RotatingConfig, omega: float, exact: bool = True, points: str | None = None, tol: float = DEFAULT_TOL) -> RotatingSpectrum:
    """Spectrum of ``pair``: exact mode sums, or their first-order forms when ``exact`` is false."""
    pair = _as_pair(pair, points)
    omega = float(omega)
    if not math.isfinite(omega):
        raise DomainError(f"omega must be finite, got {omega}")
    terms = circular_terms(pair) if pair.is_circular else _cartesian_terms(pair)
    spec = spectrum_from_terms(pair, terms, config, omega, exact, tol)
    if pair.is_circular:
        for ln in spec.lines:
            if ln.shift_multiple != pair.shift_charge:
                raise AssertionError(f"{pair.label}: line at m={ln.shift_multiple}, expected {pair.shift_charge}")
    return spec


def cartesian_from_circular(pair: FieldPair | str, config: RotatingConfig, omega: float, exact: bool = True, points: str | None = None) -> RotatingSpectrum:
    """Cartesian spectrum built by summing the circular spectra line by line."""
    pair = _as_pair(pair, points)
    if not pair.is_cartesian:
        raise UnknownPairError(f"{pair.label} is not a Cartesian pair")
    derivs = _TO_CIRCULAR[pair.deriv] if pair.deriv else ((None, 1.0),)
    acc: dict[int, complex] = defaultdict(complex)
    nmax: dict[int, int] = defaultdict(int)
    tails: dict[int, float] = defaultdict(float)
    for c1, w1 in _TO_CIRCULAR[pair.first[1]]:
        for cd, wd in derivs:
            for c2, w2 in _TO_CIRCULAR[pair.second[1]]:
                sub = correlation(pair.with_components(c1, cd, c2), config, omega, exact)
                for ln in sub.lines:
                    acc[ln.shift_multiple] += w1 * wd * w2 * ln.coefficient
                    nmax[ln.shift_multiple] = max(nmax[ln.shift_multiple], ln.n_max)
                    tails[ln.shift_multiple] += abs(w1 * wd * w2) * ln.tail
    lines = tuple(RotatingLine(m, acc[m], nmax[m], tails[m]) for m in sorted(acc) if acc[m] != 0)
    return RotatingSpectrum(pair, float(omega), lines, max(nmax.values(), default=0), float(sum(tails.values())), exact)


# ---------------------------------------------------------------------------
# Cartesian results transcribed directly (second assembly route)
# ---------------------------------------------------------------------------

# (first, deriv, second) -> (AB factor, AA factor, [(m, shape, coef)])
_DIRECT_EE = {
    ("X", "X"): (1, 1, [(0, C.G0, 1), (2, C.Gplus, 1), (-2, C.Gminus, 1)]),
    ("Y", "Y"): (1, 1, [(0, C.G0, 1), (2, C.Gplus, -1), (-2, C.Gminus, -1)]),
    ("Z", "Z"): (1, 1, [(0, C.GZ, 1)]),
    ("X", "Y"): (-1j, -1j, [(2, C.Gplus, 1), (-2, C.Gminus, -1)]),
    ("Y", "X"): (-1j, -1j, [(2, C.Gplus, 1), (-2, C.Gminus, -1)]),
}
_DIRECT_EB = {
    ("X", "Z"): (1, -1, [(1, C.Hplus, 1), (-1, C.Hminus, -1)]),
    ("Z", "X"): (-1, 1, [(1, C.Hplus, 1), (-1, C.Hminus, -1)]),
    ("Y", "Z"): (-1j, 1j, [(1, C.Hplus, 1), (-1, C.Hminus, 1)]),
    ("Z", "Y"): (1j, -1j, [(1, C.Hplus, 1), (-1, C.Hminus, 1)]),
}
_PARA = [(1, C.PparaPlus, 1), (-1, C.PparaMinus, 1), (3, C.P3plus, 1), (-3, C.P3minus, 1)]
_PARA_ALT = [(1, C.PparaPlus, 1), (-1, C.PparaMinus, -1), (3, C.P3plus, -1), (-3, C.P3minus, 1)]
_TIMES_ALT = [(1, C.PtimesPlus, 1), (-1, C.PtimesMinus, -1), (3, C.P3plus, -1), (-3, C.P3minus, 1)]
_TIMES = [(1, C.PtimesPlus, 1), (-1, C.PtimesMinus, 1), (3, C.P3plus, 1), (-3, C.P3minus, 1)]
_NPARA_ALT = [(1, C.PnparaPlus, 1), (-1, C.PnparaMinus, -1), (3, C.P3plus, -1), (-3, C.P3minus, 1)]
_NPARA = [(1, C.PnparaPlus, 1), (-1, C.PnparaMinus, 1), (3, C.P3plus, 1), (-3, C.P3minus, 1)]
_DIRECT_EDE = {
    ("X", "X", "X"): (-1, 1, _PARA),
    ("Y", "Y", "Y"): (1j, -1j, _PARA_ALT),
    ("X", "X", "Y"): (-1j, 1j, _TIMES_ALT),
    ("Y", "X", "X"): (-1j, 1j, _TIMES_ALT),
    ("Y", "Y", "X"): (1, -1, _TIMES),
    ("X", "Y", "Y"): (1, -1, _TIMES),
    ("Z", "Z", "X"): (1, -1, [(1, C.PZplus, 1), (-1, C.PZminus, 1)]),
    ("X", "Z", "Z"): (1, -1, [(1, C.PZplus, 1), (-1, C.PZminus, 1)]),
    ("Z", "Z", "Y"): (-1j, 1j, [(1, C.PZplus, 1), (-1, C.PZminus, -1)]),
    ("Y", "Z", "Z"): (-1j, 1j, [(1, C.PZplus, 1), (-1, C.PZminus, -1)]),
    ("X", "Y", "X"): (-1j, 1j, _NPARA_ALT),
    ("Y", "X", "Y"): (1, -1, _NPARA),
    ("Z", "X", "Z"): (-1, 1, [(1, C.PtimesPlus, 4), (-1, C.PtimesMinus, 4)]),
    ("Z", "Y", "Z"): (1j, -1j, [(1, C.PtimesPlus, 4), (-1, C.PtimesMinus, -4)]),
}
_G_ODD = [(2, C.Gplus, 1), (-2, C.Gminus, -1)]
_G_HALF_MINUS = [(0, C.GZ, 0.5), (2, C.Gplus, -1), (-2, C.Gminus, -1)]
_G_HALF_PLUS = [(0, C.GZ, 0.5), (2, C.Gplus, 1), (-2, C.Gminus, 1)]
# same display for both point choices; AA relations follow the AB ones
_DIRECT_BDE = {
    ("Z", "X", "X"): (-1, -1, _G_ODD),
    ("X", "X", "Z"): (1, 1, _G_ODD),
    ("Z", "Y", "Y"): (1, 1, _G_ODD),
    ("Y", "Y", "Z"): (-1, -1, _G_ODD),
    ("Z", "X", "Y"): (-1j, -1j, _G_HALF_MINUS),
    ("Y", "X", "Z"): (1j, 1j, _G_HALF_MINUS),
    ("Z", "Y", "X"): (1j, 1j, _G_HALF_PLUS),
    ("X", "Y", "Z"): (-1j, -1j, _G_HALF_PLUS),
    ("X", "Z", "Y"): (1j, 1j, [(0, C.QZ, 1)]),
    ("Y", "Z", "X"): (-1j, -1j, [(0, C.QZ, 1)]),
}


def _direct_table_terms(pair: FieldPair) -> list[Term]:
    kinds = pair.first[0] + pair.second[0]
    c1, c2 = pair.first[1], pair.second[1]
    same = pair.points == "AA"
    sign = 1.0
    if pair.deriv is None:
        if kinds in ("EE", "BB"):
            table, key, weight = _DIRECT_EE, (c1, c2), "abs3"
        else:
            table, key, weight = _DIRECT_EB, (c1, c2), "signed3"
            if kinds == "BE":
                sign = -1.0
    else:
        if kinds in ("EE", "BB"):
            table, key, weight = _DIRECT_EDE, (c1, pair.deriv, c2), "abs4"
        else:
            table, key, weight = _DIRECT_BDE, (c1, pair.deriv, c2), "signed4"
            if kinds == "EB":
                sign = -1.0
    if key not in table:
        return []
    ab, aa, entries = table[key]
    f = sign * (aa if same else ab)
    return [Term(m, shape, weight, f * c) for m, shape, c in entries]


def direct_cartesian(pair: FieldPair | str, config: RotatingConfig, omega: float, points: str | None = None) -> RotatingSpectrum:
    """Cartesian spectrum from the Cartesian results written out component by component."""
    pair = _as_pair(pair, points)
    if not pair.is_cartesian:
        raise UnknownPairError(f"{pair.label} is not a Cartesian pair")
    return spectrum_from_terms(pair, _direct_table_terms(pair), config, omega, exact=True)


def all_pairs(basis: str = "circular", points: Iterable[str] = _POINTS) -> list[FieldPair]:
    """Every field pair of one basis: with and without a derivative, over E/B kinds and both point choices."""
    comps = CIRCULAR if basis == "circular" else CARTESIAN
    out = []
    for pts in points:
        for f1 in "EB":
            for f2 in "EB":
                for c1 in comps:
                    for c2 in comps:
                        out.append(FieldPair(f1 + c1, f2 + c2, None, pts))
                        for d in comps:
                            out.append(FieldPair(f1 + c1, f2 + c2, d, pts))
    return out
