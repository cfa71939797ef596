"""Brute-force reference computations used by the tests and the ``verify`` command.

Every routine here integrates a pre-closed-form representation directly, by
composite Gauss-Legendre (or periodic trapezoid) rules with subdivision
doubling, and shares no evaluation path with the closed forms it checks.
Bessel functions come from ``scipy.special.jv``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.special import jv

from .errors import DomainError, NonConvergenceError
from .rectilinear import PAIRS as RECT_PAIRS, RectilinearConfig
from .specfun import ThermalContext
from .timedomain import SpacetimeSeparation, thermal_parts

__all__ = [
    "QuadratureSpec",
    "QuadResult",
    "composite_gauss_legendre",
    "quad_bessel_product",
    "quad_cosine_integral_zero",
    "quad_rect_coefficient",
    "quad_thermal_self",
    "quad_thermal_time",
    "fourier_crosscheck",
    "FourierReport",
    "quad_rotating_line",
    "quad_digamma_identity",
]

_MAX_DOUBLINGS = 6


@dataclass(frozen=True)
class QuadratureSpec:
    """Gauss-Legendre nodes per panel, initial panel count and the doubling agreement tolerance."""

    node_count: int = 200
    subdivisions: int = 8
    target_tol: float = 1e-11

    def __post_init__(self):
        if self.node_count < 16:
            raise DomainError(f"node_count must be at least 16, got {self.node_count}")
        if self.subdivisions < 1:
            raise DomainError(f"subdivisions must be positive, got {self.subdivisions}")
        if not self.target_tol > 0.0:
            raise DomainError(f"target_tol must be positive, got {self.target_tol}")


@dataclass(frozen=True)
class QuadResult:
    """Quadrature value with the difference between the last two refinements."""

    value: complex | float
    error: float
    panels: int


_RULES: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _RULES:
        _RULES[n] = np.polynomial.legendre.leggauss(n)
    return _RULES[n]


def _panels(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, nodes: int, panels: int):
    x, w = _rule(nodes)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return np.sum(wts * f(pts))


def composite_gauss_legendre(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, spec: QuadratureSpec = QuadratureSpec()) -> QuadResult:
    """Integrate a vectorized ``f`` over [a, b], doubling panels until two values agree."""
    panels = spec.subdivisions
    prev = _panels(f, a, b, spec.node_count, panels)
    for _ in range(_MAX_DOUBLINGS):
        panels *= 2
        cur = _panels(f, a, b, spec.node_count, panels)
        err = float(abs(cur - prev))
        if err <= spec.target_tol * max(1.0, float(abs(cur))):
            return QuadResult(cur, err, panels)
        prev = cur
    raise NonConvergenceError(f"quadrature on [{a}, {b}] did not settle: last change {err:.3e}")


def quad_bessel_product(l: int, m: int, n: int, kappa: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Direct quadrature of int_0^{pi/2} sin^l(t) J_n(kappa sin t) J_{m-n}(kappa sin t) dt."""
    if l + abs(m) < 0:
        raise DomainError(f"integral diverges for l={l}, m={m}")

    def f(t):
        s = np.sin(t)
        return s**l * jv(n, kappa * s) * jv(m - n, kappa * s)

    return float(composite_gauss_legendre(f, 0.0, 0.5 * math.pi, spec).value)


def quad_cosine_integral_zero(l: int, n: int, m: int, kappa: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Quadrature of int_0^pi cos(t) sin^l(t) J_n(kappa sin t) J_{m-n}(kappa sin t) dt (vanishes by symmetry)."""

    def f(t):
        s = np.sin(t)
        return np.cos(t) * s**l * jv(n, kappa * s) * jv(m - n, kappa * s)

    return float(composite_gauss_legendre(f, 0.0, math.pi, spec).value)


def _rect_tensor(pair: str, st: float, ct: float, sp: np.ndarray, cp: np.ndarray):
    # wave direction (sin t sin p, cos t, sin t cos p): X across, Y along the motion
    kx = st * sp
    ky = ct
    kz = st * cp
    if pair == "XX":
        return 1.0 - kx * kx
    if pair == "YY":
        return (1.0 - ky * ky) * np.ones_like(sp)
    if pair == "ZZ":
        return 1.0 - kz * kz
    return -kx * ky


def quad_rect_coefficient(pair: str, config: RectilinearConfig, omega: float, omega_prime: float, spec: QuadratureSpec = QuadratureSpec()) -> complex:
    """Rectilinear spectral density from the angular integral, the polar Dirac solved for cos(theta).

    The azimuthal integral is done numerically with the periodic trapezoid rule.
    At the band edge the full one-sided value is returned.
    """
    if pair not in RECT_PAIRS:
        raise DomainError(f"pair must be one of {RECT_PAIRS}, got {pair!r}")
    if config.v == 0.0:
        raise DomainError("v = 0 has no band")
    half_diff = 0.5 * (omega - omega_prime)
    k = abs(half_diff)
    if k == 0.0:
        return 0j
    cos_t = (omega + omega_prime) / (half_diff * config.v)
    if abs(cos_t) > 1.0 + 1e-12:
        return 0j
    cos_t = max(-1.0, min(1.0, cos_t))
    sin_t = math.sqrt(max(0.0, 1.0 - cos_t * cos_t))
    sign = math.copysign(1.0, omega) if omega != 0.0 else -math.copysign(1.0, omega_prime)
    temp = config.ctx.temperature
    occ = 0.0 if temp == 0.0 else math.exp(-k / temp) / -math.expm1(-k / temp)

    def azimuthal(npts: int) -> complex:
        p = 2.0 * math.pi * np.arange(npts) / npts
        sp = np.sin(p)
        cp = np.cos(p)
        vals = np.exp(-1j * sign * k * config.a * sin_t * sp) * _rect_tensor(pair, sin_t, cos_t, sp, cp)
        return complex(np.mean(vals) * 2.0 * math.pi)

    npts = max(spec.node_count, 16)
    prev = azimuthal(npts)
    for _ in range(_MAX_DOUBLINGS):
        npts *= 2
        cur = azimuthal(npts)
        if abs(cur - prev) <= spec.target_tol * max(1.0, abs(cur)):
            break
        prev = cur
    else:
        raise NonConvergenceError("azimuthal trapezoid did not settle")
    # k^3 (N + 1/2) / (2 (2 pi)^3), times 1/(k |v|) from the polar Dirac
    return k**3 * (occ + 0.5) / (2.0 * (2.0 * math.pi) ** 3) / (k * abs(config.v)) * cur


def quad_thermal_self(kind: str, v: float, T: float, omega: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """int_{-1}^{1} (1 -+ x^2) / (1 + (v/2) x)^4 (N[|omega| / (1 + (v/2) x)] + 1/2) dx.

    ``kind`` is 'parallel' (1 - x^2) or 'transverse' (1 + x^2).
    """
    if kind not in ("parallel", "transverse"):
        raise DomainError(f"kind must be 'parallel' or 'transverse', got {kind!r}")
    beta = 0.5 * v
    if abs(beta) >= 1.0:
        raise DomainError("|v|/2 must be below 1")
    if T < 0.0:
        raise DomainError("temperature must be nonnegative")
    sgn = -1.0 if kind == "parallel" else 1.0
    w = abs(omega)

    def f(x):
        d = 1.0 + beta * x
        occ = np.zeros_like(x) if T == 0.0 else np.exp(-w / (d * T)) / -np.expm1(-w / (d * T))
        return (1.0 + sgn * x * x) / d**4 * (occ + 0.5)

    return float(composite_gauss_legendre(f, -1.0, 1.0, spec).value)


def _shape_kernel(which: int, q: np.ndarray) -> np.ndarray:
    # angular averages of exp(i k.s): sin(q)/q and the cos^2-weighted counterpart
    if which == 0:
        return np.sin(q) / q
    return ((q * q - 2.0) * np.sin(q) + 2.0 * q * np.cos(q)) / q**3


def quad_thermal_time(which: int, dt: float, s: float, T: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Thermal part of the C0 (``which=0``) or C2 (``which=2``) kernel by direct frequency integration.

    4 int_0^inf w^3 K(w s) N(w) cos(w dt) dw with K the angular kernel.
    """
    if T <= 0.0:
        raise DomainError("the thermal part needs T > 0")
    if which not in (0, 2):
        raise DomainError(f"which must be 0 or 2, got {which}")
    upper = 60.0 * T

    def f(w):
        occ = 1.0 / np.expm1(w / T)
        return 4.0 * w**3 * _shape_kernel(which, w * s) * occ * np.cos(w * dt)

    return float(composite_gauss_legendre(f, 1e-300, upper, spec).value)


@dataclass(frozen=True)
class FourierReport:
    """Comparison of transformed thermal kernels with the frequency-domain coefficients."""

    s: float
    temperature: float
    omegas: tuple[float, ...]
    numeric: tuple[tuple[float, float], ...]
    reference: tuple[tuple[float, float], ...]
    max_relative_error: float


def fourier_crosscheck(s: float, T: float, omega_grid: Sequence[float], window: float | None = None, spec: QuadratureSpec = QuadratureSpec(node_count=32, subdivisions=1, target_tol=1e-12)) -> FourierReport:
    """Transform the thermal time-domain kernels numerically and compare with the spectral coefficients.

    The kernels are even in dt, so the transform is (1/pi) int_0^L f(dt) cos(omega dt) d dt.
    Their tails fall off as dt^-4, and the truncation at L leaves an
    oscillatory remainder of order L^-4 / omega.
    """
    from .staticfreq import static_ctilde

    if T <= 0.0:
        raise DomainError("the crosscheck covers the thermal part only (T > 0)")
    ctx = ThermalContext(T)
    zero = ThermalContext(0.0)
    length = window if window is not None else 600.0 / min(1.0, T)
    panel = min(0.25, 0.25 / T, 0.5 * s)
    npanels = int(math.ceil(length / panel))
    x, w = _rule(spec.node_count)
    edges = np.linspace(0.0, npanels * panel, npanels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    th0 = np.empty_like(pts)
    th2 = np.empty_like(pts)
    for i, t in enumerate(pts):
        th0[i], th2[i] = thermal_parts(SpacetimeSeparation(float(t), s), ctx)
    numeric = []
    reference = []
    for om in omega_grid:
        c = np.cos(om * pts) * wts
        numeric.append((float(np.dot(th0, c) / math.pi), float(np.dot(th2, c) / math.pi)))
        reference.append(
            (
                static_ctilde(0, om, s, ctx) - static_ctilde(0, om, s, zero),
                static_ctilde(2, om, s, ctx) - static_ctilde(2, om, s, zero),
            )
        )
    scale = max(max(abs(a), abs(b)) for a, b in reference)
    err = max(max(abs(n0 - r0), abs(n2 - r2)) for (n0, n2), (r0, r2) in zip(numeric, reference)) / scale
    return FourierReport(float(s), float(T), tuple(float(o) for o in omega_grid), tuple(numeric), tuple(reference), float(err))


_CIRCULAR_VECTORS = {
    "X": ((0, 1.0),),
    "Y": ((1, 1.0),),
    "Z": ((2, 1.0),),
    "+": ((0, 0.5), (1, 0.5j)),
    "-": ((0, 0.5), (1, -0.5j)),
}


def _levi_civita() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[i, j, k] = 1.0
        eps[i, k, j] = -1.0
    return eps


def _pair_tensor(kinds: str, i: int, j: int, kh) -> np.ndarray:
    if kinds in ("EE", "BB"):
        return (1.0 if i == j else 0.0) - kh[i] * kh[j]
    eps = _levi_civita()
    val = sum(eps[i, j, l] * kh[l] for l in range(3))
    return val if kinds == "EB" else -val


def quad_rotating_line(
    first: str,
    second: str,
    deriv: str | None,
    points: str,
    r: float,
    Omega: float,
    T: float,
    omega: float,
    m: int,
    n_max: int = 40,
    polar_nodes: int = 120,
    azimuthal_nodes: int = 32,
) -> complex:
    """Coefficient of the line at shift multiple ``m`` by direct angular quadrature.

    The plane-wave sum over each harmonic is integrated over the full sphere
    (Gauss-Legendre in the polar angle, trapezoid in the azimuth) without the
    Bessel-product closed forms. ``points`` may be 'AB', 'BA' or 'AA'; the two
    points sit at -r/2 and +r/2 along the rotating radius.
    """
    kinds = first[0] + second[0]
    c1, c2 = first[1], second[1]
    x, wt = _rule(polar_nodes)
    th = (x + 1.0) * math.pi / 2.0
    wth = wt * math.pi / 2.0
    ph = np.arange(azimuthal_nodes) * 2.0 * math.pi / azimuthal_nodes
    TH, PH = np.meshgrid(th, ph, indexing="ij")
    kh = (np.sin(TH) * np.cos(PH), np.sin(TH) * np.sin(PH), np.cos(TH))
    ang = 0.0
    for i, a in _CIRCULAR_VECTORS[c1]:
        for j, b in _CIRCULAR_VECTORS[c2]:
            ang = ang + a * b * _pair_tensor(kinds, i, j, kh)
    dv = None
    if deriv:
        dv = 0.0
        for l, cc in _CIRCULAR_VECTORS[deriv]:
            dv = dv + cc * kh[l]
    L = -m
    total = 0j
    for n in range(-n_max, n_max + 1):
        for branch in (1, 2):
            q = (omega - n * Omega) if branch == 1 else (n * Omega - omega)
            if q <= 0.0:
                continue
            kap = q * r * np.sin(TH) / 2.0
            if points == "AB":
                phase = (-1j) ** L if branch == 1 else (1j) ** L
            elif points == "BA":
                phase = (1j) ** L if branch == 1 else (-1j) ** L
            else:
                phase = (-1j) ** n * (1j) ** (L - n) if branch == 1 else (1j) ** n * (-1j) ** (L - n)
            d = 1.0 if dv is None else ((-1j * q * dv) if branch == 1 else (1j * q * dv))
            integ = ang * d * jv(n, kap) * jv(L - n, kap) * np.exp(1j * L * PH) * np.sin(TH)
            val = (integ.sum(axis=1) * (2.0 * math.pi / azimuthal_nodes)) @ wth
            occ = 0.0 if T == 0.0 else 1.0 / math.expm1(q / T)
            total += q**3 / (2.0 * (2.0 * math.pi) ** 3) * (occ + 0.5) * phase * val
    return complex(total)


def quad_digamma_identity(order: int, x: float, y: float, upper: float = 80.0, spec: QuadratureSpec = QuadratureSpec(node_count=64, subdivisions=16, target_tol=1e-13)) -> complex:
    """Frequency integral whose value is a digamma-family combination on the line 1 + i(x +- y).

    order 0: 2i int k^0/(e^k - 1) sin(k y) e^{-i k x} dk
    order 1: 2  int k/(e^k - 1) cos(k y) e^{-i k x} dk
    order 2: 2i int k^2/(e^k - 1) sin(k y) e^{-i k x} dk
    """
    if order not in (0, 1, 2):
        raise DomainError(f"order must be 0, 1 or 2, got {order}")

    def f(k):
        bose = 1.0 / np.expm1(k)
        trig = np.cos(k * y) if order == 1 else np.sin(k * y)
        return k**order * bose * trig * np.exp(-1j * k * x)

    val = composite_gauss_legendre(f, 1e-300, upper, spec).value
    return complex(2.0 * val if order == 1 else 2j * val)
