"""Command-line front end: parameter sweeps, verification, CSV/JSON tables.

Exit codes: 0 success, 1 invalid request (or a failed verification), 2 numerical
non-convergence. Rows always come out in grid order.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

import click
from scipy import constants

from .errors import DomainError, NonConvergenceError, UnknownPairError
from .rectilinear import PAIRS as RECT_PAIRS
from .rectilinear import RectilinearConfig, band, in_band, rect_exact
from .rotating import FieldPair, RotatingConfig, corr_fn, correlation
from .rotating.functions import CorrelationFunctionId
from .specfun import ThermalContext
from .staticfreq import static_correlation
from .timedomain import SpacetimeSeparation, time_correlator
from .verify import SCHEMA_VERSION, SUITES, report_dict, run_suite

__all__ = ["main", "cli", "parse_grid", "fmt"]

SHIFTS = tuple(range(-3, 4))
THREADS_ENV = "VACCORR_THREADS"


class GridPointError(Exception):
    """A failure at one grid point; carries the point for the error message."""

    def __init__(self, point: dict, cause: BaseException):
        super().__init__(f"{cause} at grid point {_describe(point)}")
        self.point = point
        self.cause = cause


def _describe(point: dict) -> str:
    return ", ".join(f"{k}={fmt(v) if isinstance(v, float) else v}" for k, v in point.items())


def fmt(x) -> str:
    """17 significant digits, locale independent."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def parse_grid(text: str, integer: bool = False) -> list:
    """Parse ``a,b,c`` or ``start:stop:count`` (inclusive, evenly spaced)."""
    text = text.strip()
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError
            start, stop = float(parts[0]), float(parts[1])
            count = int(parts[2])
            if count < 1:
                raise ValueError
            if count == 1:
                vals = [start]
            else:
                vals = [start + (stop - start) * i / (count - 1) for i in range(count)]
        else:
            vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise click.BadParameter(f"cannot parse grid {text!r}; use a,b,c or start:stop:count") from None
    if not vals:
        raise click.BadParameter(f"grid {text!r} is empty")
    if any(not math.isfinite(v) for v in vals):
        raise click.BadParameter(f"grid {text!r} contains a non-finite value")
    if integer:
        if any(v != round(v) for v in vals):
            raise click.BadParameter(f"grid {text!r} must contain integers")
        return [int(round(v)) for v in vals]
    return vals


def _default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            n = int(env)
        except ValueError:
            raise click.BadParameter(f"{THREADS_ENV} must be an integer, got {env!r}") from None
        if n < 1:
            raise click.BadParameter(f"{THREADS_ENV} must be positive, got {n}")
        return n
    return min(8, os.cpu_count() or 1)


def _evaluate(fn: Callable[[dict], list[dict]], points: Sequence[dict], threads: int | None) -> list[dict]:
    def one(point):
        try:
            return fn(point)
        except (DomainError, UnknownPairError, NonConvergenceError) as exc:
            raise GridPointError(_public(point), exc) from exc

    threads = threads or _default_threads()
    if threads == 1 or len(points) == 1:
        batches = [one(p) for p in points]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(one, points))
    return [row for batch in batches for row in batch]


def _product(**grids: Iterable) -> list[dict]:
    keys = list(grids)
    return [dict(zip(keys, combo)) for combo in itertools.product(*(grids[k] for k in keys))]


# --------------------------------------------------------------------------- output


def _csv_text(header: Sequence[str], rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=",", lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(row[h]) for h in header])
    return buf.getvalue()


def _json_value(x):
    if isinstance(x, float):
        if not math.isfinite(x):
            return fmt(x)
        return float(fmt(x))
    if isinstance(x, dict):
        return {k: _json_value(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_json_value(v) for v in x]
    return x


def _json_text(obj) -> str:
    return json.dumps(_json_value(obj), indent=2, ensure_ascii=True) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _write_table(command: str, header: Sequence[str], rows: list[dict], fmt_name: str, output: str | None) -> None:
    if fmt_name == "csv":
        _emit(_csv_text(header, rows), output)
    else:
        _emit(_json_text({"schema_version": SCHEMA_VERSION, "command": command, "rows": rows}), output)


# --------------------------------------------------------------------------- SI conversion


def _si_scales(separation_m: float) -> dict:
    """Factors turning natural-unit outputs into SI for the unit length ``separation_m``."""
    hbar, c, eps0, kb = constants.hbar, constants.c, constants.epsilon_0, constants.k
    length = separation_m
    return {
        "frequency": c / length,  # rad/s per natural unit
        "temperature": hbar * c / (kb * length),  # K per natural unit
        "time": length / c,  # s per natural unit
        "spectral": hbar / (eps0 * length**3),  # (V/m)^2 s per natural unit
        "correlator": hbar * c / (eps0 * length**4),  # (V/m)^2 per natural unit
    }


def _si_options(f):
    f = click.option("--temp-K", "temp_k", type=float, default=None, help="Temperature in kelvin (replaces --temp; requires --si).")(f)
    f = click.option("--separation-m", type=float, default=None, help="Unit length in metres that all distances are measured in.")(f)
    f = click.option("--si", is_flag=True, help="Append SI-converted columns.")(f)
    return f


def _resolve_si(si: bool, separation_m: float | None, temp_k: float | None, temps: list[float]) -> tuple[dict | None, list[float]]:
    if not si:
        if separation_m is not None or temp_k is not None:
            raise click.UsageError("--separation-m and --temp-K require --si")
        return None, temps
    if separation_m is None or not (math.isfinite(separation_m) and separation_m > 0.0):
        raise click.UsageError("--si requires a positive --separation-m")
    scales = _si_scales(separation_m)
    if temp_k is not None:
        if not (math.isfinite(temp_k) and temp_k >= 0.0):
            raise click.UsageError("--temp-K must be finite and nonnegative")
        temps = [temp_k / scales["temperature"]]
    return scales, temps


def _common(f):
    f = click.option("--threads", type=int, default=None, help=f"Worker threads (default: ${THREADS_ENV} or CPU count, at most 8).")(f)
    f = click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True), default=None, help="Write to a file instead of stdout.")(f)
    f = click.option("--format", "fmt_name", type=click.Choice(["csv", "json"]), default="csv", show_default=True)(f)
    return f


def _grid(integer: bool = False):
    def cb(ctx, param, value):
        return None if value is None else parse_grid(value, integer)

    return cb


# --------------------------------------------------------------------------- commands


@click.group()
def cli():
    """Vacuum electromagnetic field correlation spectra."""


@cli.command("corrfn")
@click.option("--id", "fid", required=True, type=click.Choice([c.value for c in CorrelationFunctionId]))
@click.option("--n", "n_grid", required=True, callback=_grid(True), help="Mode index grid.")
@click.option("--x", "x_grid", required=True, callback=_grid(), help="Dimensionless frequency grid.")
@_common
def corrfn_cmd(fid, n_grid, x_grid, fmt_name, output, threads):
    """Shape functions of revolving points."""
    points = _product(id=[fid], n=n_grid, x=x_grid)

    def compute(p):
        return [{**p, "value": corr_fn(p["id"], p["n"], p["x"])}]

    rows = _evaluate(compute, points, threads)
    _write_table("corrfn", ["id", "n", "x", "value"], rows, fmt_name, output)


def _line_columns():
    return [f"{part}_m{m:+d}" for m in SHIFTS for part in ("re", "im")]


@cli.command("rotating-spectrum")
@click.option("--pair", "pairs", required=True, multiple=True, help="Field pair, e.g. E+E-, EXEY, BZdXEX (repeatable).")
@click.option("--points", type=click.Choice(["AB", "AA"]), default="AB", show_default=True)
@click.option("--omega", "omegas", required=True, callback=_grid())
@click.option("--omega-r", "omega_rs", required=True, callback=_grid(), help="Angular velocity times radius.")
@click.option("--r", "radii", default="1", callback=_grid(), show_default=True, help="Radius grid.")
@click.option("--temp", "temps", default="0", callback=_grid(), show_default=True)
@click.option("--first-order", is_flag=True, help="Use the first-order forms instead of exact mode sums.")
@click.option("--tol", type=float, default=None, help="Relative stopping tolerance of the mode sums.")
@_common
def rotating_cmd(pairs, points, omegas, omega_rs, radii, temps, first_order, tol, fmt_name, output, threads):
    """Line spectra of two revolving points."""
    parsed = [FieldPair.parse(p, points) for p in pairs]
    grid = _product(pair=parsed, omega=omegas, omega_r=omega_rs, r=radii, temp=temps)
    for p in grid:
        try:
            p["_cfg"] = RotatingConfig(p["r"], p["omega_r"] / p["r"], ThermalContext(p["temp"]))
        except DomainError as exc:
            raise GridPointError(_public(p), exc) from exc
    kwargs = {} if tol is None else {"tol": tol}

    def compute(p):
        spec = correlation(p["pair"], p["_cfg"], p["omega"], exact=not first_order, **kwargs)
        base = {"pair": p["pair"].label, "points": points, "omega": p["omega"], "omega_r": p["omega_r"], "r": p["r"], "temp": p["temp"]}
        lines = [
            {
                "pair": p["pair"].label,
                "shift_multiple_m": ln.shift_multiple,
                "re_coeff": float(ln.coefficient.real),
                "im_coeff": float(ln.coefficient.imag),
                "n_max": int(ln.n_max),
                "tail": float(ln.tail),
            }
            for ln in spec.lines
        ]
        flat = {}
        for m in SHIFTS:
            c = spec.line(m)
            flat[f"re_m{m:+d}"] = float(c.real)
            flat[f"im_m{m:+d}"] = float(c.imag)
        return [{**base, **flat, "lines": lines}]

    rows = _evaluate(compute, grid, threads)
    head = ["pair", "points", "omega", "omega_r", "r", "temp"]
    if fmt_name == "csv":
        _write_table("rotating-spectrum", head + _line_columns(), rows, fmt_name, output)
    else:
        slim = [{**{k: r[k] for k in head}, "lines": r["lines"]} for r in rows]
        _write_table("rotating-spectrum", head, slim, fmt_name, output)


def _public(p: dict) -> dict:
    return {k: (v.label if isinstance(v, FieldPair) else v) for k, v in p.items() if not k.startswith("_")}


@cli.command("rectilinear-spectrum")
@click.option("--pair", "pairs", required=True, multiple=True, type=click.Choice(list(RECT_PAIRS)))
@click.option("--a", "seps", required=True, callback=_grid(), help="Separation grid.")
@click.option("--v", "vels", required=True, callback=_grid(), help="Relative velocity grid (|v| < 2, nonzero).")
@click.option("--temp", "temps", default="0", callback=_grid(), show_default=True)
@click.option("--omega", "omegas", required=True, callback=_grid())
@click.option("--omega-prime", "omega_primes", default=None, callback=_grid(), help="Explicit omega' grid.")
@click.option("--band-points", type=int, default=None, help="Instead of --omega-prime: this many evenly spaced points across each band.")
@_common
def rectilinear_cmd(pairs, seps, vels, temps, omegas, omega_primes, band_points, fmt_name, output, threads):
    """Continuous spectra of two points in relative uniform motion."""
    if (omega_primes is None) == (band_points is None):
        raise click.UsageError("give exactly one of --omega-prime and --band-points")
    if band_points is not None and band_points < 2:
        raise click.UsageError("--band-points must be at least 2")
    grid = []
    for p in _product(pair=list(pairs), a=seps, v=vels, temp=temps, omega=omegas):
        try:
            cfg = RectilinearConfig(p["a"], p["v"], ThermalContext(p["temp"]))
            if omega_primes is not None:
                ops = omega_primes
            else:
                b = band(cfg, p["omega"])
                ops = [b.lower + (b.upper - b.lower) * i / (band_points - 1) for i in range(band_points)]
        except DomainError as exc:
            raise GridPointError(p, exc) from exc
        for op in ops:
            grid.append({**p, "omega_prime": op, "_cfg": cfg})

    def compute(p):
        val = rect_exact(p["pair"], p["_cfg"], p["omega"], p["omega_prime"])
        inside = in_band(p["_cfg"], p["omega"], p["omega_prime"])
        return [{**_public(p), "re": float(val.real), "im": float(val.imag), "in_band": inside}]

    rows = _evaluate(compute, grid, threads)
    _write_table("rectilinear-spectrum", ["pair", "a", "v", "temp", "omega", "omega_prime", "re", "im", "in_band"], rows, fmt_name, output)


@cli.command("static-spectrum")
@click.option("--projection", "projections", multiple=True, default=("parallel", "perpendicular"), type=click.Choice(["parallel", "perpendicular"]))
@click.option("--omega", "omegas", required=True, callback=_grid())
@click.option("--s", "seps", required=True, callback=_grid(), help="Separation grid.")
@click.option("--temp", "temps", default="0", callback=_grid(), show_default=True)
@click.option("--unsymmetrized", is_flag=True, help="Use N + Theta(omega) instead of N + 1/2.")
@_si_options
@_common
def static_cmd(projections, omegas, seps, temps, unsymmetrized, si, separation_m, temp_k, fmt_name, output, threads):
    """Spectral coefficients between two fixed points."""
    scales, temps = _resolve_si(si, separation_m, temp_k, temps)
    grid = _product(projection=list(projections), omega=omegas, s=seps, temp=temps)

    def compute(p):
        val = static_correlation(p["projection"], p["omega"], p["s"], ThermalContext(p["temp"]), not unsymmetrized)
        row = {**p, "coefficient": val}
        if scales:
            row.update(omega_rad_s=p["omega"] * scales["frequency"], s_m=p["s"] * separation_m, temp_K=p["temp"] * scales["temperature"], coefficient_si=val * scales["spectral"])
        return [row]

    rows = _evaluate(compute, grid, threads)
    head = ["projection", "omega", "s", "temp", "coefficient"]
    if scales:
        head += ["omega_rad_s", "s_m", "temp_K", "coefficient_si"]
    _write_table("static-spectrum", head, rows, fmt_name, output)


@cli.command("time-corr")
@click.option("--projection", "projections", multiple=True, default=("parallel", "perpendicular"), type=click.Choice(["parallel", "perpendicular", "cross"]))
@click.option("--dt", "dts", required=True, callback=_grid(), help="Time difference grid.")
@click.option("--s", "seps", required=True, callback=_grid(), help="Separation grid.")
@click.option("--temp", "temps", default="0", callback=_grid(), show_default=True)
@_si_options
@_common
def time_cmd(projections, dts, seps, temps, si, separation_m, temp_k, fmt_name, output, threads):
    """Time-domain correlators between two fixed points."""
    scales, temps = _resolve_si(si, separation_m, temp_k, temps)
    grid = _product(projection=list(projections), dt=dts, s=seps, temp=temps)
    for p in grid:
        try:
            p["_sep"] = SpacetimeSeparation(p["dt"], p["s"])
        except DomainError as exc:
            raise GridPointError(_public(p), exc) from exc

    def compute(p):
        val = time_correlator(p["projection"], p["_sep"], ThermalContext(p["temp"]))
        row = {**_public(p), "value": val}
        if scales:
            row.update(dt_s=p["dt"] * scales["time"], s_m=p["s"] * separation_m, temp_K=p["temp"] * scales["temperature"], value_si=val * scales["correlator"])
        return [row]

    rows = _evaluate(compute, grid, threads)
    head = ["projection", "dt", "s", "temp", "value"]
    if scales:
        head += ["dt_s", "s_m", "temp_K", "value_si"]
    _write_table("time-corr", head, rows, fmt_name, output)


@cli.command("verify")
@click.option("--suite", default="all", show_default=True, type=click.Choice(["all", *SUITES]))
@click.option("--format", "fmt_name", type=click.Choice(["csv", "json"]), default="json", show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True), default=None)
def verify_cmd(suite, fmt_name, output):
    """Run the oracle and identity checks; exit 1 if any property fails."""
    results = run_suite(suite)
    report = report_dict(suite, results)
    if fmt_name == "json":
        _emit(_json_text(report), output)
    else:
        header = ["name", "passed", "value", "lower", "upper", "cases", "worst_case"]
        rows = [{k: ("" if v is None else v) for k, v in prop.items()} for prop in report["properties"]]
        _emit(_csv_text(header, rows), output)
    if not report["passed"]:
        raise _VerifyFailed()


class _VerifyFailed(Exception):
    pass


def main(argv: list[str] | None = None) -> int:
    """Entry point; returns the process exit code."""
    try:
        cli.main(args=argv, prog_name="vaccorr", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except _VerifyFailed:
        click.echo("verification failed", err=True)
        return 1
    except GridPointError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2 if isinstance(exc.cause, NonConvergenceError) else 1
    except (DomainError, UnknownPairError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except NonConvergenceError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
