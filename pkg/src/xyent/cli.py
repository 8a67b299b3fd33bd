"""Command-line front end.

Temperatures (``--T``) are reduced: the same units as the single-particle
dispersion, not Kelvin.

Exit codes: 0 success, 1 usage error, 2 numerical or I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import __version__
from .correlators import correlator_set, g_table
from .entanglement import CONC_TOL, NEG_TOL, analyze_triple
from .errors import XYEntError
from .oracle import MAX_SITES, compare
from .params import ModelParams, QuadratureConfig, TripleGeometry
from .scans import (DEFAULT_H_POINTS, FigureConfig, SweepRow, evaluate_point,
                    pair_range, sweep_field, thermal_scan)
from .state import assemble_rho3

FORMATS = ("csv", "json")
_VALUE_FLAGS = {"--h", "--gamma", "--T", "--alpha", "--beta", "--k", "--grid", "--tol",
                "--sites", "--tmax"}
_NEGATIVE = re.compile(r"^-\d")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def format_value(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        return f"{value:.12g}"
    return str(value)


def emit(rows: Sequence[dict], fmt: str, sink: TextIO, header: Sequence[str] | None = None) -> None:
    """Write homogeneous records as headed CSV or a JSON list of flat objects."""
    rows = list(rows)
    names = list(header) if header is not None else (list(rows[0]) if rows else [])
    for row in rows:
        if list(row) != names:
            raise ValueError("rows are not homogeneous")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(names)
        for row in rows:
            writer.writerow([format_value(row[n]) for n in names])
        sink.write(buf.getvalue())
    elif fmt == "json":
        def clean(v):
            if isinstance(v, (np.bool_, bool)):
                return bool(v)
            if isinstance(v, (np.integer,)):
                return int(v)
            if isinstance(v, (float, np.floating)):
                v = float(v)
                return None if math.isnan(v) else v
            return v
        records = [{n: clean(row[n]) for n in names} for row in rows]
        sink.write(json.dumps(records, indent=None) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


# --- argument parsing ---------------------------------------------------------

def parse_int_range(text: str) -> list[int]:
    lo, sep, hi = text.partition(":")
    try:
        if not sep:
            return [int(lo)]
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"malformed integer range {text!r}; expected lo:hi") from None
    if hi_i < lo_i:
        raise UsageError(f"empty integer range {text!r}")
    return list(range(lo_i, hi_i + 1))


def parse_grid(text: str) -> np.ndarray:
    parts = text.split(":")
    try:
        if len(parts) != 3:
            raise ValueError
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"malformed grid {text!r}; expected lo:hi:n") from None
    if n < 1 or not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
        raise UsageError(f"invalid grid {text!r}")
    if n == 1:
        return np.array([lo])
    return np.linspace(lo, hi, n)


def parse_sites(text: str) -> tuple[int, ...]:
    try:
        sites = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise UsageError(f"malformed site list {text!r}") from None
    if len(sites) != 3 or any(b <= a for a, b in zip(sites, sites[1:])) or sites[0] < 0:
        raise UsageError(f"sites must be three increasing indices, got {text!r}")
    return sites


def _shared(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--h", type=float, help="reduced transverse field B/2J")
    parser.add_argument("--gamma", type=float, help="anisotropy in [0, 1]")
    parser.add_argument("--T", type=float, default=0.0, dest="T",
                        help="reduced temperature (dispersion units); 0 = ground state")
    parser.add_argument("--alpha", type=int, default=1, help="distance j - i")
    parser.add_argument("--beta", type=int, default=1, help="distance k - j")
    parser.add_argument("--config", help="geometry a:<d> or b:<d>")
    parser.add_argument("--grid", help="field grid lo:hi:n")
    parser.add_argument("--dmax", type=int, default=8, help="largest pair distance")
    parser.add_argument("--N", type=int, default=8, dest="N", help="open-chain length")
    parser.add_argument("--sites", help="three increasing site indices i,j,k")
    parser.add_argument("--tol", type=float, default=1e-10, help="quadrature abs tolerance")
    parser.add_argument("--format", choices=FORMATS, default="csv")
    parser.add_argument("--out", help="output path (default: standard output)")
    parser.add_argument("--workers", type=int, default=None,
                        help="worker processes for grid scans")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xyent", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    commands = {
        "g": "fermionic contractions G_k",
        "correlators": "all nonvanishing correlators of a triple",
        "rho": "three-spin reduced density matrix",
        "analyze": "negativities, concurrences and classification of a triple",
        "range": "pair entanglement range",
        "scan-field": "entanglement of a configuration along a field grid",
        "scan-thermal": "thermal death temperatures along a field grid",
        "oracle-compare": "ED vs finite fermions vs thermodynamic engine",
    }
    for name, help_text in commands.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        _shared(p)
        if name == "g":
            p.add_argument("--k", default="-3:3", help="index range lo:hi")
        if name == "scan-thermal":
            p.add_argument("--tmax", type=float, default=2.0, help="upper temperature bracket")
            p.add_argument("--scout", type=int, default=200, help="scouting grid size")
    return parser


def _merge_negative_values(argv: Sequence[str]) -> list[str]:
    out: list[str] = []
    i = 0
    argv = list(argv)
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + n for n in missing))


def _params(args, t=None) -> ModelParams:
    _require(args, "h", "gamma")
    try:
        return ModelParams(args.h, args.gamma, args.T if t is None else t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _geometry(args) -> TripleGeometry:
    if args.config:
        return _figure_config(args).geometry
    try:
        return TripleGeometry(args.alpha, args.beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _figure_config(args) -> FigureConfig:
    try:
        return FigureConfig.parse(args.config)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _quad(args) -> QuadratureConfig:
    try:
        return QuadratureConfig(abs_tol=args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _tolerances() -> dict:
    return {"neg_tol": NEG_TOL, "conc_tol": CONC_TOL}


# --- subcommands --------------------------------------------------------------

def _cmd_g(args):
    params, quad = _params(args), _quad(args)
    ks = parse_int_range(args.k)
    table = g_table(params, max(abs(k) for k in ks), quad)
    return [{"k": k, "G": table[k]} for k in ks]


def _cmd_correlators(args):
    params, geom, quad = _params(args), _geometry(args), _quad(args)
    cset = correlator_set(geom, params, quad)
    row = {"h": params.h, "gamma": params.gamma, "t": params.t,
           "alpha": geom.alpha, "beta": geom.beta}
    values = cset.as_dict()
    for key in ("z_j", "z_k"):
        values.pop(key)
    row.update(values)
    return [row]


def _cmd_rho(args):
    params, geom, quad = _params(args), _geometry(args), _quad(args)
    rho = assemble_rho3(correlator_set(geom, params, quad))
    return [{"row": r, **{f"c{c}": rho.m[r, c] for c in range(8)}} for r in range(8)]


def _cmd_analyze(args):
    params, geom, quad = _params(args), _geometry(args), _quad(args)
    report = analyze_triple(params, geom, quad)
    row = evaluate_point(params, geom, quad).as_dict()
    row.update(_tolerances())
    row["description"] = report.classification.description
    return [row]


def _cmd_range(args):
    params, quad = _params(args), _quad(args)
    if args.dmax < 1:
        raise UsageError("--dmax must be >= 1")
    r = pair_range(params, args.dmax, quad)
    return [{"h": params.h, "gamma": params.gamma, "t": params.t, "dmax": args.dmax,
             "R": r.value, "capped": r.capped}]


def _cmd_scan_field(args):
    _require(args, "gamma", "config", "grid")
    if args.h is not None:
        raise UsageError("scan-field takes --grid instead of --h")
    config = _figure_config(args)
    grid = parse_grid(args.grid)
    _params(argparse.Namespace(h=float(grid[0]), gamma=args.gamma, T=args.T))
    rows = sweep_field(args.gamma, args.T, config, grid, _quad(args), args.workers)
    return [{**r.as_dict(), **_tolerances()} for r in rows]


def _cmd_scan_thermal(args):
    _require(args, "gamma", "grid")
    grid = parse_grid(args.grid)
    _params(argparse.Namespace(h=float(grid[0]), gamma=args.gamma, T=0.0))
    if not args.tmax > 0:
        raise UsageError("--tmax must be positive")
    sets = thermal_scan(args.gamma, grid, args.tmax, _quad(args), args.scout, args.workers)
    return [s.as_row() for s in sets]


def _cmd_oracle(args):
    params, quad = _params(args), _quad(args)
    if not 3 <= args.N <= MAX_SITES:
        raise UsageError(f"--N must lie in [3, {MAX_SITES}]")
    if args.sites:
        sites = parse_sites(args.sites)
    else:
        start = args.N // 4
        sites = (start, start + args.alpha, start + args.alpha + args.beta)
    if sites[-1] >= args.N:
        raise UsageError(f"sites {sites} do not fit in a chain of {args.N}")
    result = compare(params, args.N, sites, quad)
    return [{"h": params.h, "gamma": params.gamma, "t": params.t, "N": args.N,
             "sites": " ".join(map(str, sites)), **result.as_row()}]


_COMMANDS = {
    "g": _cmd_g, "correlators": _cmd_correlators, "rho": _cmd_rho,
    "analyze": _cmd_analyze, "range": _cmd_range, "scan-field": _cmd_scan_field,
    "scan-thermal": _cmd_scan_thermal, "oracle-compare": _cmd_oracle,
}


def run(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_merge_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rows = _COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"xyent {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except XYEntError as exc:
        print(f"xyent {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    header = SweepRow.field_names() + list(_tolerances()) if args.command == "scan-field" else None
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                emit(rows, args.format, fh, header)
        else:
            emit(rows, args.format, sys.stdout, header)
    except OSError as exc:
        print(f"xyent {args.command}: output failed: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())
