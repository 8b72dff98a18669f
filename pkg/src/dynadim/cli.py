"""Command-line front end.

Subcommands: zoo (list model systems), dim (dimension scans), entropy
(metric or topological rates), verify (inequality suite).  A JSON config
file can carry any flag value under the same name; explicit flags win.
Every output file embeds the package version and the resolved run
configuration, and rerunning a command with the same inputs reproduces
the output byte for byte.

Exit codes: 0 success, 1 usage error, 2 computation error; a verify run
with k failing checks exits with 10 + k.
"""

from __future__ import annotations

import argparse
import json
import math
import sys as _sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .dimension import (
    ComputationError,
    EpsGrid,
    ExactMode,
    MonteCarloMode,
    dimension_estimate,
    scan,
)
from .entropy import (
    CloudMode,
    ExactShiftMode,
    GreedyMode,
    brin_katok_scan,
    generating_scan,
    metric_entropy_estimate,
    topological_entropy_estimate,
)
from .geometry import (
    GeometryError,
    SystemSpec,
    TorusPoint,
    ZOO_NAMES,
    dyadic_depth,
    zoo_system,
)
from .measures import (
    MeasureError,
    MeasureModel,
    bernoulli_measure,
    dirac_measure,
    lebesgue_measure,
    markov_measure,
    periodic_measure,
    sample,
)
from .reports import atomic_write_text, csv_text, fmt_float, json_text
from .verify import default_suite, run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract wants 1
        raise UsageError(message)


# flag name -> (argparse kwargs); dest mirrors the config field
_FLAGS = {
    "--config": dict(metavar="PATH", help="JSON file with default values for these flags"),
    "--system": dict(metavar="NAME", help="system spec, e.g. full_shift_2sided:m=3,metric=onesided"),
    "--measure": dict(metavar="SPEC", help="measure spec, e.g. bernoulli:0.7,0.3 or markov:0.9,0.1;0.2,0.8"),
    "--q": dict(metavar="LIST", help="comma-separated q values"),
    "--eps0": dict(metavar="F", type=float, help="coarsest radius of the scan grid"),
    "--eps-factor": dict(metavar="F", type=float, help="radius shrink factor per step"),
    "--eps-count": dict(metavar="N", type=int, help="number of radii in the grid"),
    "--nmax": dict(metavar="N", type=int, help="largest iterate count"),
    "--samples": dict(metavar="N", type=int, help="Monte-Carlo sample size"),
    "--seed": dict(metavar="N", type=int, help="seed for all sampling"),
    "--mode": dict(choices=("exact", "mc"), help="closed forms or Monte-Carlo estimates"),
    "--tol": dict(metavar="F", type=float, help="comparison tolerance for verify"),
    "--out": dict(metavar="PATH", help="output file (default: stdout)"),
    "--format": dict(choices=("csv", "json"), help="output format"),
    "--kind": dict(choices=("metric", "topological"), help="entropy flavor"),
    "--centers": dict(metavar="N", type=int, help="number of sampled centers"),
    "--theorems": dict(metavar="LIST", help="comma-separated name filters for verify jobs"),
    "--threads": dict(metavar="N", type=int, help="worker threads for the pair kernel / suite"),
}


def _add_flags(p: argparse.ArgumentParser, *names: str) -> None:
    for name in names:
        p.add_argument(name, default=None, **_FLAGS[name])


def _build_parser() -> _Parser:
    parser = _Parser(prog="dynadim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"dynadim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("zoo", help="list the model systems and their constants")
    _add_flags(p, "--config", "--out", "--format")

    p = sub.add_parser("dim", help="generalized-dimension scans and estimates")
    _add_flags(
        p, "--config", "--system", "--measure", "--q", "--eps0", "--eps-factor",
        "--eps-count", "--samples", "--seed", "--mode", "--out", "--format", "--threads",
    )

    p = sub.add_parser("entropy", help="metric or topological entropy rates")
    _add_flags(
        p, "--config", "--system", "--measure", "--kind", "--eps0", "--eps-factor",
        "--eps-count", "--nmax", "--samples", "--seed", "--mode", "--centers",
        "--out", "--format",
    )

    p = sub.add_parser("verify", help="run the inequality suite")
    _add_flags(p, "--config", "--theorems", "--tol", "--threads", "--out", "--format")
    return parser


_DEFAULTS = {
    "zoo": {"format": "json"},
    "dim": {
        "system": "full_shift_2sided",
        "measure": "bernoulli:0.5,0.5",
        "q": "2",
        "eps0": 0.5,
        "eps_factor": 0.5,
        "eps_count": 10,
        "samples": 20000,
        "seed": 0,
        "mode": "exact",
        "format": "json",
        "threads": 1,
    },
    "entropy": {
        "system": "full_shift_2sided",
        "measure": "bernoulli:0.5,0.5",
        "kind": "metric",
        "eps0": 0.25,
        "eps_factor": 0.5,
        "eps_count": 3,
        "nmax": 20,
        "samples": 20000,
        "seed": 0,
        "mode": "exact",
        "centers": 8,
        "format": "json",
    },
    "verify": {"format": "json", "threads": 1},
}


def _resolve_config(args: argparse.Namespace) -> dict:
    """Start from subcommand defaults, overlay the config file, then flags."""
    cmd = args.command
    resolved = dict(_DEFAULTS[cmd])
    if args.config is not None:
        try:
            with open(args.config) as fh:
                doc = json.load(fh)
        except OSError as e:
            raise UsageError(f"cannot read config: {e}")
        except json.JSONDecodeError as e:
            raise UsageError(f"config is not valid JSON: {e}")
        if not isinstance(doc, dict):
            raise UsageError("config must be a JSON object")
        known = set(_DEFAULTS[cmd]) | {"out", "tol", "theorems"}
        for key, val in doc.items():
            if key not in known:
                raise UsageError(f"unknown config field {key!r} for {cmd}")
            resolved[key] = val
    for key in list(_DEFAULTS[cmd]) + ["out", "tol", "theorems"]:
        flag_val = getattr(args, key, None)
        if flag_val is not None:
            resolved[key] = flag_val
    resolved["command"] = cmd
    return resolved


def _parse_coords(text: str) -> tuple:
    coords = []
    for tok in text.split(","):
        tok = tok.strip()
        if "/" in tok:
            coords.append(Fraction(tok))
        else:
            coords.append(float(tok))
    return tuple(coords)


def _parse_system(spec: str) -> SystemSpec:
    name, _, rest = spec.partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            key, eq, val = item.partition("=")
            if not eq or not key:
                raise UsageError(f"bad system parameter {item!r} (expected key=value)")
            params[key] = int(val) if val.lstrip("-").isdigit() else val
    try:
        return zoo_system(name, **params)
    except (GeometryError, TypeError, ValueError) as e:
        raise UsageError(f"bad system spec {spec!r}: {e}")


def _parse_measure(spec: str, sys: SystemSpec) -> MeasureModel:
    kind, _, rest = spec.partition(":")
    try:
        if kind == "bernoulli":
            return bernoulli_measure(sys, [float(t) for t in rest.split(",")])
        if kind == "markov":
            rows = [[float(t) for t in row.split(",")] for row in rest.split(";")]
            return markov_measure(sys, rows)
        if kind == "lebesgue":
            return lebesgue_measure(sys)
        if kind == "dirac":
            return dirac_measure(sys, TorusPoint(_parse_coords(rest or "0")))
        if kind == "periodic":
            if rest:
                period_str, _, x0_str = rest.partition("@")
                period = int(period_str)
                coords = _parse_coords(x0_str) if x0_str else (Fraction(0),) * sys.dim
            else:
                period = int(sys.params.get("p", 1))
                coords = (Fraction(0),) * sys.dim
            return periodic_measure(sys, TorusPoint(coords), period)
    except (MeasureError, GeometryError, ValueError) as e:
        raise UsageError(f"bad measure spec {spec!r}: {e}")
    raise UsageError(f"unknown measure kind {kind!r}")


def _parse_q_list(val) -> list[float]:
    if isinstance(val, (list, tuple)):
        return [float(v) for v in val]
    try:
        return [float(tok) for tok in str(val).split(",") if tok.strip() != ""]
    except ValueError:
        raise UsageError(f"bad q list {val!r}")


def _grid_from(cfg: dict) -> EpsGrid:
    try:
        return EpsGrid(float(cfg["eps0"]), float(cfg["eps_factor"]), int(cfg["eps_count"]))
    except (ComputationError, ValueError) as e:
        raise UsageError(f"bad radius grid: {e}")


def _embed(cfg: dict) -> dict:
    """Config as embedded in outputs.

    The output path and thread count are delivery knobs with no effect on
    the computed content, so they are excluded; identical computations
    then produce identical bytes at any location and any parallelism.
    """
    return {k: v for k, v in cfg.items() if k not in ("out", "threads")}


def _emit(cfg: dict, text: str) -> None:
    if cfg.get("out"):
        atomic_write_text(cfg["out"], text)
    else:
        _sys.stdout.write(text)


def _shift_window_radius(grid: EpsGrid, nmax: int = 0) -> int:
    return dyadic_depth(grid.values()[-1]) + nmax


def cmd_zoo(cfg: dict) -> int:
    rows = []
    for name in ZOO_NAMES:
        sysd = zoo_system(name).describe()
        lyap = sysd.get("lyapunov")
        eig = [math.exp(c) for c in lyap] if lyap else None
        rows.append((sysd, eig))
    if cfg["format"] == "json":
        payload = {
            "systems": [
                {**sysd, "eigenvalues": eig} for sysd, eig in rows
            ]
        }
        _emit(cfg, json_text(payload, _embed(cfg), f"dynadim {__version__}"))
        return 0
    header = ["name", "space", "Lambda", "lambda", "k", "h_top", "lambda1", "lambda2"]
    table = []
    for sysd, eig in rows:
        table.append([
            sysd["name"],
            sysd["space"],
            _cell(sysd.get("lip_upper")),
            _cell(sysd.get("lip_lower")),
            _cell(sysd.get("hyperbolic_k")),
            _cell(sysd.get("known_top_entropy")),
            _cell(eig[0] if eig else None),
            _cell(eig[1] if eig else None),
        ])
    _emit(cfg, csv_text(header, table, _embed(cfg), f"dynadim {__version__}"))
    return 0


def _cell(v) -> str:
    return "" if v is None else fmt_float(v)


def cmd_dim(cfg: dict) -> int:
    sys = _parse_system(cfg["system"])
    mu = _parse_measure(cfg["measure"], sys)
    grid = _grid_from(cfg)
    q_values = _parse_q_list(cfg["q"])
    if cfg["mode"] == "mc":
        mode = MonteCarloMode(
            n_samples=int(cfg["samples"]),
            seed=int(cfg["seed"]),
            mass="empirical",
            threads=int(cfg["threads"]),
        )
    else:
        mode = ExactMode()
    scans = [scan(mu, q, grid, mode) for q in q_values]
    reports = [dimension_estimate(s) for s in scans]
    if cfg["format"] == "csv":
        rows = []
        for s in scans:
            rows.extend(s.csv_rows())
        _emit(cfg, csv_text(["q", "eps", "value", "kind"], rows, _embed(cfg), f"dynadim {__version__}"))
    else:
        payload = {"reports": [r.as_dict() for r in reports]}
        _emit(cfg, json_text(payload, _embed(cfg), f"dynadim {__version__}"))
    return 0


def cmd_entropy(cfg: dict) -> int:
    sys = _parse_system(cfg["system"])
    grid = _grid_from(cfg)
    eps_values = grid.values()
    nmax = int(cfg["nmax"])
    seed = int(cfg["seed"])

    if cfg["kind"] == "topological":
        if cfg["mode"] == "mc":
            cloud = _uniform_cloud(sys, int(cfg["samples"]), seed, grid, nmax)
            mode = GreedyMode(points=tuple(cloud))
        else:
            mode = ExactShiftMode()
        report = topological_entropy_estimate(sys, eps_values, nmax, mode)
        if cfg["format"] == "csv":
            rows = []
            for eps in eps_values:
                rows.extend(generating_scan(sys, eps, nmax, mode).csv_rows())
            _emit(cfg, csv_text(["eps", "n", "value", "kind", "censored"], rows, _embed(cfg), f"dynadim {__version__}"))
        else:
            _emit(cfg, json_text({"report": report.as_dict()}, _embed(cfg), f"dynadim {__version__}"))
        return 0

    mu = _parse_measure(cfg["measure"], sys)
    w = _shift_window_radius(grid, nmax) if sys.space == "shift" else None
    centers = sample(mu, int(cfg["centers"]), seed, window_radius=w)
    if cfg["mode"] == "mc":
        cloud = sample(mu, int(cfg["samples"]), seed + 1, window_radius=w)
        mode = CloudMode(points=tuple(cloud))
    else:
        mode = ExactMode()
    report = metric_entropy_estimate(mu, sys, eps_values, nmax, centers, mode)
    if cfg["format"] == "csv":
        rows = []
        for eps in eps_values:
            for x in centers:
                rows.extend(brin_katok_scan(mu, sys, x, eps, nmax, mode).csv_rows())
        _emit(cfg, csv_text(["eps", "n", "value", "kind", "censored"], rows, _embed(cfg), f"dynadim {__version__}"))
    else:
        _emit(cfg, json_text({"report": report.as_dict()}, _embed(cfg), f"dynadim {__version__}"))
    return 0


def _uniform_cloud(sys: SystemSpec, n: int, seed: int, grid: EpsGrid, nmax: int):
    if sys.space == "shift":
        mu = bernoulli_measure(sys, [1.0 / sys.alphabet] * sys.alphabet)
        w = _shift_window_radius(grid, nmax)
        return sample(mu, n, seed, window_radius=w)
    if sys.name == "periodic_orbit":
        mu = periodic_measure(sys, TorusPoint((Fraction(0),) * sys.dim), int(sys.params.get("p", 1)))
        return sample(mu, n, seed)
    return sample(lebesgue_measure(sys), n, seed)


def cmd_verify(cfg: dict) -> int:
    if cfg["format"] == "csv":
        raise UsageError("verify emits JSON lines; csv is not available")
    names = None
    if cfg.get("theorems") is not None:
        val = cfg["theorems"]
        names = [t.strip() for t in (val if isinstance(val, list) else str(val).split(",")) if t.strip()]
        if not names:
            return 0  # an explicitly empty selection runs nothing
    tol = cfg.get("tol")
    result = run_suite(default_suite(tolerance=tol), names=names, threads=int(cfg["threads"]))
    header = json.dumps(
        {"config": _embed(cfg), "kind": "run_header", "version": f"dynadim {__version__}"},
        sort_keys=True,
    )
    lines = [header] + result.json_lines()
    _emit(cfg, "\n".join(lines) + "\n")
    for line in result.summary_lines():
        print(line, file=_sys.stderr)
    return 0 if result.failures == 0 else 10 + result.failures


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _resolve_config(args)
    except UsageError as e:
        print(f"usage error: {e}", file=_sys.stderr)
        return 1
    try:
        if cfg["command"] == "zoo":
            return cmd_zoo(cfg)
        if cfg["command"] == "dim":
            return cmd_dim(cfg)
        if cfg["command"] == "entropy":
            return cmd_entropy(cfg)
        return cmd_verify(cfg)
    except UsageError as e:
        print(f"usage error: {e}", file=_sys.stderr)
        return 1
    except (GeometryError, MeasureError, ComputationError, OSError) as e:
        print(f"error: {e}", file=_sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
