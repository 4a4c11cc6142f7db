"""Command-line driver: single points, t-sweeps and (t, theta) surfaces as CSV.

Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

import numpy as np

from . import __version__
from .discord import MinimizerConfig, discord_theta_profile, quantum_discord
from .fock_core import (
    DEFAULT_EPSILON,
    AccelParam,
    DimensionError,
    OutOfRangeError,
    TruncationPolicy,
    UnruhDiscordError,
    accel_from_r,
    accel_from_ratio,
    tail_mass,
)
from .mid import mid_measure
from .negativity import log_negativity

SCHEMA = 1
MEASURES = ("discord", "mid", "lognegativity", "mutualinfo")
SWEEP_COLUMNS = ("t", "r", "discord", "theta_star", "mid", "log_negativity", "mutual_info", "cutoff_N", "tail_mass")
SURFACE_COLUMNS = ("t", "theta", "discord_theta", "is_argmin", "cutoff_N")

# grid points within this many bits of the row minimum are all marked argmin
ARGMIN_TIE = 1e-12


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if math.isnan(x):
        return ""
    return format(float(x), ".12g")


def parse_measures(text: str) -> tuple[str, ...]:
    items = tuple(m.strip().lower().replace("-", "").replace("_", "") for m in text.split(",") if m.strip())
    bad = [m for m in items if m not in MEASURES]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"measures must be a comma list drawn from {','.join(MEASURES)}")
    return tuple(m for m in MEASURES if m in items)


# ---------------------------------------------------------------------------
# evaluation (top-level so that worker processes can pickle it)


def evaluate_point(t: float, measures: Sequence[str], policy: TruncationPolicy,
                   minimizer: MinimizerConfig) -> dict:
    p = AccelParam(t)
    cutoff = policy.resolve(p)
    row = {"t": p.t, "r": p.r, "cutoff_N": cutoff, "tail_mass": tail_mass(p, cutoff)}
    if "discord" in measures or "mutualinfo" in measures:
        res = quantum_discord(p, policy, minimizer)
        if "discord" in measures:
            row["discord"] = res.discord
            row["theta_star"] = res.theta_star
        if "mutualinfo" in measures:
            row["mutual_info"] = res.mutual_information
    if "mid" in measures:
        row["mid"] = mid_measure(p, policy).value
    if "lognegativity" in measures:
        row["log_negativity"] = log_negativity(p, policy)
    return row


def evaluate_surface_row(t: float, thetas: np.ndarray, policy: TruncationPolicy) -> list[dict]:
    p = AccelParam(t)
    cutoff = policy.resolve(p)
    values = discord_theta_profile(p, thetas, policy)
    low = values.min()
    return [{"t": p.t, "theta": th, "discord_theta": v, "is_argmin": bool(v - low <= ARGMIN_TIE), "cutoff_N": cutoff}
            for th, v in zip(thetas, values)]


def _pmap(fn, items, jobs: int, *extra) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x, *extra) for x in items]
    n = len(items)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, *([e] * n for e in extra)))


# ---------------------------------------------------------------------------
# output


def render_csv(columns: Sequence[str], rows: Sequence[dict], meta: str) -> str:
    lines = [f"# schema={SCHEMA}", f"# {meta}", ",".join(columns)]
    lines += [",".join(fmt(row.get(c)) for c in columns) for row in rows]
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _meta(command: str, args: argparse.Namespace, keys: Sequence[str]) -> str:
    parts = [f"unruh-discord {__version__}", command]
    parts += [f"{k}={fmt(getattr(args, k)) if not isinstance(getattr(args, k), tuple) else '+'.join(getattr(args, k))}"
              for k in keys]
    return " ".join(parts)


# ---------------------------------------------------------------------------
# commands


def _policy(args) -> TruncationPolicy:
    if args.cutoff is not None:
        return TruncationPolicy.fixed(args.cutoff)
    return TruncationPolicy.adaptive(args.epsilon)


def _minimizer(args) -> MinimizerConfig:
    return MinimizerConfig(grid=args.minimizer_grid, tol=args.minimizer_tol, max_iter=args.minimizer_max_iter)


def _t_grid(args) -> np.ndarray:
    if not 0 <= args.t_min <= args.t_max < 1:
        raise UsageError(f"need 0 <= t-min <= t-max < 1, got t-min={args.t_min} t-max={args.t_max}")
    if args.steps < 1:
        raise UsageError(f"steps must be >= 1, got {args.steps}")
    return np.linspace(args.t_min, args.t_max, args.steps)


def cmd_point(args) -> int:
    given = [name for name in ("t", "r", "accel_ratio") if getattr(args, name) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --t, --r, --accel-ratio")
    if args.t is not None:
        p = AccelParam(args.t)
    elif args.r is not None:
        p = accel_from_r(args.r)
    else:
        p = accel_from_ratio(args.accel_ratio)
    start = time.perf_counter()
    row = evaluate_point(p.t, args.measures, _policy(args), _minimizer(args))
    wall = time.perf_counter() - start
    keys = [("t", "t"), ("r", "r"), ("D", "discord"), ("theta_star", "theta_star"), ("M", "mid"),
            ("EN", "log_negativity"), ("I", "mutual_info"), ("N", "cutoff_N"), ("tail_mass", "tail_mass")]
    for label, col in keys:
        if col in row:
            val = row[col]
            text = "degenerate" if col == "theta_star" and math.isnan(val) else fmt(val)
            print(f"{label}={text}")
    print(f"wall_time={wall:.3f}")
    if args.out:
        write_atomic(args.out, render_csv(SWEEP_COLUMNS, [row], _meta("point", args, ("epsilon", "cutoff"))))
    return 0


def cmd_sweep(args) -> int:
    ts = _t_grid(args)
    rows = _pmap(evaluate_point, [float(t) for t in ts], args.jobs, args.measures, _policy(args), _minimizer(args))
    meta = _meta("sweep", args, ("t_min", "t_max", "steps", "measures", "epsilon", "cutoff",
                                 "minimizer_grid", "minimizer_tol", "minimizer_max_iter"))
    emit(render_csv(SWEEP_COLUMNS, rows, meta), args.out)
    return 0


def cmd_surface(args) -> int:
    ts = _t_grid(args)
    if args.theta_steps < 2:
        raise UsageError(f"theta-steps must be >= 2, got {args.theta_steps}")
    thetas = np.linspace(0.0, math.pi, args.theta_steps)
    blocks = _pmap(evaluate_surface_row, [float(t) for t in ts], args.jobs, thetas, _policy(args))
    rows = [r for block in blocks for r in block]
    meta = _meta("surface", args, ("t_min", "t_max", "steps", "theta_steps", "epsilon", "cutoff"))
    emit(render_csv(SURFACE_COLUMNS, rows, meta), args.out)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unruh-discord", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="key=value file mirroring the flags; explicit flags win")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--measures", type=parse_measures, default=MEASURES,
                        help="comma list from discord,mid,lognegativity,mutualinfo (default: all)")
    common.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON, help="tail-mass tolerance (adaptive cutoff)")
    common.add_argument("--cutoff", type=int, default=None, help="fixed Fock cutoff N, overrides --epsilon")
    common.add_argument("--out", default=None, help="write CSV atomically to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes")
    common.add_argument("--minimizer-grid", type=int, default=64)
    common.add_argument("--minimizer-tol", type=float, default=1e-10)
    common.add_argument("--minimizer-max-iter", type=int, default=200)

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--t-min", type=float, default=0.0)
    grid.add_argument("--t-max", type=float, default=0.9)

    sub = parser.add_subparsers(dest="command", required=True)
    point = sub.add_parser("point", parents=[common], help="evaluate every measure at one acceleration")
    point.add_argument("--t", type=float, default=None, help="acceleration parameter tanh r in [0, 1)")
    point.add_argument("--r", type=float, default=None, help="rapidity r >= 0")
    point.add_argument("--accel-ratio", type=float, default=None, help="a / (|k| c)")
    point.set_defaults(func=cmd_point)

    sweep = sub.add_parser("sweep", parents=[common, grid], help="CSV of all measures along a t grid")
    sweep.add_argument("--steps", type=int, default=19)
    sweep.set_defaults(func=cmd_sweep)

    surface = sub.add_parser("surface", parents=[common, grid], help="CSV of D_theta over a (t, theta) grid")
    surface.add_argument("--steps", type=int, default=21)
    surface.add_argument("--theta-steps", type=int, default=33)
    surface.set_defaults(func=cmd_surface)
    return parser


def read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.lstrip("-").replace("-", "_")] = value
    return out


def _subparser(parser: argparse.ArgumentParser, name: str) -> argparse.ArgumentParser:
    for action in parser._subparsers._group_actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[name]
    raise KeyError(name)


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            cfg = read_config(args.config)
        except OSError as exc:
            parser.error(f"cannot read config: {exc}")
        except UsageError as exc:
            parser.error(str(exc))
        sub = _subparser(parser, args.command)
        known = {a.dest for a in sub._actions}
        unknown = sorted(set(cfg) - known - {"config"})
        if unknown:
            parser.error(f"unknown config keys for {args.command}: {', '.join(unknown)}")
        cfg.pop("config", None)
        sub.set_defaults(**cfg)
        args = parser.parse_args(argv)
    return args


def main(argv: Sequence[str] | None = None) -> int:
    args = parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, OutOfRangeError, DimensionError) as exc:
        print(f"unruh-discord {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except UnruhDiscordError as exc:
        print(f"unruh-discord {args.command}: numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
