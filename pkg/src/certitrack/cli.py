"""Command-line front end: ``certitrack {track,bounds,verify,bw}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .diagnostics import (
    TOY_M_VALUES,
    QuadratureError,
    bounds_report,
    format_bounds_table,
    newton_contraction_check,
)
from .exact_arith import GaussianRational, format_rational, parse_rational
from .polysys import load_system
from .stepsize import check_hypothesis
from .tracker import TrackerConfig, TrackStatus, cache_invariants, track_segment

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_HYPOTHESIS = 3
EXIT_SINGULAR = 4
EXIT_MAX_STEPS = 5
EXIT_QUADRATURE = 6
EXIT_BIT_FUSE = 7

STATUS_EXIT = {
    TrackStatus.CERTIFIED: EXIT_OK,
    TrackStatus.HYPOTHESIS_VIOLATED: EXIT_HYPOTHESIS,
    TrackStatus.SINGULAR_ENCOUNTERED: EXIT_SINGULAR,
    TrackStatus.MAX_STEPS_EXCEEDED: EXIT_MAX_STEPS,
    TrackStatus.BIT_LIMIT_EXCEEDED: EXIT_BIT_FUSE,
}


class InputError(Exception):
    pass


def _fmt_float(x: float) -> str:
    return format(x, ".17g")


def load_point(path) -> tuple[GaussianRational, ...]:
    """Read a point: a list of ``{"re", "im"}`` objects, or an object with ``zero``/``z_star``."""
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    if isinstance(obj, dict):
        for key in ("zero", "z", "z_star"):
            if key in obj:
                obj = obj[key]
                break
        else:
            raise ValueError("point file needs a 'zero', 'z' or 'z_star' entry")
    if not isinstance(obj, list) or not obj:
        raise ValueError("point must be a nonempty list")
    return tuple(GaussianRational.from_json(c) for c in obj)


def _read_inputs(fn, *args):
    try:
        return fn(*args)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{args[0]}: {exc}") from exc


def _max_bits_from_env() -> int | None:
    raw = os.environ.get("CERTITRACK_MAX_BITS")
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"CERTITRACK_MAX_BITS must be an integer, got {raw!r}") from exc


def cmd_track(args) -> int:
    f = _read_inputs(load_system, args.target)
    g = _read_inputs(load_system, args.start)
    z0 = _read_inputs(load_point, args.zero)
    if f.degrees != g.degrees:
        raise InputError(f"target degrees {f.degrees} differ from start degrees {g.degrees}")
    if len(z0) != f.nvars:
        raise InputError(f"start point has {len(z0)} coordinates, expected {f.nvars}")
    cfg = TrackerConfig(
        max_steps=args.max_steps,
        denominator_matching=not args.no_denominator_matching,
        trace_level=args.trace,
        max_bits=_max_bits_from_env(),
    )
    result = track_segment(f, g, z0, cfg)
    text = result.dumps(cfg.trace_level)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(f"status: {result.status.value}, steps: {result.steps}", file=sys.stderr)
    if result.message:
        print(result.message, file=sys.stderr)
    return STATUS_EXIT[result.status]


def cmd_bounds(args) -> int:
    if args.family != "toy":
        raise InputError(f"unknown family {args.family!r}")
    if args.sweep:
        ms = list(TOY_M_VALUES)
    elif args.m is not None:
        ms = [_read_inputs(parse_rational, args.m)]
    else:
        raise InputError("give --m M or --sweep")
    if any(m <= 0 for m in ms):
        raise InputError("m must be positive")
    cfg = TrackerConfig(trace_level="none")
    try:
        reports = [bounds_report(m, cfg) for m in ms]
    except QuadratureError as exc:
        print(f"quadrature failed: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        print(format_bounds_table(reports))
    if args.csv:
        lines = ["m,ub_over_steps"] + [f"{r.m},{_fmt_float(r.ratio_ub_over_steps)}" for r in reports]
        Path(args.csv).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return EXIT_OK if all(r.status == "Certified" for r in reports) else EXIT_FAIL


def cmd_verify(args) -> int:
    f = _read_inputs(load_system, args.system)
    z = _read_inputs(load_point, args.zero)
    if len(z) != f.nvars:
        raise InputError(f"point has {len(z)} coordinates, expected {f.nvars}")
    rep = newton_contraction_check(f, z, iters=args.iters)
    for l, d in enumerate(rep.displacements):
        print(f"d_R(z{l}, z{l + 1}) = {_fmt_float(d)}")
    print("verdict:", "pass" if rep.passed else "fail")
    if rep.message:
        print(rep.message)
    if rep.message.startswith("singular"):
        return EXIT_SINGULAR
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_bw(args) -> int:
    f = _read_inputs(load_system, args.a)
    g = _read_inputs(load_system, args.b)
    if f.degrees != g.degrees:
        raise InputError(f"degree mismatch: {f.degrees} vs {g.degrees}")
    n1, n2, n3, n_dot = cache_invariants(f, g)
    print(f"n1 = {format_rational(n1)}")
    print(f"n2 = {format_rational(n2)}")
    print(f"n3 = {format_rational(n3)}")
    print(f"ndot = {format_rational(n_dot)}")
    if n3 * n3 == n1 * n2:
        print("warning: systems are real-collinear")
        print("hypothesis (1): violated")
    else:
        print("hypothesis (1):", "OK" if check_hypothesis(f, g) else "violated")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="certitrack", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("track", help="track a linear homotopy from --start to --target")
    p.add_argument("--target", required=True, help="target system f (JSON)")
    p.add_argument("--start", required=True, help="start system g (JSON)")
    p.add_argument("--zero", required=True, help="approximate zero of g (JSON)")
    p.add_argument("--out", help="result file (default: stdout)")
    p.add_argument("--max-steps", type=int, default=10**6)
    p.add_argument("--no-denominator-matching", action="store_true")
    p.add_argument("--trace", choices=["full", "summary", "none"], default="summary")
    p.set_defaults(func=cmd_track)

    p = sub.add_parser("bounds", help="step-count bounds for the toy family")
    p.add_argument("--family", default="toy", choices=["toy"])
    p.add_argument("--m", help="family parameter (integer or p/q)")
    p.add_argument("--sweep", action="store_true", help="run all reference m values")
    p.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    p.add_argument("--csv", help="also write (m, UB/steps) pairs to this file")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="Newton-contraction screen for a candidate zero")
    p.add_argument("--system", required=True)
    p.add_argument("--zero", required=True)
    p.add_argument("--iters", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bw", help="Bombieri-Weyl products of two systems")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_bw)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
