"""Command-line front end: ``python3 -m hmobius <command> ...``.

Exit codes: 0 success, 1 self-test failure, 2 unparseable arguments or
descriptors, 3 points outside a domain or too close to a boundary/pole.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .domains import UnitBall, parse_domain
from .hmetric import MetricParams, h_eval
from .lipverify import (estimate_sup, geometric_grid, ratio, run_selftest, sharpness_scan_b2b,
                        sharpness_scan_b2h)
from .lipverify.report import (curve_to_csv, dumps, fmt_csv_float, fmt_json_float, ratio_sample_to_dict,
                               report_to_json)
from .mobius import apply, parse_map
from .vecgeom import INF, Seed

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _coords(text: str) -> np.ndarray:
    try:
        v = np.array([float(s) for s in text.split(",")], dtype=np.float64)
    except ValueError:
        raise UsageError(f"bad coordinate list {text!r}") from None
    if not np.all(np.isfinite(v)):
        raise UsageError(f"non-finite coordinate in {text!r}")
    return v


def _floats(text: str) -> list[float]:
    return [float(v) for v in _coords(text)]


def _params(c: float) -> MetricParams:
    try:
        return MetricParams(c)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse(fn, *args):
    try:
        return fn(*args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _dims(n, *points):
    for p in points:
        if p.shape[0] != n:
            raise UsageError(f"expected {n} coordinates, got {p.shape[0]}")


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_eval(args):
    D = _parse(parse_domain, args.domain)
    x, y = _coords(args.x), _coords(args.y)
    _dims(D.n, x, y)
    p = _params(args.c)
    print(fmt_json_float(h_eval(D, p, x, y)))


def cmd_map(args):
    x = None if args.x.strip().lower() == "inf" else _coords(args.x)
    n = args.n if args.n is not None else (None if x is None else x.shape[0])
    f = _parse(parse_map, args.f, n)
    if x is None:
        x = INF
    else:
        _dims(f.n, x)
    z = apply(f, x)
    print("inf" if z is INF else ",".join(fmt_csv_float(v) for v in z))


def cmd_ratio(args):
    D, D2 = _parse(parse_domain, args.src), _parse(parse_domain, args.dst)
    f = _parse(parse_map, args.f, D.n)
    x, y = _coords(args.x), _coords(args.y)
    _dims(D.n, x, y)
    s = ratio(f, D, D2, _params(args.c), x, y)
    sys.stdout.write(dumps(ratio_sample_to_dict(s)))


def cmd_estimate(args):
    D, D2 = _parse(parse_domain, args.src), _parse(parse_domain, args.dst)
    f = _parse(parse_map, args.f, D.n)
    if f.n != D.n or D2.n != D.n:
        raise UsageError("map and domains must share one dimension")
    if args.budget < 1:
        raise UsageError("budget must be >= 1")
    rep = estimate_sup(f, D, D2, _params(args.c), args.budget, args.refine_steps, Seed(args.seed),
                       args.upper, args.lower, workers=args.workers)
    _emit(report_to_json(rep), args.out)


def cmd_sharpness(args):
    p = _params(args.c)
    t = _floats(args.t_grid) if args.t_grid else geometric_grid(1, 8)
    if args.kind == "b2b":
        if args.a is None:
            raise UsageError("--a is required for --kind b2b")
        rows = sharpness_scan_b2b(_coords(args.a), p, t, inverse=args.inverse)
    else:
        rows = sharpness_scan_b2h(p, t, n=args.n)
    _emit(curve_to_csv(rows), args.out)


def cmd_selftest(args):
    if args.budget < 1:
        raise UsageError("budget must be >= 1")
    rows = run_selftest(args.seed, args.budget)
    for r in rows:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.detail})")
    failed = sum(not r.passed for r in rows)
    print(f"{len(rows) - failed}/{len(rows)} checks passed")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hmobius", description="h-metric evaluation and Möbius distortion checks")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate h_{D,c}(x, y)")
    p.add_argument("domain", help="ball:n | half:n | pball:n:p1,..,pn")
    p.add_argument("--c", type=float, default=2.0)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("map", help="apply a Möbius map to a point")
    p.add_argument("--f", required=True, help="map descriptor, e.g. 'sigma:0.5,0;orth:3'")
    p.add_argument("--x", required=True, help="coordinates, or 'inf'")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("ratio", help="distortion ratio of one pair")
    p.add_argument("--f", required=True)
    p.add_argument("--src", required=True)
    p.add_argument("--dst", required=True)
    p.add_argument("--c", type=float, default=2.0)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("estimate", help="estimate sup/inf of the distortion ratio")
    p.add_argument("--f", required=True)
    p.add_argument("--src", required=True)
    p.add_argument("--dst", required=True)
    p.add_argument("--c", type=float, default=2.0)
    p.add_argument("--budget", type=int, default=10**4)
    p.add_argument("--refine-steps", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--upper", type=float, default=float("inf"))
    p.add_argument("--lower", type=float, default=0.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("sharpness", help="ratios along the extremal paths, as CSV")
    p.add_argument("--kind", choices=("b2b", "b2h"), required=True)
    p.add_argument("--a")
    p.add_argument("--c", type=float, default=2.0)
    p.add_argument("--t-grid", help="comma-separated t values (default 1e-1..1e-8)")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sharpness)

    p = sub.add_parser("selftest", help="run every check at desk-scale budgets")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10**4)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)  # exits 2 on malformed flags
    try:
        return args.func(args) or EXIT_OK
    except UsageError as exc:
        print(f"hmobius: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, ArithmeticError) as exc:
        # points outside the domain, on a pole, coincident pairs, ...
        print(f"hmobius: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
