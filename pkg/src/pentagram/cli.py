"""Command-line front end.

    pentagram iterate --seed 1 1 --n-fwd 3
    pentagram verify identities --trials 500 --backend rational
    pentagram levelset --lambda 1 --out-svg e1.svg --out-csv e1.csv
    pentagram escape-map --resolution 128 --cap 10000 --out field.csv --svg field.svg

Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import shlex
import sys
from pathlib import Path

from .errors import DegenerateInput, PentagramError, PoleOfMap, SingularLevel, UndefinedOnAxes
from .io import (
    escape_csv,
    escape_svg,
    fmt_scalar,
    levelset_csv,
    levelset_svg,
    parse_scalar,
    polygon_from_json,
    polygon_to_json,
)

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class InvalidInput(Exception):
    pass


def _emit(text: str, path: str | None):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _seeds(args) -> list[tuple]:
    exact = args.backend == "rational"
    raw = []
    if args.seed is not None:
        raw.append(args.seed)
    if args.seed_list is not None:
        for line in Path(args.seed_list).read_text().splitlines():
            line = line.split("#", 1)[0].replace(",", " ").split()
            if line:
                if len(line) != 2:
                    raise InvalidInput(f"seed lines need two values, got {line}")
                raw.append(line)
    if not raw:
        raise InvalidInput("give --seed X Y or --seed-list FILE")
    try:
        seeds = [(parse_scalar(a, exact), parse_scalar(b, exact)) for a, b in raw]
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidInput(f"cannot parse seed: {e}") from None
    from .octagon import SymmetricOctagon

    for s in seeds:
        if SymmetricOctagon(*s).is_degenerate():
            raise InvalidInput(f"seed {s} gives a degenerate octagon")
    return seeds


# -- commands ---------------------------------------------------------------


def cmd_iterate(args, cmdline: str) -> int:
    from .dynamics import orbit
    from .io import orbit_csv

    seeds = _seeds(args)
    if len(seeds) == 1:
        _emit(orbit_csv(orbit(seeds[0], args.n_fwd, args.n_bwd), cmdline), args.out)
        return EXIT_OK
    rows = [f"# {cmdline}", "seed,j,x,y,psi,convex,pole"]
    for i, s in enumerate(seeds):
        body = orbit_csv(orbit(s, args.n_fwd, args.n_bwd), cmdline).splitlines()[2:]
        rows.extend(f"{i},{r}" for r in body)
    _emit("\n".join(rows) + "\n", args.out)
    return EXIT_OK


def cmd_invariant(args, cmdline: str) -> int:
    from .octagon import psi_or_none

    rows = [f"# {cmdline}", "x,y,psi"]
    for x, y in _seeds(args):
        rows.append(f"{fmt_scalar(x)},{fmt_scalar(y)},{fmt_scalar(psi_or_none((x, y)))}")
    _emit("\n".join(rows) + "\n", args.out)
    return EXIT_OK


def cmd_dual(args, cmdline: str) -> int:
    if args.polygon is not None:
        from .polygons import polygon_dual

        try:
            p = polygon_from_json(Path(args.polygon).read_text())
        except (ValueError, KeyError) as e:
            raise InvalidInput(f"bad polygon file: {e}") from None
        _emit(polygon_to_json(polygon_dual(p)) + "\n", args.out)
        return EXIT_OK
    from .octagon import dual_D

    rows = [f"# {cmdline}", "x,y,dx,dy"]
    for s in _seeds(args):
        try:
            d = dual_D(s)
            dx, dy = fmt_scalar(d.x), fmt_scalar(d.y)
        except PoleOfMap:
            dx = dy = "undefined"
        rows.append(f"{fmt_scalar(s[0])},{fmt_scalar(s[1])},{dx},{dy}")
    _emit("\n".join(rows) + "\n", args.out)
    return EXIT_OK


def cmd_levelset(args, cmdline: str) -> int:
    from .cubic import trace_real_curve

    try:
        comps = trace_real_curve(args.lam, resolution=args.resolution)
    except SingularLevel as e:
        raise InvalidInput(str(e)) from None
    _emit(levelset_svg(args.lam, comps, tuple(args.window), cmdline), args.out_svg)
    if args.out_csv:
        _emit(levelset_csv(comps, cmdline), args.out_csv)
    return EXIT_OK


def cmd_escape_map(args, cmdline: str) -> int:
    from .dynamics import convexity_region_scan

    f = convexity_region_scan(tuple(args.window), args.resolution, args.cap)
    _emit(escape_csv(f, cmdline), args.out)
    if args.svg:
        _emit(escape_svg(f, cmdline), args.svg)
    return EXIT_OK


def cmd_verify(args, cmdline: str) -> int:
    from .verify import run_suite

    reports = run_suite(args.suite, args.trials, args.backend)
    ok = all(r.passed for r in reports)
    out = {"command": cmdline, "passed": ok, "suites": [r.as_dict() for r in reports]}
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_poncelet(args, cmdline: str) -> int:
    from .polygons import Conic, deep_diagonal, equivalence_map, is_convex_projective, poncelet_polygon

    if args.n < 5 or not 2 <= args.k < args.n / 2:
        raise InvalidInput("need n >= 5 and 2 <= k < n/2")
    if not 0 <= args.offset < 0.5:
        raise InvalidInput("offset must lie in [0, 0.5)")
    outer = Conic.circle(0, 0, 1)
    res = poncelet_polygon(
        outer, args.n, (0.6, 0.8), lambda r: Conic.circle(args.offset, 0, r), (0.05, 1 - args.offset - 1e-6)
    )
    found = equivalence_map(res.polygon, deep_diagonal(res.polygon, args.k), args.tol)
    report = {
        "command": cmdline,
        "n": args.n,
        "k": args.k,
        "inner_center": [fmt_scalar(args.offset), "0"],
        "inner_radius": fmt_scalar(res.parameter),
        "closure_defect": fmt_scalar(res.closure_defect),
        "convex": is_convex_projective(res.polygon),
        "equivalent_to_image": found is not None,
        "relabeling": None if found is None else {"shift": found[1], "direction": found[2]},
    }
    if args.out_polygon:
        _emit(polygon_to_json(res.polygon) + "\n", args.out_polygon)
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK if found is not None else EXIT_FAIL


def cmd_calibrate(args, cmdline: str) -> int:
    from .polygons import LABEL_MIRROR, LABEL_SHIFT, calibrate_labeling

    cal = calibrate_labeling()
    out = {
        "command": cmdline,
        "shift": cal.shift,
        "mirror": cal.mirror,
        "all_working": [list(w) for w in cal.all_working],
        "matches_frozen": (cal.shift, cal.mirror) == (LABEL_SHIFT, LABEL_MIRROR),
    }
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK if out["matches_frozen"] else EXIT_FAIL


# -- parser -----------------------------------------------------------------


def _add_seed_args(p):
    p.add_argument("--seed", nargs=2, metavar=("X", "Y"), help="seed parameters (decimals or p/q)")
    p.add_argument("--seed-list", metavar="FILE", help="file with one 'x y' seed per line")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="pentagram", description="Deep-diagonal maps and the (8,3) octagon system.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=("rational", "float"), default="float")
    sub = top.add_subparsers(dest="command", required=True)
    add = lambda name, **kw: sub.add_parser(name, parents=[common], **kw)  # noqa: E731

    p = add("iterate", help="orbit of P(x, y) under T3 as CSV")
    _add_seed_args(p)
    p.add_argument("--n-fwd", type=int, default=10)
    p.add_argument("--n-bwd", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_iterate)

    p = add("invariant", help="the invariant psi at seeds")
    _add_seed_args(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_invariant)

    p = add("dual", help="dual octagon parameters, or the dual of a JSON polygon")
    _add_seed_args(p)
    p.add_argument("--polygon", metavar="FILE", help="polygon JSON file")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_dual)

    p = add("levelset", help="trace the real level set psi = lambda")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--resolution", type=int, default=2048)
    p.add_argument("--window", type=float, nargs=4, default=(-3.0, 3.0, -3.0, 3.0), metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    p.add_argument("--out-svg", required=True)
    p.add_argument("--out-csv", default=None)
    p.set_defaults(func=cmd_levelset)

    p = add("escape-map", help="forward/backward convexity escape times on a grid")
    p.add_argument("--window", type=float, nargs=4, default=(0.0, 1.25, 0.0, 1.25), metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    p.add_argument("--resolution", type=int, default=128)
    p.add_argument("--cap", type=int, default=10_000)
    p.add_argument("--out", default=None)
    p.add_argument("--svg", default=None)
    p.set_defaults(func=cmd_escape_map)

    p = add("verify", help="run a verification suite")
    p.add_argument("suite", choices=("identities", "cubic", "escape", "poncelet", "calibration", "all"))
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = add("poncelet", help="off-centre Poncelet polygon and its T_k image")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--offset", type=float, default=0.1)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", default=None)
    p.add_argument("--out-polygon", default=None)
    p.set_defaults(func=cmd_poncelet)

    p = add("calibrate", help="find the labeling matching the closed form")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_calibrate)
    return top


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK
    cmdline = shlex.join(["pentagram", *argv])
    try:
        return args.func(args, cmdline)
    except (InvalidInput, DegenerateInput, UndefinedOnAxes, SingularLevel) as e:
        print(f"pentagram: error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except PentagramError as e:
        print(f"pentagram: failed: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
