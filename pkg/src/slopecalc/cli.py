"""Command-line front end.

Exit codes: 0 success, 2 usage or schema error, 3 semantic mismatch
(levels, dimensions, divisibility), 4 insufficient p-adic precision,
1 when ``verify`` finds a failing check, 130 when interrupted.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import re
import sys
from fractions import Fraction

from . import filtered, isocrystal, mumford, semilinear
from .errors import (DegenerateHullError, DimensionMismatchError, IndivisibleMultiplicityError,
                     InvalidDatumError, LevelMismatchError, PrecisionError, SchemaError,
                     SearchSpaceError)
from .isocrystal import SlopeData
from .polygon import INF, lower_hull
from .render import render

log = logging.getLogger("slopecalc")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3
EXIT_PRECISION = 4


class UsageError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2)


def _load_json(arg: str):
    """Inline JSON if the argument looks like a document, else a file path."""
    text = arg
    if not arg.lstrip().startswith(("{", "[")):
        try:
            with open(arg) as fh:
                text = fh.read()
        except OSError as exc:
            raise SchemaError(f"cannot read {arg}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON in {arg!r}: {exc.msg}") from None


def _emit(polys: list[tuple[str, SlopeData]], fmt: str, doc) -> str:
    if fmt == "json":
        return _dumps(doc) + "\n"
    if fmt == "svg":
        if len(polys) != 1:
            raise UsageError("svg output renders one polygon; select it with --case or --index")
        return render(polys[0][1].slopes, "svg")
    out = []
    for label, sd in polys:
        out.append(f"{label}: {sd}")
        out.append(render(sd.slopes, "ascii"))
    return "\n".join(out)


def _figure(args, polys: list[tuple[str, SlopeData]], title: str):
    if getattr(args, "figure", None):
        from .plotting import plot_polygons

        plot_polygons([sd.slopes for _, sd in polys], [label for label, _ in polys],
                      args.figure, title=title)
        log.info("wrote figure %s", args.figure)


# -- subcommands ---------------------------------------------------------------

def cmd_classify(args) -> str:
    datum = mumford.MumfordDatum(args.d, args.r, args.eps)
    ss, mu = mumford.classify(datum)
    polys = [("supersingular", ss), ("mu_ordinary", mu)]
    if args.case != "both":
        polys = [pair for pair in polys if pair[0] == args.case]
    doc = {"datum": datum.to_json()}
    doc.update({label: sd.to_json() for label, sd in polys})
    _figure(args, polys, f"d={datum.d}, r={datum.r}, eps={datum.eps}")
    return _emit(polys, args.format, doc)


def cmd_tensor(args) -> str:
    a = SlopeData.from_json(_load_json(args.a))
    b = SlopeData.from_json(_load_json(args.b))
    t = isocrystal.tensor(a, b)
    _figure(args, [("a", a), ("b", b), ("a (x) b", t)], "tensor product")
    return _emit([("tensor", t)], args.format, t.to_json())


_POINT = re.compile(r"\(\s*(-?\d+)\s*,\s*([^()\s,]+)\s*\)")


def parse_points(text: str) -> list[tuple]:
    points, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _POINT.match(text, pos)
        if not m:
            raise SchemaError(f"cannot parse points near {text[pos:pos + 20]!r}")
        raw = m.group(2)
        if raw.lower() in ("inf", "infinity", "+inf"):
            value = INF
        else:
            try:
                value = Fraction(raw)
            except ValueError:
                raise SchemaError(f"bad value {raw!r}") from None
        points.append((int(m.group(1)), value))
        pos = m.end()
        while pos < len(text) and text[pos] in ", ;":
            pos += 1
    if len(points) < 2:
        raise SchemaError("need at least two points")
    return points


def cmd_hull(args) -> str:
    try:
        hull = lower_hull(parse_points(args.points))
    except DegenerateHullError as exc:
        raise SchemaError(str(exc)) from None
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from None
    sd = SlopeData(hull)
    _figure(args, [("hull", sd)], "lower hull")
    return _emit([("hull", sd)], args.format, hull.to_json())


def cmd_charpoly_newton(args) -> str:
    phi = semilinear.PhiMatrix.from_json(_load_json(args.matrix), precision=args.precision)
    sd = semilinear.newton_slopes(phi)
    _figure(args, [("newton", sd)], "Newton polygon")
    return _emit([("newton", sd)], args.format, sd.to_json())


def cmd_enumerate(args) -> str:
    closed = filtered.enumerate_v1_newton(args.r)
    polys = [(f"closed[{i}]", sd) for i, sd in enumerate(closed)]
    doc = {"r": args.r, "closed_form": [sd.to_json() for sd in closed]}
    if args.brute:
        hodge = filtered.v1_hodge(args.r)
        brute = filtered.brute_enumerate(2 * args.r, hodge, args.max_den)
        shaped = [sd for sd in brute if filtered.two_slope_shape(sd, args.r)]
        closed_keys = {sd.slopes for sd in closed}
        shaped_keys = {sd.slopes for sd in shaped}
        doc["brute"] = [sd.to_json() for sd in brute]
        doc["diff"] = {
            "closed_not_in_brute": [sd.to_json() for sd in closed if sd.slopes not in shaped_keys],
            "brute_shaped_not_in_closed": [sd.to_json() for sd in shaped
                                           if sd.slopes not in closed_keys],
            "brute_outside_shape": [sd.to_json() for sd in brute
                                    if not filtered.two_slope_shape(sd, args.r)],
        }
        polys += [(f"brute[{i}]", sd) for i, sd in enumerate(brute)]
    if args.index is not None:
        if not 0 <= args.index < len(polys):
            raise UsageError(f"--index must be in 0..{len(polys) - 1}")
        polys = [polys[args.index]]
    _figure(args, polys, f"factor Newton polygons, r={args.r}")
    return _emit(polys, args.format, doc)


def run_verification(d_max: int, seed: int = 0):
    """Yield ``(label, passed, detail)`` rows for every check of the suite."""
    for d in range(1, d_max + 1):
        for r in range(1, d + 1):
            for eps in (0, 1):
                rep = mumford.verify_classification(mumford.MumfordDatum(d, r, eps))
                for c in rep.checks:
                    yield f"d={d} r={r} eps={eps}: {c.name}", c.passed, c.detail
    for r in range(1, min(d_max, 4) + 1):
        closed = filtered.enumerate_v1_newton(r)
        brute = filtered.brute_enumerate(2 * r, filtered.v1_hodge(r), 2 * r)
        shaped = sorted((sd for sd in brute if filtered.two_slope_shape(sd, r)),
                        key=lambda sd: sd.slopes.mult(0))
        yield f"r={r}: closed-form factor slopes match oracle", shaped == closed, ""
    rng = random.Random(seed)
    for r in range(1, min(d_max, 3) + 1):
        ctx = semilinear.arith.context_new(3, r, 64)
        for trial in range(3):
            n = rng.randint(1, 2)
            factors, block_slopes = semilinear.random_block_factors(ctx, n, rng)
            got = semilinear.newton_slopes(semilinear.block_phi_from_factors(factors))
            want = isocrystal.induce_from_power(block_slopes, r)
            yield f"r={r} trial {trial}: block phi slopes = induced slopes", got == want, str(got)


def cmd_verify(args):
    rows = []
    total = failed = 0
    for label, passed, detail in run_verification(args.d_max, args.seed):
        total += 1
        failed += not passed
        rows.append({"check": label, "passed": passed, "detail": detail})
    if args.figure:
        polys = []
        for r in range(1, args.d_max + 1):
            ss, mu = mumford.classify(mumford.MumfordDatum(args.d_max, r, 0))
            if r == 1:
                polys.append(("supersingular", ss))
            polys.append((f"mu-ordinary r={r}", mu))
        _figure(args, polys, f"Newton polygons, d={args.d_max}, eps=0")
    data = sum(1 for d in range(1, args.d_max + 1) for _ in range(d)) * 2
    if args.format == "json":
        text = _dumps({"data": data, "checks": rows, "passed": total - failed, "failed": failed}) + "\n"
    else:
        lines = [f"{'PASS' if r['passed'] else 'FAIL'}  {r['check']}" for r in rows]
        lines.append(f"{data} data checked; {total - failed}/{total} checks passed")
        text = "\n".join(lines) + "\n"
    return text, (EXIT_OK if failed == 0 else EXIT_FAIL)


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("--figure", metavar="PATH", help="also write a matplotlib figure to PATH")

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "ascii", "svg"), default="json")

    parser = argparse.ArgumentParser(prog="slopecalc", description="Slope calculus of filtered phi-modules.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common, fmt],
                       help="Newton polygons for abelian varieties of Mumford's type")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--eps", type=int, required=True)
    p.add_argument("--case", choices=("both", "supersingular", "mu_ordinary"), default="both")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tensor", parents=[common, fmt], help="tensor product of two slope data")
    p.add_argument("a", help="JSON file or inline JSON")
    p.add_argument("b", help="JSON file or inline JSON")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("hull", parents=[common, fmt], help="lower convex hull of (i,v) points")
    p.add_argument("points", help='e.g. "(0,1),(1,inf),(2,0)"')
    p.set_defaults(func=cmd_hull)

    p = sub.add_parser("charpoly-newton", parents=[common, fmt],
                       help="Newton slopes of a sigma-linear matrix")
    p.add_argument("matrix", help="matrix JSON file or inline JSON")
    p.add_argument("--precision", type=int, help="override the document's N")
    p.set_defaults(func=cmd_charpoly_newton)

    p = sub.add_parser("enumerate", parents=[common, fmt],
                       help="Newton slopes of the two-dimensional factor")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--brute", action="store_true", help="also run the exhaustive oracle")
    p.add_argument("--max-den", type=int, default=None)
    p.add_argument("--index", type=int, default=None, help="select one polygon (needed for svg)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="run the classification checks")
    p.add_argument("--d-max", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s: %(message)s")
    try:
        if args.command == "enumerate" and args.r < 1:
            raise UsageError("--r must be positive")
        if args.command == "verify" and args.d_max < 1:
            raise UsageError("--d-max must be positive")
        result = args.func(args)
        text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
        sys.stdout.write(text)
        sys.stdout.flush()
        return code
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return 130
    except PrecisionError as exc:
        hint = f"; retry with --precision {exc.suggested_precision}" if exc.suggested_precision else ""
        print(f"precision error: {exc}{hint}", file=sys.stderr)
        return EXIT_PRECISION
    except (LevelMismatchError, DimensionMismatchError, IndivisibleMultiplicityError) as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (UsageError, SchemaError, InvalidDatumError, SearchSpaceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
