"""Command-line interface: ``sol3 verify | sample | curvature | selftest``.

Exit codes: 0 pass, 1 quantitative failure, 2 usage/parse/domain error.

Curve specifications are ``kind:p1,p2,...``:

    const:c          affine:a,b        poly:c0,c1,...  (ascending powers)
    log:lam,mu       neglog:lam,mu     scherk:c[,a]
"""

import argparse
import json
import math
import sys

from . import families as fam
from . import sampling, solutions, surface
from .errors import CurveSpecError, Sol3Error, SingularPointError

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_ARITY = {
    "const": (1, 1),
    "affine": (2, 2),
    "poly": (1, None),
    "log": (2, 2),
    "neglog": (2, 2),
    "scherk": (1, 2),
}


def parse_curve(text):
    """Parse a curve specification into a CurveFn."""
    kind, sep, rest = text.partition(":")
    key = kind.strip().lower()
    if key not in _ARITY:
        raise CurveSpecError(f"unknown curve kind {kind.strip()!r}", text, 0)
    values = []
    if sep:
        offset = len(kind) + 1
        for token in rest.split(","):
            try:
                value = float(token)
            except ValueError:
                raise CurveSpecError(f"bad number {token.strip()!r}", text, offset) from None
            if not math.isfinite(value):
                raise CurveSpecError(f"non-finite number {token.strip()!r}", text, offset)
            values.append(value)
            offset += len(token) + 1
    lo, hi = _ARITY[key]
    if len(values) < lo or (hi is not None and len(values) > hi):
        expected = str(lo) if lo == hi else f"{lo}{'+' if hi is None else f'-{hi}'}"
        raise CurveSpecError(f"{key} takes {expected} parameter(s), got {len(values)}",
                             text, len(kind))
    if key == "const":
        return fam.constant(*values)
    if key == "affine":
        return fam.affine(*values)
    if key == "poly":
        return fam.polynomial(values)
    if key == "log":
        return fam.log_curve(*values)
    if key == "neglog":
        return fam.neg_log_curve(*values)
    try:
        state = solutions.ScherkState(*values[:1], a=values[1] if len(values) > 1 else 1.0)
    except Sol3Error as exc:
        raise CurveSpecError(str(exc), text, len(kind) + 1) from None
    return solutions.scherk_curve(state)


def parse_solution(name, assignments):
    params, f = {}, None
    for item in assignments:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise CurveSpecError("expected key=value", item, 0)
        if key == "f":
            f = parse_curve(value)
            continue
        try:
            params[key] = float(value)
        except ValueError:
            raise CurveSpecError(f"bad number {value!r}", item, len(key) + 1) from None
    return solutions.SolutionSpec(name, params, f)


def _immersion(args):
    if args.solution:
        if args.type or args.f or args.g:
            raise CurveSpecError("--solution cannot be combined with --type/--f/--g")
        return solutions.materialize(parse_solution(args.solution, args.params))
    if args.params:
        raise CurveSpecError("key=value parameters require --solution", args.params[0], 0)
    if not (args.type and args.f and args.g):
        raise CurveSpecError("give --solution NAME, or all of --type, --f and --g")
    try:
        kind = fam.TranslationType.parse(args.type)
    except ValueError as exc:
        raise CurveSpecError(str(exc), args.type, 0) from None
    return fam.build_surface(kind, parse_curve(args.f), parse_curve(args.g)).immersion


def _grid(args):
    return sampling.GridSpec(tuple(args.s_range), tuple(args.t_range), args.ns, args.nt)


def _emit_json(path, document):
    text = json.dumps(document, indent=2, sort_keys=True) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_verify(args):
    imm = _immersion(args)
    report = sampling.verify(imm, _grid(args), args.tol)
    if args.json != "-":
        print(imm.label)
        print(report.format())
    if args.json:
        _emit_json(args.json, {"surface": imm.label, **report.as_dict()})
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_sample(args):
    imm = _immersion(args)
    grid = _grid(args)
    if args.format == "obj":
        text = sampling.obj_text(imm, grid, title=imm.label)
    else:
        text = sampling.csv_text(imm, grid)
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_PASS


def cmd_curvature(args):
    imm = _immersion(args)
    try:
        report = surface.mean_curvature(imm, args.s, args.t)
    except SingularPointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    fd = float(surface.fd_mean_curvature(imm, args.s, args.t))
    h = float(report.H)
    rows = {
        "H": h,
        "residual": float(report.residual),
        "norm_N": float(report.norm_N),
        "EG-F^2": float(report.det1),
        "H_fd": fd,
        "H_fd-H": fd - h,
    }
    if args.json != "-":
        print(imm.label)
        print(f"(s, t) = ({args.s!r}, {args.t!r})")
        for key, value in rows.items():
            print(f"{key:9s} {value!r}")
    if args.json:
        _emit_json(args.json, {"surface": imm.label, "s": args.s, "t": args.t, **rows})
    return EXIT_PASS


def cmd_selftest(args):
    from . import selftest

    results = selftest.run_all(tol=args.tol)
    if args.json != "-":
        print(selftest.format_table(results))
    if args.json:
        _emit_json(args.json, [r.as_dict() for r in results])
    return EXIT_PASS if all(r.passed for r in results) else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(prog="sol3", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def surface_args(p):
        p.add_argument("--solution", choices=list(solutions.CATALOG), help="catalog entry")
        p.add_argument("params", nargs="*", metavar="KEY=VALUE",
                       help="catalog parameters, e.g. a=2 c=1 (type3-logt takes f=CURVE)")
        p.add_argument("--type", help="translation type I..VI")
        p.add_argument("--f", help="first curve, e.g. affine:1,0")
        p.add_argument("--g", help="second curve, e.g. log:0.5,0")

    def grid_args(p):
        p.add_argument("--s-range", nargs=2, type=float, default=(-2.0, 2.0), metavar=("LO", "HI"))
        p.add_argument("--t-range", nargs=2, type=float, default=(-2.0, 2.0), metavar=("LO", "HI"))
        p.add_argument("--ns", type=int, default=50)
        p.add_argument("--nt", type=int, default=50)

    p = sub.add_parser("verify", help="check |H| < tol over a grid")
    surface_args(p)
    grid_args(p)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--json", metavar="PATH", help="also write a JSON report ('-' for stdout only)")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("sample", help="export a grid as OBJ mesh or CSV")
    surface_args(p)
    grid_args(p)
    p.add_argument("--format", choices=("obj", "csv"), default="obj")
    p.add_argument("--out", required=True)
    p.set_defaults(run=cmd_sample)

    p = sub.add_parser("curvature", help="curvature report at one parameter point")
    surface_args(p)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(run=cmd_curvature)

    p = sub.add_parser("selftest", help="run the embedded acceptance checks")
    p.add_argument("--tol", type=float, default=None,
                   help="override every check tolerance with this value")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(run=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        return args.run(args)
    except Sol3Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
