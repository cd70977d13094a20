"""Command-line front end.

Exit codes: 0 success or a true verdict, 1 a false verdict or failing suite,
2 bad input (including parse errors and budget limits), 3 an internal
theorem check failed.
"""

import argparse
import sys

from tropmat.bits import format_set
from tropmat.catalog import enumerate_matroids
from tropmat.errors import BudgetExceeded, InputError, ParseError, TheoremViolation
from tropmat.formats import (
    dumps,
    fiber_report_to_json,
    lattice_to_dot,
    lattice_to_json,
    load_map,
    load_matrix,
    load_matroid,
    matrix_token,
    matroid_to_json,
    matroid_to_text,
    suite_report_to_json,
)
from tropmat.exterior import maximal_minors
from tropmat.matroid import is_connected
from tropmat.morphisms import MultiMap, is_multivalued_strong, is_strong_map
from tropmat.suites import run_suite, suite_names
from tropmat.transversal import (
    is_fundamental_transversal,
    is_transversal,
    maximal_presentation,
    minimal_presentations,
    stiefel_fiber,
)
from tropmat.tropical import stable_sum_matroid, sufficiently_disjoint

OK, FALSE, BAD_INPUT, VIOLATION = 0, 1, 2, 3


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _with_path(path, fn):
    try:
        return fn(_read(path))
    except ParseError as exc:
        raise ParseError(f"{path}: {exc.message}", exc.line, exc.column) from None


def _sets(masks, n):
    return " ".join(format_set(x, n) for x in masks) or "(none)"


def cmd_info(args, out):
    m = _with_path(args.matroid, load_matroid)
    print(f"ground: {m.n}", file=out)
    print(f"rank: {m.rank}", file=out)
    print(f"bases: {len(m.bases)}", file=out)
    print(f"circuits: {len(m.circuits)} [{_sets(m.circuits, m.n)}]", file=out)
    print(f"cocircuits: {len(m.cocircuits)} [{_sets(m.cocircuits, m.n)}]", file=out)
    print(f"flats: {len(m.flats)}", file=out)
    print(f"connected: {'yes' if is_connected(m) else 'no'}", file=out)
    try:
        tr = is_transversal(m)
        print(f"transversal: {'yes' if tr else 'no'}", file=out)
        ft = is_fundamental_transversal(m)
        print(f"fundamental: {'yes' if ft else 'no'}", file=out)
    except BudgetExceeded as exc:
        print(f"transversal: unknown ({exc})", file=out)
    return OK


def cmd_verify(args, out):
    names = suite_names() if args.suite == "all" else [args.suite]
    reports = [run_suite(s, nmax=args.nmax, sample=args.sample, seed=args.seed) for s in names]
    for rep in reports:
        print(rep.summary(), file=out)
    if args.json:
        payload = [suite_report_to_json(r) for r in reports]
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(dumps(payload[0] if len(payload) == 1 else payload))
    return OK if all(r.passed for r in reports) else FALSE


def cmd_lattice(args, out):
    m = _with_path(args.matroid, load_matroid)
    if args.format == "dot":
        out.write(lattice_to_dot(m))
    else:
        out.write(dumps(lattice_to_json(m)))
    return OK


def cmd_presentation(args, out):
    a = _with_path(args.matrix, load_matrix)
    if args.mode == "max":
        print(matrix_token(maximal_presentation(a)), file=out)
    elif args.mode == "min":
        for b in minimal_presentations(a):
            print(matrix_token(b), file=out)
    else:
        rep = stiefel_fiber(maximal_minors(a), a.rows, a.cols)
        out.write(dumps(fiber_report_to_json(rep)))
    return OK


def cmd_strongmap(args, out):
    f = _with_path(args.map, load_map)
    m = _with_path(args.source, load_matroid)
    n = _with_path(args.target, load_matroid)
    if isinstance(f, MultiMap):
        verdict = is_multivalued_strong(f, m, n)
        kind = "multivalued strong map"
    else:
        verdict = is_strong_map(f, m, n)
        kind = "strong map"
    print(f"{kind}: {'yes' if verdict else 'no'}", file=out)
    return OK if verdict else FALSE


def cmd_stablesum(args, out):
    m = _with_path(args.m, load_matroid)
    n = _with_path(args.n, load_matroid)
    if not sufficiently_disjoint(m, n):
        print("not sufficiently disjoint: no stable sum", file=out)
        return FALSE
    p = stable_sum_matroid(m, n)
    if args.format == "json":
        out.write(dumps(matroid_to_json(p)))
    else:
        out.write(matroid_to_text(p))
    return OK


def cmd_catalog(args, out):
    sl = enumerate_matroids(args.n)
    payload = {
        "n": sl.n,
        "provenance": sl.provenance,
        "count": len(sl),
        "counts_by_rank": {str(k): v for k, v in sorted(sl.counts.items())},
        "matroids": [matroid_to_json(m) for m in sl],
    }
    text = dumps(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {len(sl)} matroids on {sl.n} elements to {args.out}", file=out)
    else:
        out.write(text)
    return OK


def build_parser():
    p = argparse.ArgumentParser(prog="tropmat", description="Matroids over the Boolean semifield.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", help="summary of a matroid file")
    s.add_argument("matroid")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("verify", help="run a theorem suite")
    s.add_argument("suite", help="suite name or 'all': " + ", ".join(suite_names()))
    s.add_argument("--nmax", type=int, default=None)
    s.add_argument("--sample", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", metavar="PATH", help="write the suite report as JSON")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("lattice", help="export the lattice of flats")
    s.add_argument("matroid")
    s.add_argument("--format", choices=("dot", "json"), default="dot")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("presentation", help="extremes and fibers of a B-matrix")
    s.add_argument("mode", choices=("max", "min", "fiber"))
    s.add_argument("matrix")
    s.set_defaults(func=cmd_presentation)

    s = sub.add_parser("strongmap", help="is a map strong between two matroids")
    s.add_argument("map")
    s.add_argument("source")
    s.add_argument("target")
    s.set_defaults(func=cmd_strongmap)

    s = sub.add_parser("stablesum", help="stable sum of two matroids on a common ground set")
    s.add_argument("m")
    s.add_argument("n")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_stablesum)

    s = sub.add_parser("catalog", help="all labeled matroids on n elements")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args, out)
    except TheoremViolation as exc:
        print(f"theorem check failed: {exc}", file=sys.stderr)
        return VIOLATION
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
