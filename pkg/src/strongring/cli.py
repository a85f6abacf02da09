"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core.complex import SimplicialComplex
from .core.parser import parse_ring_expression
from .core.ring import RingElement
from .dynamics import lax_flow
from .errors import (
    BadParameter,
    BadSignature,
    ClosureViolation,
    EmptySetMember,
    EmptyTerm,
    ExpressionSyntaxError,
    NotASingleTerm,
    StrongRingError,
    TooLarge,
    UnknownGenerator,
    UnknownSuite,
    VertexOutOfRange,
)
from .exact_linalg import write_matrix_market
from .invariants import invariant_report
from .operators import operator_bundle, operator_for_tag
from .spectral import SPECTRUM_CAP, barycentric_limit_experiment, spectrum_for_tag
from .suites import SuiteOptions, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
INVERSE_CAP = 600
OPERATORS = ("L", "H", "D", "d", "kirchhoff")
USAGE_ERRORS = (
    ExpressionSyntaxError,
    UnknownGenerator,
    UnknownSuite,
    BadParameter,
    BadSignature,
    NotASingleTerm,
    EmptyTerm,
    ClosureViolation,
    EmptySetMember,
    VertexOutOfRange,
    OSError,
)


def _element(text: str) -> RingElement:
    return parse_ring_expression(text, base_dir=Path.cwd())


def _complex(text: str) -> SimplicialComplex:
    t = _element(text).single_term()
    if len(t.factors) != 1:
        raise NotASingleTerm(f"{text!r} is a product, expected a single complex")
    return t.factors[0]


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_invariants(args) -> int:
    e = _element(args.expr)
    if e.cell_count > args.cap:
        raise TooLarge(f"element has {e.cell_count} cells, cap is {args.cap}")
    report = invariant_report(e, betti=args.betti, wu_orders=tuple(args.wu or [2]), with_curvature=args.curvature)
    d = report.to_dict()
    print(json.dumps(d, separators=(",", ":")) if args.json else json.dumps(d, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    opts = SuiteOptions(seed=args.seed, count=args.count, tol=args.tol, n=args.n, d=args.d, max_cells=args.max_cells)
    report = run_suite(args.suite, opts)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2, default=str))
    else:
        print("\n".join(report.lines()))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_export(args) -> int:
    e = _element(args.expr)
    if e.cell_count > args.cap:
        raise TooLarge(f"element has {e.cell_count} cells, cap is {args.cap}")
    exp = operator_for_tag(e, args.op)
    write_matrix_market(args.path, exp.matrix, exp.descriptors, comment=f"{args.op} of {args.expr}")
    print(f"wrote {exp.matrix.shape[0]}x{exp.matrix.shape[1]} {args.op} to {args.path}")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    spec = spectrum_for_tag(_element(args.expr), args.op, cap=args.cap)
    _emit(spec.to_csv(), args.out)
    return EXIT_OK


def cmd_limit(args) -> int:
    ex = barycentric_limit_experiment(_complex(args.expr), args.levels, args.op, cap=args.cap)
    _emit(json.dumps(ex.to_dict(), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_flow(args) -> int:
    t = _element(args.expr).single_term()
    if t.size > args.cap:
        raise TooLarge(f"term has {t.size} cells, cap is {args.cap}")
    bound = None if args.no_drift_check else args.tol
    traj = lax_flow(operator_bundle(t), args.beta, args.t_end, args.dt, drift_bound=bound)
    _emit(traj.to_csv(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="strongring", description="Arithmetic and spectral invariants of the strong ring.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", help="invariant report of a ring expression")
    s.add_argument("expr")
    s.add_argument("--betti", action="store_true", help="compute Betti numbers (exact ranks)")
    s.add_argument("--wu", type=int, action="append", metavar="K", help="Wu characteristic order (repeatable)")
    s.add_argument("--curvature", action="store_true", help="include the curvature map")
    s.add_argument("--json", action="store_true", help="compact single-line JSON")
    s.add_argument("--cap", type=int, default=SPECTRUM_CAP)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("verify", help="run a seeded verification suite")
    s.add_argument("suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--tol", type=float, default=1e-8)
    s.add_argument("--n", type=int, default=60, help="torus side for the mass-gap suite")
    s.add_argument("--d", type=int, default=2, help="torus dimension for the mass-gap suite")
    s.add_argument("--max-cells", type=int, default=50)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("export", help="write an operator as Matrix Market")
    s.add_argument("expr")
    s.add_argument("op", choices=OPERATORS)
    s.add_argument("path")
    s.add_argument("--cap", type=int, default=SPECTRUM_CAP)
    s.set_defaults(func=cmd_export)

    s = sub.add_parser("spectrum", help="eigenvalues as CSV")
    s.add_argument("expr")
    s.add_argument("op", nargs="?", default="L")
    s.add_argument("--cap", type=int, default=SPECTRUM_CAP)
    s.add_argument("--out")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("limit", help="density of states under Barycentric refinement")
    s.add_argument("expr")
    s.add_argument("--levels", type=int, default=3)
    s.add_argument("--op", default="kirchhoff")
    s.add_argument("--cap", type=int, default=SPECTRUM_CAP)
    s.add_argument("--out")
    s.set_defaults(func=cmd_limit)

    s = sub.add_parser("flow", help="isospectral deformation of the Dirac operator, diagnostics CSV")
    s.add_argument("expr")
    s.add_argument("--beta", type=float, default=0.0)
    s.add_argument("--t-end", type=float, default=5.0)
    s.add_argument("--dt", type=float, default=1e-3)
    s.add_argument("--tol", type=float, default=1e-6, help="allowed relative spectral drift")
    s.add_argument("--no-drift-check", action="store_true")
    s.add_argument("--cap", type=int, default=INVERSE_CAP)
    s.add_argument("--out")
    s.set_defaults(func=cmd_flow)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StrongRingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
