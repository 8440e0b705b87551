"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from typing import Sequence

from hermquad import error as err
from hermquad.exact import as_fraction
from hermquad.export import RuleExport, format_fraction
from hermquad.functions import FIGURE_FUNCTIONS, get, registry
from hermquad.hermite import hermite_weights
from hermquad.params import alpha_coefficients, solve_theta
from hermquad.verify import run_checks

MAX_N_ENV = "HERMQUAD_MAX_N"
DEFAULT_MAX_N = 16
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ORDER_FLOOR = 1e-14


class UsageError(Exception):
    pass


def _max_n() -> int:
    raw = os.environ.get(MAX_N_ENV)
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{MAX_N_ENV} must be an integer, got {raw!r}") from None


def _check_n(n: int) -> int:
    if n < 1:
        raise UsageError(f"--n must be at least 1, got {n}")
    cap = _max_n()
    if n > cap:
        raise UsageError(f"--n {n} exceeds the cap {cap} (set {MAX_N_ENV} to raise it)")
    return n


def _exact(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact number: {text!r}") from None


def _interval(a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    if a == b:
        raise UsageError("--a and --b must differ")
    return a, b


def fmt_float(x: float) -> str:
    return f"{x:.17g}"


def _table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines) + "\n"


def _csv(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_weights(args, out) -> int:
    n = _check_n(args.n)
    a, b = _interval(args.a, args.b)
    w = hermite_weights(n, a, b)
    if args.json:
        doc = {
            "n": n, "a": format_fraction(a), "b": format_fraction(b),
            "w_a": [format_fraction(x) for x in w.w_a],
            "w_b": [format_fraction(x) for x in w.w_b],
        }
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        rows = [[str(j), str(wa), str(wb)] for j, (wa, wb) in enumerate(zip(w.w_a, w.w_b))]
        out.write(_table(["j", "w_a", "w_b"], rows))
    return EXIT_OK


def cmd_theta(args, out) -> int:
    n = _check_n(args.n)
    a, b = _interval(args.a, args.b)
    theta = solve_theta(n, a, b)
    w = hermite_weights(n, a, b)
    alphas = alpha_coefficients(theta, a, b)
    match_a = alphas.alpha_a == w.w_a
    match_b = alphas.alpha_b == w.w_b
    ok = match_a and match_b
    if args.json:
        doc = RuleExport.build(n, a, b).to_dict()
        doc["match"] = {"a_side": match_a, "b_side": match_b}
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        rows = [["c", str(theta.c)]]
        rows += [[f"delta_{i}", str(d)] for i, d in reversed(list(enumerate(theta.deltas)))]
        out.write(_table(["parameter", "value"], rows))
        out.write(f"match a-side: {'PASS' if match_a else 'FAIL'}\n")
        out.write(f"match b-side: {'PASS' if match_b else 'FAIL'}\n")
        out.write(f"match: {'PASS' if ok else 'FAIL'}\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export(args, out) -> int:
    n = _check_n(args.n)
    a, b = _interval(args.a, args.b)
    out.write(RuleExport.build(n, a, b).to_json())
    return EXIT_OK


def cmd_verify(args, out) -> int:
    n_max = _check_n(args.n_max)
    checks = run_checks(n_max, seed=args.seed, inject_fault=args.inject_fault)
    failed = [c for c in checks if not c.passed]
    if args.json:
        doc = {
            "n_max": n_max,
            "passed": not failed,
            "checks": [
                {"name": c.name, "n": c.n, "a": format_fraction(c.interval[0]),
                 "b": format_fraction(c.interval[1]), "passed": c.passed}
                for c in checks
            ],
        }
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        for c in checks:
            out.write(c.line() + "\n")
        out.write(f"{len(checks) - len(failed)}/{len(checks)} checks passed\n")
        out.write("ALL PASS\n" if not failed else "FAIL\n")
    return EXIT_OK if not failed else EXIT_FAIL


def _lookup(name: str):
    try:
        return get(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _float_interval(f, a, b) -> tuple[float, float]:
    a = f.default_interval[0] if a is None else float(a)
    b = f.default_interval[1] if b is None else float(b)
    if not a < b:
        raise UsageError("need --a < --b")
    if not f.in_domain(a, b):
        raise UsageError(f"[{a}, {b}] is outside the domain of {f.name}")
    return a, b


def cmd_integrate(args, out) -> int:
    f = _lookup(args.function)
    n = _check_n(args.n)
    if not f.has_order(n):
        raise UsageError(
            f"{f.name} has derivatives only up to order {f.max_smooth_order}; "
            f"--n {n} needs order {n}"
        )
    a, b = _float_interval(f, args.a, args.b)
    report = err.error_report(f, n, a, b, tol=args.tol)
    gap = abs(report.kernel_error - report.true_error)
    consistent = gap <= 10 * args.tol
    if args.json:
        doc = report.as_dict()
        doc["representation_gap"] = gap
        doc["consistent"] = consistent
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        d = report.as_dict()
        rows = [[k, fmt_float(v) if isinstance(v, float) else str(v)]
                for k, v in d.items() if k != "note"]
        rows.append(["representation_gap", fmt_float(gap)])
        out.write(_table(["field", "value"], rows))
        if report.note:
            out.write(f"note: {report.note}\n")
        out.write(
            f"error representation: {'consistent' if consistent else 'INCONSISTENT'} "
            f"(|kernel_error - true_error| = {gap:.3g}, limit {10 * args.tol:.3g})\n"
        )
    return EXIT_OK if consistent else EXIT_FAIL


def figure_rows(n: int = 2, a: float = 0.0, b: float = 1.0, tol: float = err.DEFAULT_TOL):
    rows = []
    for name in FIGURE_FUNCTIONS:
        f = get(name)
        quad = err.composite_rule(f, n, a, b, 1)
        true_error = err.reference_integral(f, a, b, tol) - quad
        orig, impr = err.bounds(f, n, a, b)
        rows.append((f.label, abs(true_error), orig, impr))
    return rows


def cmd_figure(args, out) -> int:
    n = _check_n(args.n)
    rows = figure_rows(n, args.a, args.b, args.tol)
    text = _csv(
        ["function", "true_error_abs", "bound_original", "bound_improved"],
        [[label, fmt_float(e), fmt_float(o), fmt_float(i)] for label, e, o, i in rows],
    )
    if args.output in (None, "-"):
        out.write(text)
    else:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    ok = all(i <= o and e <= i + 1e-10 for _, e, o, i in rows)
    return EXIT_OK if ok else EXIT_FAIL


def convergence_rows(f, n: int, a: float, b: float, pieces: Sequence[int], tol: float):
    ref = err.reference_integral(f, a, b, tol)
    rows = []
    prev = None
    for k in pieces:
        e = abs(ref - err.composite_rule(f, n, a, b, k))
        order = None
        if prev is not None and prev[1] > ORDER_FLOOR and e > ORDER_FLOOR:
            order = math.log(prev[1] / e) / math.log(k / prev[0])
        rows.append((k, e, order))
        prev = (k, e)
    return rows


def _pieces(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad pieces list {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("pieces must be positive integers")
    return vals


def cmd_convergence(args, out) -> int:
    f = _lookup(args.function)
    n = _check_n(args.n)
    if not f.has_order(n - 1):
        raise UsageError(f"{f.name} lacks the derivatives the n = {n} rule needs")
    a, b = _float_interval(f, args.a, args.b)
    rows = convergence_rows(f, n, a, b, args.pieces, args.tol)
    out.write(_csv(
        ["pieces", "abs_error", "observed_order"],
        [[str(k), fmt_float(e), "n/a" if o is None else fmt_float(o)] for k, e, o in rows],
    ))
    return EXIT_OK


def cmd_functions(args, out) -> int:
    rows = [[s.name, s.label, "unbounded" if s.max_smooth_order is None else str(s.max_smooth_order),
             ",".join(str(k) for k in s.kinks) or "-"] for s in registry()]
    out.write(_table(["name", "function", "max_order", "kinks"], rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermquad",
        description="Two-point Hermite quadrature with exact n-th derivative error kernels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def rule_args(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--a", type=_exact, required=True)
        p.add_argument("--b", type=_exact, required=True)
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("weights", help="exact quadrature weights")
    rule_args(p)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("theta", help="kernel parameters and matching report")
    rule_args(p)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("export", help="full rule as lossless JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=_exact, required=True)
    p.add_argument("--b", type=_exact, required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", help="exact structural checks for n = 1..n_max")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("integrate", help="quadrature, exact error and bounds for one integrand")
    p.add_argument("--function", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--tol", type=float, default=err.DEFAULT_TOL)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("figure", help="CSV comparing original and improved bounds")
    p.add_argument("--output", "-o", default="-")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=err.DEFAULT_TOL)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("convergence", help="composite-rule error versus number of pieces")
    p.add_argument("--function", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pieces", type=_pieces, default=[1, 2, 4, 8, 16, 32, 64])
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--tol", type=float, default=err.DEFAULT_TOL)
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("functions", help="list registered integrands")
    p.set_defaults(func=cmd_functions)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if getattr(args, "tol", 1.0) <= 0:
        print("hermquad: error: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"hermquad: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
