"""Command-line front end: ``mathieu-bounds {eval,table,verify,asymptotic}``.

Exit codes: 0 verified/success, 1 falsified, 2 usage error, 3 inconclusive
or precision exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Optional, Sequence

from .asymptotics import alpha_coefficients
from .errors import MathieuBoundsError
from .exact import Interval, decimal_string, to_rational
from .mathieu import Method, MethodConfig, alpha, eval_s, hoorfar_qi_bound
from .verify import (
    DEFAULT_THEOREM_GRID,
    B_STAR,
    LemmaReport,
    Status,
    VerifyConfig,
    best_constants,
    merge_reports,
    verify_target,
)

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
EXIT_CODES = {Status.VERIFIED: EXIT_OK, Status.FALSIFIED: EXIT_FALSIFIED, Status.INCONCLUSIVE: EXIT_INCONCLUSIVE}
TARGETS = ("lemma1", "lemma2", "lemma3", "theorem", "all")
TABLE_COLUMNS = ("r", "S_lo", "S_hi", "lower_bound", "upper_bound", "alpha_lo", "alpha_hi")
KNOWN_ALPHA_COEFFS = (Fraction(13, 30), Fraction(104, 525), Fraction(592, 2625), Fraction(404032, 1010625))
DEFAULT_DIGITS = 25


def _rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _positive_rational(text: str) -> Fraction:
    q = _rational(text)
    if q <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return q


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return n


def _grid(text: str) -> tuple:
    return tuple(_positive_rational(t.strip()) for t in text.split(",") if t.strip())


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def exact_string(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def short_string(q: Fraction) -> str:
    """Terminating decimal when one exists, else "p/q"."""
    d = q.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d != 1:
        return exact_string(q)
    if q.denominator == 1:
        return str(q.numerator)
    places = 0
    while (q * 10**places).denominator != 1:
        places += 1
    return decimal_string(q, places, "trunc")


def interval_document(iv: Interval, digits: int = DEFAULT_DIGITS) -> dict:
    return {
        "lo": exact_string(iv.lo),
        "hi": exact_string(iv.hi),
        "lo_decimal": decimal_string(iv.lo, digits, "floor"),
        "hi_decimal": decimal_string(iv.hi, digits, "ceil"),
        "decimal_digits": digits,
        "rounding": "lo floor, hi ceil",
    }


def to_document(value: Any, digits: int = DEFAULT_DIGITS) -> Any:
    """JSON-ready form: rationals become "p/q" strings with a truncated decimal alongside."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return {"exact": exact_string(value), "decimal": decimal_string(value, digits, "trunc"),
                "decimal_digits": digits, "rounding": "trunc"}
    if isinstance(value, Interval):
        return interval_document(value, digits)
    if isinstance(value, (list, tuple)):
        return [to_document(v, digits) for v in value]
    return str(value)


def report_document(report: LemmaReport) -> dict:
    return {
        "target": report.lemma,
        "overall": report.overall.value,
        "checks": [
            {"name": c.name, "status": c.status.value, "witness": to_document(c.witness),
             "detail": c.detail, "kind": c.kind}
            for c in report.checks
        ],
    }


def _emit_json(doc, out) -> None:
    json.dump(doc, out, indent=2)
    out.write("\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_eval(args, out) -> int:
    cfg = MethodConfig(Method(args.method), k=args.k, n_terms=args.terms, m=args.m, width=args.width)
    cv = eval_s(args.r, cfg)
    doc = {"r": exact_string(args.r), "method": cv.method.value, "terms_used": cv.terms_used,
           "enclosure": interval_document(cv.enclosure, args.digits),
           "width": to_document(cv.width, 3)}
    if args.format == "json":
        _emit_json(doc, out)
    else:
        enc = doc["enclosure"]
        out.write(f"S({args.r}) in [{enc['lo_decimal']}, {enc['hi_decimal']}]  "
                  f"({args.digits} digits, lo floor, hi ceil)\n")
        out.write(f"exact: [{enc['lo']}, {enc['hi']}]\n")
        out.write(f"method {cv.method.value}, terms {cv.terms_used}, width {decimal_string(cv.width, 30, 'ceil')}\n")
    return EXIT_OK


def table_rows(rmin: Fraction, rmax: Fraction, step: Fraction, width=Fraction(1, 10**20),
               digits: int = DEFAULT_DIGITS) -> list[dict]:
    a_star = best_constants().a_star
    cfg = MethodConfig(width=width)
    rows = []
    r = rmin
    while r <= rmax:
        s = eval_s(r, cfg).enclosure
        lower = hoorfar_qi_bound(r, a_star)
        upper = hoorfar_qi_bound(r, B_STAR)
        a = alpha(r, cfg).enclosure
        rows.append({
            "r": short_string(r),
            "S_lo": decimal_string(s.lo, digits, "floor"),
            "S_hi": decimal_string(s.hi, digits, "ceil"),
            "lower_bound": decimal_string(lower.hi, digits, "ceil"),
            "upper_bound": decimal_string(upper.lo, digits, "floor"),
            "alpha_lo": decimal_string(a.lo, digits, "floor"),
            "alpha_hi": decimal_string(a.hi, digits, "ceil"),
        })
        r += step
    return rows


def cmd_table(args, out) -> int:
    if args.rmin > args.rmax:
        raise argparse.ArgumentTypeError("rmin must not exceed rmax")
    rows = table_rows(args.rmin, args.rmax, args.step, args.width, args.digits)
    rendering = (f"{args.digits} decimal digits; S_lo, alpha_lo rounded down; S_hi, alpha_hi rounded up; "
                 f"lower_bound rounded up and upper_bound rounded down, so the printed bracket is conservative")
    if args.format == "json":
        _emit_json({"columns": list(TABLE_COLUMNS), "rendering": rendering, "rows": rows}, out)
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        out.write(buf.getvalue())
    return EXIT_OK


def _run_target(target: str, cfg: VerifyConfig, grid) -> LemmaReport:
    return verify_target(target, cfg, grid)


def run_verify(target: str, cfg: VerifyConfig, grid=None, jobs: int = 1) -> LemmaReport:
    if target != "all" or jobs <= 1:
        return verify_target(target, cfg, grid)
    parts = TARGETS[:-1]
    with ProcessPoolExecutor(max_workers=min(jobs, len(parts))) as pool:
        reports = list(pool.map(_run_target, parts, [cfg] * len(parts), [grid] * len(parts)))
    return merge_reports("all", reports)


def cmd_verify(args, out) -> int:
    cfg = VerifyConfig(zeta_width=args.zeta_width, pi_width=args.pi_width, s_width=args.s_width,
                       max_depth=args.max_depth)
    report = run_verify(args.target, cfg, args.grid, args.jobs)
    if args.format == "json":
        _emit_json(report_document(report), out)
    else:
        for c in report.checks:
            out.write(f"[{c.status.value:12}] ({c.kind}) {c.name}: {c.detail}\n")
        out.write(f"{report.lemma}: {report.overall.value}\n")
    return EXIT_CODES[report.overall]


def asymptotic_document(terms: int) -> dict:
    coeffs = alpha_coefficients(terms)
    check = alpha_coefficients(terms + 2)[:terms]
    rows = []
    for i, c in enumerate(coeffs):
        known = i < len(KNOWN_ALPHA_COEFFS)
        rows.append({
            "power": f"r^-{2 * i}",
            "coefficient": exact_string(c),
            "decimal": decimal_string(c, 20, "trunc"),
            "label": ("known" if c == KNOWN_ALPHA_COEFFS[i] else "MISMATCH with known value") if known
            else "derived (no published value)",
        })
    return {"terms": terms, "stable_under_two_more_terms": coeffs == check, "coefficients": rows}


def cmd_asymptotic(args, out) -> int:
    doc = asymptotic_document(args.terms)
    if args.format == "json":
        _emit_json(doc, out)
    else:
        for row in doc["coefficients"]:
            out.write(f"{row['power']:>7}  {row['coefficient']:>28}  {row['decimal']}  [{row['label']}]\n")
        out.write(f"stable when two more expansion terms are used: {doc['stable_under_two_more_terms']}\n")
    return EXIT_OK if doc["stable_under_two_more_terms"] else EXIT_INCONCLUSIVE


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mathieu-bounds",
                                description="Certified enclosures and bound checks for the Mathieu series "
                                            "S(r) = sum 2n/(n^2 + r^2)^2.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="enclose S(r)")
    e.add_argument("--r", type=_positive_rational, required=True, help='e.g. "2.57" or "257/100"')
    e.add_argument("--method", choices=[m.value for m in Method], default="combined")
    e.add_argument("--width", type=_positive_rational, default=Fraction(1, 10**20))
    e.add_argument("--k", type=_positive_int, help="Bernoulli expansion terms")
    e.add_argument("--m", type=_positive_int, help="Euler-Maclaurin index")
    e.add_argument("--terms", type=_positive_int, help="direct or zeta-series terms")
    e.add_argument("--digits", type=_positive_int, default=DEFAULT_DIGITS)
    e.add_argument("--format", choices=("plain", "json"), default="plain")
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("table", help="tabulate S, both bounds and alpha over a range of r")
    t.add_argument("rmin", type=_positive_rational)
    t.add_argument("rmax", type=_positive_rational)
    t.add_argument("step", type=_positive_rational)
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--width", type=_positive_rational, default=Fraction(1, 10**20))
    t.add_argument("--digits", type=_positive_int, default=DEFAULT_DIGITS)
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run a verification report")
    v.add_argument("target", choices=TARGETS)
    v.add_argument("--zeta-width", type=_positive_rational, default=VerifyConfig.zeta_width)
    v.add_argument("--pi-width", type=_positive_rational, default=VerifyConfig.pi_width)
    v.add_argument("--s-width", type=_positive_rational, default=VerifyConfig.s_width)
    v.add_argument("--max-depth", type=_positive_int, default=VerifyConfig.max_depth)
    v.add_argument("--grid", type=_grid, default=None,
                   help=f"comma-separated r values for the theorem check (default {','.join(map(str, DEFAULT_THEOREM_GRID))})")
    v.add_argument("--jobs", type=_positive_int, default=1)
    v.add_argument("--format", choices=("plain", "json"), default="json")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("asymptotic", help="coefficients of alpha's large-r expansion")
    a.add_argument("--terms", type=_positive_int, default=4)
    a.add_argument("--format", choices=("plain", "json"), default="plain")
    a.set_defaults(func=cmd_asymptotic)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except argparse.ArgumentTypeError as exc:
        print(f"mathieu-bounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MathieuBoundsError as exc:
        print(f"mathieu-bounds: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
