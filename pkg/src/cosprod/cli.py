"""Command-line front end.

Subcommands: coeffs, lambda, product, verify, rearrange.  Common flags:
--precision <bits>, --format <table|csv|json>, --out <path>.  Exit codes:
0 success/PASS, 1 verification FAIL, 2 usage error, 3 domain error.
The parameter n is parsed exactly, as an integer or p/q; decimal input is
rejected so nothing is silently rounded at the API boundary.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from typing import Optional

from .analytic import (
    DomainError,
    cos_approx,
    lambda_direct,
    product_trace,
    rearrangement_check,
    verify_identity,
)
from .arith import BoundedReal, pi_constant
from .output import (
    OutputRecord,
    format_bound,
    format_decimal,
    format_rational,
    render,
)
from .recurrence import lambda_closed_form, lambda_coefficients

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def _rational(text: str) -> Fraction:
    if not _RATIONAL_RE.match(text):
        raise argparse.ArgumentTypeError(
            f"{text!r} is not an exact rational; write an integer or p/q "
            "(decimal input is rejected)")
    value = Fraction(text)
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("value must be at least 1")
    return value


def _precision(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 8:
        raise argparse.ArgumentTypeError("precision must be at least 8 bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosprod",
        description="Bound-carrying evaluation of the odd cosine product "
                    "cos(pi/2n) = prod (1 - 1/((2k-1)^2 n^2)) and its "
                    "coefficient machinery.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_precision, default=128,
                        metavar="BITS", help="working precision in bits (default 128)")
    common.add_argument("--format", choices=("table", "csv", "json"),
                        default="table", help="output format (default table)")
    common.add_argument("--out", metavar="PATH", default=None,
                        help="write output to PATH instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common],
                       help="exact coefficient table c_m with lambda(2m) = c_m (pi/2)^2m")
    p.add_argument("--m-max", type=_positive, default=10, metavar="M")

    p = sub.add_parser("lambda", parents=[common],
                       help="odd-reciprocal power sums: direct summation vs closed form")
    p.add_argument("--m-max", type=_positive, default=10, metavar="M")
    p.add_argument("--num-terms", type=_positive, default=100_000, metavar="N")

    p = sub.add_parser("product", parents=[common],
                       help="convergence trace of the truncated product toward cos(pi/2n)")
    p.add_argument("--n", type=_rational, required=True,
                   help="product parameter, exact rational >= 1")
    p.add_argument("--num-factors", type=_positive, default=100_000, metavar="N")

    p = sub.add_parser("verify", parents=[common],
                       help="three-way identity check: product vs series vs cosine")
    p.add_argument("--n", type=_rational, required=True,
                   help="identity parameter, exact rational > 1")
    p.add_argument("--num-factors", type=_positive, default=100_000, metavar="N")
    p.add_argument("--order", type=_positive, default=30, metavar="M")

    p = sub.add_parser("rearrange", parents=[common],
                       help="row-order vs column-order summation of the log double sum")
    p.add_argument("--n", type=_rational, required=True,
                   help="parameter, exact rational > 1")
    p.add_argument("--rows", type=_positive, default=1_000, metavar="K")
    p.add_argument("--order", type=_positive, default=20, metavar="M")

    return parser


def _interval_row(method: str, est: BoundedReal) -> dict[str, str]:
    return {
        "method": method,
        "value": format_decimal(est.value, est.abs_error),
        "bound": format_bound(est.abs_error),
        "low": format_decimal(est.lower(), est.abs_error),
        "high": format_decimal(est.upper(), est.abs_error),
    }


def _half_pi_powers(precision_bits: int, m_max: int) -> list[BoundedReal]:
    """(pi/2)^2, (pi/2)^4, ..., (pi/2)^2m as BoundedReals."""
    half_pi = pi_constant(precision_bits + 16) * Fraction(1, 2)
    step = half_pi * half_pi
    powers = [step]
    for _ in range(m_max - 1):
        powers.append(powers[-1] * step)
    return powers


def cmd_coeffs(args: argparse.Namespace) -> tuple[OutputRecord, int]:
    table = lambda_coefficients(args.m_max)
    powers = _half_pi_powers(args.precision, args.m_max)
    rows = []
    for m in range(1, args.m_max + 1):
        lam = powers[m - 1] * table.c(m)
        rows.append({
            "m": str(m),
            "c_m": format_rational(table.c(m)),
            "tangent_coeff": format_rational(2 * table.c(m)),
            "lambda_2m": format_decimal(lam.value, lam.abs_error),
            "lambda_bound": format_bound(lam.abs_error),
        })
    record = OutputRecord(
        command="coeffs",
        parameters={"m_max": str(args.m_max), "precision": str(args.precision)},
        rows=rows,
    )
    return record, EXIT_OK


def cmd_lambda(args: argparse.Namespace) -> tuple[OutputRecord, int]:
    pi_pow = pi_constant(args.precision + 16)
    pi_sq = pi_pow * pi_pow
    rows = []
    all_pass = True
    closed_pow = pi_sq
    for m in range(1, args.m_max + 1):
        est = lambda_direct(m, args.num_terms, args.precision)
        q_m = lambda_closed_form(m)
        closed = closed_pow * q_m
        lo, hi = est.bracket()
        ok = lo <= closed.upper() and closed.lower() <= hi
        all_pass = all_pass and ok
        rows.append({
            "m": str(m),
            "direct": format_decimal(est.value.value,
                                     est.value.abs_error + est.tail_bound),
            "direct_bound": format_bound(est.value.abs_error + est.tail_bound),
            "q_m": format_rational(q_m),
            "closed_form": format_decimal(closed.value, closed.abs_error),
            "closed_bound": format_bound(closed.abs_error),
            "overlap": "PASS" if ok else "FAIL",
        })
        closed_pow = closed_pow * pi_sq
    record = OutputRecord(
        command="lambda",
        parameters={"m_max": str(args.m_max), "num_terms": str(args.num_terms),
                    "precision": str(args.precision)},
        rows=rows,
        verdict="PASS" if all_pass else "FAIL",
    )
    return record, EXIT_OK if all_pass else EXIT_FAIL


def cmd_product(args: argparse.Namespace) -> tuple[OutputRecord, int]:
    trace = product_trace(args.n, args.num_factors, args.precision)
    if args.n == 1:
        target = BoundedReal.exact(0, args.precision)
    else:
        x = pi_constant(args.precision + 16) * Fraction(args.n.denominator,
                                                        2 * args.n.numerator)
        target = cos_approx(x, args.precision)
    rows = []
    all_pass = True
    for snap in trace:
        total = snap.total_bound()
        deviation = abs(snap.value.value - target.value)
        ok = deviation <= total + target.abs_error
        all_pass = all_pass and ok
        rows.append({
            "num_factors": str(snap.num_factors),
            "value": format_decimal(snap.value.value, total),
            "round_bound": format_bound(snap.value.abs_error),
            "log_tail_bound": ("n/a" if snap.log_tail_bound is None
                               else format_bound(snap.log_tail_bound)),
            "total_bound": format_bound(total),
            "cosine": format_decimal(target.value, target.abs_error),
            "deviation": format_bound(deviation) if deviation else "0",
            "contained": "PASS" if ok else "FAIL",
        })
    record = OutputRecord(
        command="product",
        parameters={"n": format_rational(args.n),
                    "num_factors": str(args.num_factors),
                    "precision": str(args.precision)},
        rows=rows,
        verdict="PASS" if all_pass else "FAIL",
    )
    return record, EXIT_OK if all_pass else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> tuple[OutputRecord, int]:
    report = verify_identity(args.n, args.num_factors, args.order,
                             args.precision)
    rows = [_interval_row(name, est) for name, est in report.estimates()]
    record = OutputRecord(
        command="verify",
        parameters={"n": format_rational(args.n),
                    "num_factors": str(args.num_factors),
                    "order": str(args.order),
                    "precision": str(args.precision)},
        rows=rows,
        verdict="PASS" if report.verdict else "FAIL",
    )
    return record, EXIT_OK if report.verdict else EXIT_FAIL


def cmd_rearrange(args: argparse.Namespace) -> tuple[OutputRecord, int]:
    report = rearrangement_check(args.n, args.rows, args.order, args.precision)
    rows = [_interval_row("row_order", report.row_sum),
            _interval_row("column_order", report.column_sum)]
    record = OutputRecord(
        command="rearrange",
        parameters={"n": format_rational(args.n),
                    "rows": str(args.rows),
                    "order": str(args.order),
                    "precision": str(args.precision)},
        rows=rows,
        verdict="PASS" if report.overlap else "FAIL",
    )
    return record, EXIT_OK if report.overlap else EXIT_FAIL


_COMMANDS = {
    "coeffs": cmd_coeffs,
    "lambda": cmd_lambda,
    "product": cmd_product,
    "verify": cmd_verify,
    "rearrange": cmd_rearrange,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        record, code = _COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text = render(record, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
