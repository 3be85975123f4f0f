"""Command-line front end.

Exit codes: 0 all checks passed, 1 a verification failed, 2 usage error,
3 arithmetic-integrity abort.  Results go to stdout (or ``--output``);
progress and the timing line go to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import __version__
from .congruence import (
    CaseKind,
    CongruenceCase,
    check_theorem_mod,
    residues_csv,
    scan_residues,
)
from .denominators import (
    conjectured_r,
    default_threads,
    tightened_bound,
    truncated_r,
    upper_bound,
    verify_conjecture,
    witnesses,
    table_compare,
)
from .errors import ArithmeticIntegrityError, DomainError, NonIntegralResidue
from .moments import build_matrix, moment_direct, moment_matrix
from .numtheory import Factorization, format_rational
from .render import (
    default_palette,
    denominator_grid,
    dump_grid_csv,
    load_palette,
    render_image,
    summarize,
)

SCHEMA = "walkmoments/1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTEGRITY = 0, 1, 2, 3


class Output:
    """Collects one command's result in every supported format."""

    def __init__(self, command: str):
        self.command = command
        self.record: dict = {}
        self.lines: list[str] = []
        self.header: list[str] | None = None
        self.rows: list[list] = []
        self.ok = True

    def render(self, fmt: str) -> str:
        if fmt == "json":
            payload = {"schema": SCHEMA, "command": self.command, "ok": self.ok, **self.record}
            return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            if self.header:
                writer.writerow(self.header)
            writer.writerows(self.rows)
            return buf.getvalue()
        return "\n".join(self.lines) + "\n"


def _fact(f: Factorization) -> str:
    return str(f)


def _progress(enabled: bool):
    if not enabled:
        return None

    def report(done: int, total: int) -> None:
        print(f"  rows {done}/{total}", file=sys.stderr)

    return report


def cmd_moment(args, out: Output) -> None:
    values = {}
    if args.method in ("direct", "both"):
        values["direct"] = moment_direct(args.nu, args.n, args.k)
    if args.method in ("matrix", "both"):
        values["matrix"] = moment_matrix(args.nu, args.n, args.k)
    agree = len(set(values.values())) == 1
    out.ok = agree
    out.record = {
        "nu": args.nu,
        "n": args.n,
        "k": args.k,
        "values": {m: format_rational(v) for m, v in values.items()},
        "agree": agree,
    }
    out.header = ["nu", "n", "k", "method", "value"]
    for m, v in values.items():
        out.rows.append([args.nu, args.n, args.k, m, format_rational(v)])
        out.lines.append(f"W_{args.n}({args.nu}; {2 * args.k}) [{m}] = {format_rational(v)}")
    if len(values) > 1:
        out.lines.append("agree" if agree else "DISAGREE")


def cmd_matrix(args, out: Output) -> None:
    if args.K < 1:
        raise DomainError("--K must be >= 1")
    matrix = build_matrix(args.nu, args.K)
    text = [[format_rational(x) for x in row] for row in matrix.rows]
    out.record = {"nu": args.nu, "K": args.K, "rows": text}
    out.header = ["k", "j", "value"]
    out.rows = [[k, j, x] for k, row in enumerate(text) for j, x in enumerate(row)]
    width = max(len(x) for row in text for x in row)
    for row in text:
        padded = row + ["0"] * (args.K - len(row))
        out.lines.append(" ".join(x.rjust(width) for x in padded))


def cmd_rnu(args, out: Output) -> None:
    r = truncated_r(args.nu, args.K, args.threads)
    rec = {"nu": args.nu, "K": args.K, "truncated_r": r, "conjectured": conjectured_r(args.nu)}
    if args.nu >= 1:
        up = upper_bound(args.nu)
        tight = tightened_bound(args.nu)
        rec.update(upper=up, tightened=_fact(tight), tightened_value=tight.value)
        out.ok = up % r == 0 and tight.value % r == 0
    out.record = rec
    out.header = list(rec)
    out.rows = [list(rec.values())]
    out.lines = [f"{key}: {value}" for key, value in rec.items()]


def cmd_verify(args, out: Output) -> None:
    report = verify_conjecture(args.nu, args.K, args.threads)
    out.ok = report.passed
    rec = {
        "nu": report.nu,
        "K": report.K,
        "status": report.status.value,
        "truncated_r": report.truncated_r,
        "conjectured": report.conjectured,
        "upper": report.upper,
        "tightened": _fact(report.tightened),
    }
    if report.violation:
        k, j, value = report.violation
        rec["violation"] = {"k": k, "j": j, "value": format_rational(value)}
    out.record = rec
    out.header = ["nu", "K", "status", "truncated_r", "conjectured", "upper", "tightened"]
    out.rows = [[rec[h] for h in out.header]]
    out.lines = [f"nu={report.nu} K={report.K}: {report.status.value}, r={report.truncated_r}"
                 f" (conjectured {report.conjectured}, upper {report.upper}, tightened {rec['tightened']})"]
    if report.violation:
        out.lines.append(f"violating entry A_{{{k},{j}}} = {format_rational(value)}")


def cmd_table(args, out: Output) -> None:
    rows = table_compare(args.max)
    out.record = {"rows": [{"nu": r.nu, "star": _fact(r.star), "factorial": _fact(r.factorial)} for r in rows]}
    out.header = ["nu", "star", "factorial"]
    out.rows = [[r.nu, _fact(r.star), _fact(r.factorial)] for r in rows]
    width = max(len(_fact(r.star)) for r in rows)
    out.lines.append(f"{'nu':>3} | {'star bound':<{width}} | (2nu-1)!")
    for r in rows:
        out.lines.append(f"{r.nu:>3} | {_fact(r.star):<{width}} | {_fact(r.factorial)}")


def cmd_witness(args, out: Output) -> None:
    results = witnesses(args.nu, args.r_cap)
    out.ok = all(w.verified for w in results)
    out.header = ["nu", "p", "alpha", "r", "minimal_r", "k", "j", "denominator", "verified"]
    for w in results:
        k, j = w.entry_index
        out.rows.append([w.nu, w.p, w.alpha, w.r, w.minimal_r, k, j, w.denominator, str(w.verified).lower()])
        flag = "" if not w.red_flag else "  RED FLAG: minimal r did not certify"
        out.lines.append(
            f"{w.p}^{w.alpha}: A_{{{k},{j}}}({w.nu}) denominator {w.denominator}"
            f" -> {'verified' if w.verified else 'NOT verified'} (r={w.r}){flag}"
        )
    out.record = {
        "nu": args.nu,
        "conjectured": conjectured_r(args.nu),
        "witnesses": [
            {"p": w.p, "alpha": w.alpha, "r": w.r, "minimal_r": w.minimal_r, "k": w.entry_index[0],
             "j": w.entry_index[1], "denominator": w.denominator, "verified": w.verified}
            for w in results
        ],
    }


def cmd_congruence(args, out: Output) -> None:
    case = CongruenceCase(CaseKind(args.case), args.nu, args.k)
    reports = [check_theorem_mod(case, n, args.method) for n in range(args.n_min, args.n_max + 1)]
    out.ok = all(r.passed for r in reports)
    out.header = ["case", "nu", "k", "n", "modulus", "residue", "expected", "pass"]
    for r in reports:
        out.rows.append([case.kind.value, r.nu, r.k, r.n, r.modulus, r.residue, r.expected, str(r.passed).lower()])
        out.lines.append(
            f"{case.kind.value} nu={r.nu} k={r.k} n={r.n}: W mod {r.modulus} = {r.residue}"
            f" (expected {r.expected}) {'pass' if r.passed else 'FAIL'}"
        )
    out.record = {
        "case": case.kind.value,
        "nu": case.nu,
        "k": case.k,
        "modulus": case.modulus,
        "results": [{"n": r.n, "residue": r.residue, "expected": r.expected, "pass": r.passed} for r in reports],
    }


def cmd_scan(args, out: Output) -> None:
    reports = scan_residues(args.nu, args.k, args.modulus, args.n_max, args.method)
    proven = reports[0].case if reports else None
    if proven is not None:
        out.ok = all(r.passed for r in reports)
    text = residues_csv(reports).splitlines()
    reader = csv.reader(text)
    out.header = next(reader)
    out.rows = list(reader)
    out.record = {
        "nu": args.nu,
        "k": args.k,
        "modulus": args.modulus,
        "exploratory": proven is None,
        "results": [
            {"n": r.n, "moment": format_rational(r.moment), "residue": r.residue,
             "expected": r.expected, "pass": r.passed}
            for r in reports
        ],
    }
    mode = "exploration" if proven is None else f"checked against {proven.kind.value}"
    out.lines.append(f"W_n({args.nu}; {2 * args.k}) mod {args.modulus} ({mode})")
    for r in reports:
        res = r.residue if r.residue is not None else f"none ({r.error})"
        out.lines.append(f"  n={r.n}: {res}")


def cmd_render(args, out: Output) -> None:
    palette = load_palette(args.palette) if args.palette else default_palette(args.nu)
    grid = denominator_grid(args.nu, args.rows, args.threads, _progress(args.progress))
    image = render_image(grid, palette)
    Path(args.out).write_bytes(image)
    if args.csv:
        Path(args.csv).write_text(dump_grid_csv(grid))
    summary = summarize(grid, palette)
    out.ok = summary.black == 0
    out.record = {"nu": args.nu, "out": str(args.out), **summary.to_dict()}
    out.header = ["nu", "rows", "cells", "palette_hits", "fallback_known", "black", "lcm"]
    out.rows = [[args.nu, summary.rows, summary.cells, summary.palette_hits,
                 summary.fallback_known, summary.black, summary.lcm]]
    out.lines = [
        f"wrote {args.out} ({summary.rows}x{summary.rows})",
        f"non-integer entries: {summary.cells}, LCM of denominators: {summary.lcm}",
        f"palette hits: {summary.palette_hits}, fallback: {summary.fallback_known}, black: {summary.black}",
        "denominators: " + ", ".join(f"{d}x{c}" for d, c in sorted(summary.denominators.items())),
    ]


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _pos(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "csv", "json"], default="human")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--threads", type=_pos, default=None,
                        help="worker processes for scans (default: $WALKMOMENTS_THREADS or CPU count)")
    common.add_argument("--no-timing", action="store_true", help="suppress the timing line on stderr")
    common.add_argument("--progress", action="store_true", help="report scan progress on stderr")

    parser = argparse.ArgumentParser(prog="walkmoments", description="Even moments of uniform random walks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moment", parents=[common], help="exact W_n(nu; 2k)")
    p.add_argument("--nu", type=_nonneg, required=True)
    p.add_argument("--n", type=_pos, required=True)
    p.add_argument("--k", type=_nonneg, required=True)
    p.add_argument("--method", choices=["direct", "matrix", "both"], default="direct")
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("matrix", parents=[common], help="leading K x K corner of A(nu)")
    p.add_argument("--nu", type=_nonneg, required=True)
    p.add_argument("--K", type=_pos, required=True)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("rnu", parents=[common], help="truncated r_nu with its bounds")
    p.add_argument("--nu", type=_nonneg, required=True)
    p.add_argument("--K", type=_nonneg, default=200)
    p.set_defaults(func=cmd_rnu)

    p = sub.add_parser("verify", parents=[common], help="compare truncated r_nu to C(2nu-1, nu)")
    p.add_argument("--nu", type=_pos, required=True)
    p.add_argument("--K", type=_nonneg, default=200)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="run-product bound vs (2nu-1)! factorizations")
    p.add_argument("--max", type=_pos, default=10)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("witness", parents=[common], help="lower-bound witnesses for r_nu")
    p.add_argument("--nu", type=_pos, required=True)
    p.add_argument("--r-cap", type=_pos, default=12)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("congruence", parents=[common], help="check W_n = n modulo a proven case")
    p.add_argument("--case", choices=[c.value for c in CaseKind], required=True)
    p.add_argument("--nu", type=_nonneg, required=True)
    p.add_argument("--k", type=_pos, required=True)
    p.add_argument("--n-min", type=_pos, default=1)
    p.add_argument("--n-max", type=_pos, default=6)
    p.add_argument("--method", choices=["direct", "matrix"], default="direct")
    p.set_defaults(func=cmd_congruence)

    p = sub.add_parser("scan", parents=[common], help="tabulate W_n mod m for n = 1..n-max")
    p.add_argument("--nu", type=_nonneg, required=True)
    p.add_argument("--k", type=_nonneg, required=True)
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--n-max", type=_pos, default=6)
    p.add_argument("--method", choices=["direct", "matrix"], default="direct")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("render", parents=[common], help="denominator picture of A(nu) as a P6 pixmap")
    p.add_argument("--nu", type=_nonneg, required=True)
    p.add_argument("--rows", type=_pos, required=True)
    p.add_argument("--out", required=True, help="pixmap path (.ppm)")
    p.add_argument("--palette", help="JSON palette file")
    p.add_argument("--csv", help="also dump the denominator grid as CSV")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is None:
        args.threads = default_threads()
    out = Output(args.command)
    start = time.perf_counter()
    try:
        args.func(args, out)
    except DomainError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticIntegrityError as exc:
        print(f"arithmetic integrity abort: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except NonIntegralResidue as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = out.render(args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if not args.no_timing:
        print(f"[{args.command}: {time.perf_counter() - start:.3f}s]", file=sys.stderr)
    if not out.ok:
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
