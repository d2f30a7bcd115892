"""Command-line interface.

Usage:
    azcount count --class diag --n 6 [--factored] [--cross-check]
    azcount table --family C --n 2 [--format csv|json]
    azcount sequence --class dad --from 1 --to 7 [--format csv|json]
    azcount verify --n-max 4 [--format text|json]

Exit codes: 0 ok, 1 verification failure, 2 usage, 3 resource guard,
4 internal inconsistency. Counts are printed as decimal strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional, Sequence

from . import counter, oracle, verify
from .counter import CountReport, SymmetryClass
from .errors import ConsistencyError, ContractViolation, InvariantError, ResourceLimitError
from .factor import format_factors

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_INCONSISTENT = 4

CLASS_NAMES = {
    "all": SymmetryClass.UNRESTRICTED,
    "diag": SymmetryClass.DIAGONAL,
    "dad": SymmetryClass.DIAGONAL_ANTIDIAGONAL,
}

# generators of the subgroup whose fixed tilings each class counts
CLASS_GENERATORS = {
    SymmetryClass.UNRESTRICTED: [],
    SymmetryClass.DIAGONAL: ["t"],
    SymmetryClass.DIAGONAL_ANTIDIAGONAL: ["t", "r2"],
}


def output_record(payload: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, "payload": payload},
                      sort_keys=True, indent=2, ensure_ascii=False)


def _csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _default_threads() -> int:
    raw = os.environ.get("AZCOUNT_THREADS")
    if not raw:
        return 1
    try:
        return _positive(raw)
    except argparse.ArgumentTypeError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive, default=_default_threads(),
                        help="worker processes for oracle state sums (default: $AZCOUNT_THREADS or 1)")
    common.add_argument("--max-table-bits", type=_positive, default=counter.DEFAULT_MAX_TABLE_BITS,
                        help="refuse orders n with 4**n > 2**BITS (default %(default)s)")

    parser = argparse.ArgumentParser(prog="azcount", description="Exact counts of symmetric domino tilings of Aztec diamonds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="count tilings in one symmetry class")
    p.add_argument("--class", dest="cls", choices=sorted(CLASS_NAMES), required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--factored", action="store_true", help="append a trial-division factorization")
    p.add_argument("--cross-check", action="store_true", help="confirm by enumerating tilings when small enough")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("table", parents=[common], help="export a coefficient table")
    p.add_argument("--family", choices=[counter.FAMILY_C, counter.FAMILY_CPRIME], required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("sequence", parents=[common], help="counts for a range of orders")
    p.add_argument("--class", dest="cls", choices=sorted(CLASS_NAMES), required=True)
    p.add_argument("--from", dest="start", type=_positive, required=True)
    p.add_argument("--to", dest="stop", type=_positive, required=True)
    p.add_argument("--factored", action="store_true")
    p.add_argument("--cross-check", action="store_true")
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("verify", parents=[common], help="cross-check recursions against brute force")
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--enumerate-max", type=int, default=5,
                   help="largest order whose tilings are fully enumerated (default %(default)s)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def _cross_check(report: CountReport, limits: oracle.OracleLimits) -> str:
    if not oracle.within_matching_limit(report.order, limits):
        return "skipped"
    gens = CLASS_GENERATORS[report.symmetry_class]
    value = oracle.count_invariant_matchings(report.order, gens, limits)
    if value != report.count:
        raise ConsistencyError(f"{report.symmetry_class.value} order {report.order}: "
                               f"recursion {report.count}, enumeration {value}")
    return "agreed"


def _count_record(report: CountReport, cross: Optional[str]) -> dict:
    rec = report.as_record()
    if cross is not None:
        rec["cross_check"] = cross
    return rec


def cmd_count(args) -> tuple[int, str]:
    report = counter.count(CLASS_NAMES[args.cls], args.n, args.factored, args.max_table_bits)
    cross = _cross_check(report, oracle.DEFAULT_LIMITS) if args.cross_check else None
    if args.format == "json":
        return EXIT_OK, output_record({"kind": "count", **_count_record(report, cross)})
    line = str(report.count)
    if report.factorization is not None:
        line += " = " + format_factors(list(report.factorization), report.composite_tail or 1)
    return EXIT_OK, line


def cmd_table(args) -> tuple[int, str]:
    fn = counter.c_table if args.family == counter.FAMILY_C else counter.cprime_table
    t = fn(args.n, args.max_table_bits)
    rows = t.export_rows()
    if args.format == "json":
        return EXIT_OK, output_record({"kind": "table", "family": t.family, "n": t.n, "rows": rows})
    return EXIT_OK, _csv(["bits", "coeff"], [[r["bits"], r["coeff"]] for r in rows])


def cmd_sequence(args) -> tuple[int, str]:
    reports = counter.sequence(CLASS_NAMES[args.cls], args.start, args.stop, args.factored, args.max_table_bits)
    crosses = [_cross_check(r, oracle.DEFAULT_LIMITS) if args.cross_check else None for r in reports]
    if args.format == "json":
        return EXIT_OK, output_record({
            "kind": "sequence",
            "symmetry_class": CLASS_NAMES[args.cls].value,
            "records": [_count_record(r, x) for r, x in zip(reports, crosses)],
        })
    header = ["order", "count", "source"]
    if args.factored:
        header.append("factorization")
    if args.cross_check:
        header.append("cross_check")
    rows = []
    for r, x in zip(reports, crosses):
        row = [str(r.order), str(r.count), r.source.value]
        if args.factored:
            row.append(format_factors(list(r.factorization), r.composite_tail or 1))
        if args.cross_check:
            row.append(x)
        rows.append(row)
    return EXIT_OK, _csv(header, rows)


def cmd_verify(args) -> tuple[int, str]:
    reports = verify.verify_range(args.n_max, workers=args.threads, enumerate_max=args.enumerate_max)
    ok = all(r.passed for r in reports)
    code = EXIT_OK if ok else EXIT_VERIFY_FAILED
    if args.format == "json":
        return code, output_record({"kind": "verification", "passed": ok,
                                    "layers": [r.as_record() for r in reports]})
    lines = []
    for r in reports:
        for c in r.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{status} n={r.n} {c.name}" + (f": {c.detail}" if c.detail else ""))
    lines.append(f"{'all checks passed' if ok else 'verification FAILED'} ({sum(len(r.checks) for r in reports)} checks)")
    return code, "\n".join(lines)


COMMANDS = {"count": cmd_count, "table": cmd_table, "sequence": cmd_sequence, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        code, text = COMMANDS[args.command](args)
    except ContractViolation as exc:
        print(f"azcount: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"azcount: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ConsistencyError, InvariantError) as exc:
        print(f"azcount: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
