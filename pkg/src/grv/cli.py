"""Command-line front end: ``grv list | show | verify | eval | selftest``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from collections.abc import Sequence

from . import __version__
from . import specfun as sf
from .catalog import ParameterAssignment, UnknownEntryError, entries, entry, provenance_table
from .selftest import run_all
from .verifier import OutOfDomainError, ToleranceConfig, VerificationReport, verify_all, verify_entry

BUDGET_ENV = "GRV_QUAD_BUDGET"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

_TOKENS = {"pi": math.pi, "e": math.e, "gamma": sf.EULER_GAMMA}
_INT_LITERAL = re.compile(r"[+-]?\d+")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def parse_params(text: str | None) -> ParameterAssignment:
    """``a=2.5,mu=1.7`` -> assignment; accepts the tokens pi, e and gamma."""
    values: dict[str, float | int] = {}
    if not text:
        return ParameterAssignment()
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        name, sep, literal = item.partition("=")
        name, literal = name.strip(), literal.strip()
        if not sep or not name or not literal:
            raise UsageError(f"malformed parameter {item!r}; expected name=value")
        if name in values:
            raise UsageError(f"parameter {name!r} given twice")
        values[name] = _number(literal)
    return ParameterAssignment(values)


def _number(literal: str) -> float | int:
    sign = 1.0
    body = literal
    if body[:1] in "+-" and body[1:].lower() in _TOKENS:
        sign = -1.0 if body[0] == "-" else 1.0
        body = body[1:]
    if body.lower() in _TOKENS:
        return sign * _TOKENS[body.lower()]
    if _INT_LITERAL.fullmatch(literal):
        return int(literal)
    try:
        value = float(literal)
    except ValueError:
        raise UsageError(f"cannot read {literal!r} as a number") from None
    if not math.isfinite(value):
        raise UsageError(f"parameter value {literal!r} is not finite")
    return value


def _tolerances(args: argparse.Namespace) -> ToleranceConfig:
    tol = ToleranceConfig()
    budget = os.environ.get(BUDGET_ENV)
    if budget is not None:
        try:
            tol = ToleranceConfig(quad_budget=int(budget))
        except ValueError:
            raise UsageError(f"{BUDGET_ENV} must be a positive integer, got {budget!r}") from None
    rel = getattr(args, "rel_tol", None)
    floor = getattr(args, "abs_floor", None)
    for name, value in (("--rel-tol", rel), ("--abs-floor", floor)):
        if value is not None and not (value > 0 and math.isfinite(value)):
            raise UsageError(f"{name} must be positive")
    return tol.with_pass(rel, floor)


def _g(x: float) -> str:
    return f"{x:.15g}"


def _params_text(params) -> str:
    return ", ".join(f"{k}={_g(v) if isinstance(v, float) else v}" for k, v in params.items()) or "-"


def render_text(report: VerificationReport) -> str:
    lines = []
    for r in report.records:
        lines.append(
            f"{r.status:<16} {r.entry_id:<24} [{_params_text(r.params)}]  "
            f"lhs={_g(r.lhs)}  rhs={_g(r.rhs)}  rel_err={r.rel_err:.3e}"
        )
    s = report.summary
    lines.append(
        f"summary: pass={s['pass']} fail={s['fail']} "
        f"quad_no_converge={s['quad_no_converge']} skipped={s['skipped']}"
    )
    return "\n".join(lines) + "\n"


def render(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "csv":
        return report.to_csv()
    return render_text(report)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- subcommands ------------------------------------------------------------


def cmd_list(args: argparse.Namespace) -> int:
    rows = provenance_table()
    if args.format == "json":
        text = json.dumps(rows, indent=2, ensure_ascii=False) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["id", "category", "reference", "domain"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        width = max(len(r["id"]) for r in rows)
        text = "".join(f"{r['id']:<{width}}  {r['category']:<14}  {r['reference']}\n" for r in rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_show(args: argparse.Namespace) -> int:
    e = entry(args.id)
    lines = [
        f"id:        {e.id}",
        f"category:  {e.category}",
        f"formula:   {e.formula}",
        f"domain:    {e.domain.describe()}",
        f"reference: {e.provenance}",
    ]
    if e.domain.derived:
        lines.append("note:      domain derived from convergence of the integral")
    if e.note:
        lines.append(f"           {e.note}")
    print("\n".join(lines))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if not args.all and not args.id:
        raise UsageError("verify: give --all or at least one --id")
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    tol = _tolerances(args)
    ids = None if args.all else args.id
    report = verify_all(args.seed, args.samples, tol, ids=ids, workers=args.jobs)
    _emit(render(report, args.format), args.out)
    if args.out:
        s = report.summary
        print(f"wrote {len(report.records)} records to {args.out}: pass={s['pass']} fail={s['fail']}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_eval(args: argparse.Namespace) -> int:
    e = entry(args.id)
    params = parse_params(args.params)
    tol = _tolerances(args)
    try:
        rec = verify_entry(e, params, tol)
    except OutOfDomainError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        print(json.dumps(rec.as_dict(), indent=2, ensure_ascii=False))
    else:
        print(f"id:      {rec.entry_id}")
        print(f"params:  {_params_text(rec.params)}")
        print(f"lhs:     {_g(rec.lhs)}")
        print(f"rhs:     {_g(rec.rhs)}")
        print(f"abs_err: {rec.abs_err:.3e}")
        print(f"rel_err: {rec.rel_err:.3e}")
        print(f"status:  {rec.status}")
        if rec.detail:
            print(f"detail:  {rec.detail}")
    return EXIT_FAILED if rec.status == "fail" else EXIT_OK


def cmd_selftest(args: argparse.Namespace) -> int:
    failed = 0
    for suite, result in run_all():
        print(f"[{suite}] {result.line()}")
        failed += not result.passed
    print(f"{failed} failing check(s)")
    return EXIT_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grv", description="Verify gamma-function integral identities numerically.")
    parser.add_argument("--version", action="version", version=f"grv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("list", help="list catalog ids with references")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("show", help="show one entry")
    p.add_argument("id")
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("verify", help="verify entries at sampled parameters")
    p.add_argument("--id", action="append", default=[], help="entry id (repeatable)")
    p.add_argument("--all", action="store_true", help="verify every entry")
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--rel-tol", type=float)
    p.add_argument("--abs-floor", type=float)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", help="verify one entry at given parameters")
    p.add_argument("id")
    p.add_argument("--params", default="", help="name=value[,name=value...]; pi, e, gamma allowed")
    p.add_argument("--rel-tol", type=float)
    p.add_argument("--abs-floor", type=float)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("selftest", help="run the kernel and quadrature invariant suites")
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except UnknownEntryError as exc:
        print(f"grv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"grv: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
