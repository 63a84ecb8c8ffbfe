"""Command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from .exactalg import ZERO
from .oracle import crosscheck_quotients
from .stringy import MAX_N, case_subtotals, generating_table, stringy_E
from .symfun import chi_A
from .toric import (
    Report,
    delta_fan_report,
    fiber_product_identity,
    multiplicity_check,
    verify_bundle_structure,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CHARACTER_MAX = 12
GEOMETRIC_FAN_MAX = 4
COMBINATORIAL_FAN_MAX = 6
ORACLE_MAX = 5


class UsageError(Exception):
    pass


def _max_n() -> int:
    raw = os.environ.get("STRINGY_MAX_N")
    if raw is None:
        return MAX_N
    try:
        return max(int(raw), 2)
    except ValueError:
        raise UsageError(f"STRINGY_MAX_N must be an integer, got {raw!r}")


def _check_range(name: str, value: int, lo: int, hi: int) -> None:
    if not lo <= value <= hi:
        raise UsageError(f"--{name} must be between {lo} and {hi}, got {value}")


def _frac(t: Fraction) -> str:
    return str(t.numerator) if t.denominator == 1 else f"{t.numerator}/{t.denominator}"


def _tuple(xs) -> str:
    return "(" + ",".join(str(x) for x in xs) + ")"


def _table(header: Sequence[str], rows: list[Sequence[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    fmt = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    return "\n".join([fmt(header)] + [fmt(r) for r in rows])


# ---------------------------------------------------------------------------
# commands; each returns (exit code, text payload, json payload)


def cmd_compute(n: int, parallel: bool = False):
    _check_range("n", n, 2, _max_n())
    res = stringy_E(n, parallel=parallel)
    return EXIT_OK, res.total.render(), res.to_json()


def cmd_sectors(n: int, parallel: bool = False):
    _check_range("n", n, 2, _max_n())
    res = stringy_E(n, parallel=parallel)
    header = ["lambda", "theta", "rep", "m", "mu", "phi", "age", "E_factor", "exponent", "sector"]
    rows = []
    for s in res.sectors:
        rows.append([
            _tuple(s.lam), "(" + ",".join(_frac(t) for t in s.theta) + ")", _tuple(s.rep),
            _tuple(s.m), ";".join(_tuple(mu) for _, mu in s.components),
            str(s.phi), str(s.age), s.e_factor.render(), str(s.exponent), s.polynomial().render(),
        ])
    cases = case_subtotals(res)
    by_lam: dict = {}
    for (lam, _), poly in cases.items():
        by_lam[lam] = by_lam.get(lam, ZERO) + poly
    lines = [_table(header, rows), "", "subtotals by cycle type:"]
    lines += [f"  {_tuple(lam)}: {poly.render()}" for lam, poly in by_lam.items()]
    lines.append(f"untwisted: {res.untwisted.render()}")
    lines.append(f"total: {res.total.render()}")
    payload = {
        "n": n,
        "sectors": [dict(s.to_json(), sector=s.polynomial().to_list()) for s in res.sectors],
        "cases": [{"lambda": list(lam), "theta": [_frac(t) for t in theta], "total": p.to_list()}
                  for (lam, theta), p in cases.items()],
        "by_lambda": [{"lambda": list(lam), "total": p.to_list()} for lam, p in by_lam.items()],
        "untwisted": res.untwisted.to_list(),
        "total": res.total.to_list(),
    }
    return EXIT_OK, "\n".join(lines), payload


def cmd_character(n: int):
    _check_range("n", n, 1, CHARACTER_MAX)
    chi = chi_A(n)
    payload = {"n": n, "text": chi.render(),
               "terms": [{"h": list(mono), "q": coeff.to_list()}
                         for mono, coeff in sorted(chi.terms.items())]}
    return EXIT_OK, chi.render(), payload


def _fan_reports(n: int) -> list[Report]:
    reports = []
    if n <= GEOMETRIC_FAN_MAX:
        reports.append(delta_fan_report(n))
        reports.append(verify_bundle_structure(n, geometric=True))
    else:
        reports.append(verify_bundle_structure(n, geometric=False))
    reports.append(multiplicity_check(n))
    fp = Report(f"fiber products n={n}")
    if n <= 4:
        ok, detail = fiber_product_identity(2, n)
        fp.add("iterated fiber product = cone(C2)", ok, detail)
    if n <= 3:
        ok, detail = fiber_product_identity(3, n)
        fp.add("iterated fiber product = cone(C3)", ok, detail)
    if fp.checks:
        reports.append(fp)
    return reports


def cmd_fan_check(n: int):
    _check_range("n", n, 2, COMBINATORIAL_FAN_MAX)
    reports = _fan_reports(n)
    ok = all(r.ok for r in reports)
    text = "\n".join(r.render() for r in reports)
    return (EXIT_OK if ok else EXIT_FAIL), text, {"n": n, "ok": ok, "reports": [r.to_json() for r in reports]}


def cmd_oracle(r: int):
    _check_range("r", r, 1, ORACLE_MAX)
    rows = crosscheck_quotients(r)
    ok = all(row.match for row in rows)
    lines = [f"r={row.r} mu={_tuple(row.mu)}: formula {row.formula.render()}, "
             f"oracle {row.oracle.render()} [{'match' if row.match else 'MISMATCH'}]" for row in rows]
    return (EXIT_OK if ok else EXIT_FAIL), "\n".join(lines), [row.to_json() for row in rows]


def cmd_table(n_max: int, parallel: bool = False):
    _check_range("n-max", n_max, 2, _max_n())
    rows = generating_table(n_max) if not parallel else [
        (n, stringy_E(n, parallel=True).total) for n in range(2, n_max + 1)]
    text = "\n".join(f"n={n}: {poly.render()}" for n, poly in rows)
    return EXIT_OK, text, [{"n": n, "total": poly.to_list(), "text": poly.render()} for n, poly in rows]


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stringy-symprod",
        description="Stringy E-polynomials of relative symmetric products Z^(n).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, arg, dest, parallel=False):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument(arg, dest=dest, type=int, required=True)
        if parallel:
            p.add_argument("--parallel", action="store_true",
                           help="evaluate cycle types in worker processes (same output)")
        return p

    add("compute", "stringy E-polynomial of Z^(n)", "--n", "n", parallel=True)
    add("sectors", "table of twisted sectors", "--n", "n", parallel=True)
    add("character", "graded character of the permutohedral variety in the h-basis", "--n", "n")
    add("fan-check", "structural checks of the fans", "--n", "n")
    add("oracle", "cross-check quotient E-polynomials against Burnside averaging", "--r", "r")
    add("table", "E_st(Z^(n)) for n = 2..n_max", "--n-max", "n_max", parallel=True)
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, str, str | None]:
    """Parse and execute; returns ``(exit code, rendered output, output path)``."""
    args = build_parser().parse_args(argv)
    par = getattr(args, "parallel", False)
    dispatch = {
        "compute": lambda: cmd_compute(args.n, par),
        "sectors": lambda: cmd_sectors(args.n, par),
        "character": lambda: cmd_character(args.n),
        "fan-check": lambda: cmd_fan_check(args.n),
        "oracle": lambda: cmd_oracle(args.r),
        "table": lambda: cmd_table(args.n_max, par),
    }
    code, text, payload = dispatch[args.command]()
    out = json.dumps(payload) if args.format == "json" else text
    return code, out, args.out


def main(argv: Sequence[str] | None = None) -> int:
    try:
        code, out, path = run(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse reports usage errors this way
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
