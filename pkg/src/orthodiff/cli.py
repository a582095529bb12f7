"""Command line front end: ``orthodiff <command> [flags]``.

Exit codes: 0 pass, 1 fail, 2 usage error, 3 infeasible system.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import closedforms as cf
from . import identities
from .discover import Ansatz, InfeasibleSystem, discover, sobolev_tables
from .exact import RatParseError, parse_rat
from .families import KINDS, FamilySpec
from .operator import EQUATIONS, UnsupportedEquation, assemble, load_equation, verify_family

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def rational(text: str):
    try:
        return parse_rat(text)
    except RatParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def int_range(text: str) -> list:
    """``a..b`` inclusive, or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range a..b, got {text!r}") from None
    if lo > hi or lo < 0:
        raise argparse.ArgumentTypeError(f"empty or negative range {text!r}")
    return list(range(lo, hi + 1))


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _family(kind: str, alpha, beta) -> FamilySpec:
    try:
        return FamilySpec(kind, alpha, alpha if beta is None else beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read_pins(path: str) -> dict:
    pins = {}
    for lineno, raw in enumerate(_read(path).splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        label, sep, value = (s.strip() for s in line.partition("="))
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected <column> = <rational>")
        try:
            pins[label] = parse_rat(value)
        except RatParseError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
    return pins


# -- commands -----------------------------------------------------------------

def cmd_discover(args, out) -> int:
    try:
        ansatz = Ansatz.parse(_read(args.ansatz))
    except ValueError as exc:
        raise UsageError(f"{args.ansatz}: {exc}") from None
    spec = _family(args.family, args.alpha, args.beta)
    pins = _read_pins(args.pins) if args.pins else None
    try:
        result = discover(ansatz, spec, args.n_set, args.validate, pins)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    out.write(result.to_text())
    if result.status == "INFEASIBLE":
        return EXIT_INFEASIBLE
    return EXIT_PASS if result.status == "CONFIRMED" else EXIT_FAIL


def cmd_verify(args, out) -> int:
    try:
        if args.equation in EQUATIONS:
            op = assemble(args.equation, args.alpha, args.beta)
        else:
            op = load_equation(_read(args.equation), name=Path(args.equation).name)
    except (UnsupportedEquation, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if args.family is not None:
        spec = _family(args.family, args.alpha, args.beta)
    elif op.default_family is not None:
        spec = op.default_family
    else:
        raise UsageError("this equation has no default family; pass --family")
    lo = op.min_n if args.n_min is None else args.n_min
    if lo > args.n_max:
        raise UsageError("--n-min exceeds --n-max")
    report = verify_family(op, spec, range(lo, args.n_max + 1))
    out.write(report.to_text())
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_tables(args, out) -> int:
    groups = [args.group] if args.group else list(cf.GOLDEN_GROUPS)
    generated = None
    lines = []
    for group in groups:
        table = cf.golden(args.alpha, group)
        if group == "a":
            seq = cf.laguerre_a_seq(args.alpha)
        else:
            if generated is None:
                try:
                    generated = sobolev_tables(args.alpha)
                except InfeasibleSystem as exc:
                    out.write(f"{exc}\n")
                    return EXIT_INFEASIBLE
            seq = generated.get(cf.group_key(cf.GOLDEN_GROUPS[group]), cf.CoeffSeq(group))
        diff = cf.table_diff(table, seq)
        if diff:
            lines.append(f"@@ alpha={args.alpha} group={group}")
            lines += diff
    if lines:
        out.write("\n".join(lines) + "\n")
    return EXIT_FAIL if lines else EXIT_PASS


def cmd_identities(args, out) -> int:
    alphas = args.alpha or None
    try:
        if args.suite == "suma" and args.method != "partial":
            reports = [
                identities.check_suma(a, identities.SUMA_X, method=args.method)
                for a in (alphas or identities._DEFAULT_ALPHAS["suma"])
            ]
            report = identities.merge("suite suma", reports)
        else:
            report = identities.run_suite(args.suite, alphas, args.beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(report.to_text())
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_eval(args, out) -> int:
    spec = _family(args.family, args.alpha, args.beta)
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    out.write(f"{spec.member(args.n)}\n")
    return EXIT_PASS


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthodiff",
        description="Exact differential equations for generalized Laguerre and Jacobi polynomials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def family_flags(p, required=True):
        p.add_argument("--family", choices=KINDS, required=required)
        p.add_argument("--alpha", type=rational, default=parse_rat("0"))
        p.add_argument("--beta", type=rational, default=None)

    p = sub.add_parser("discover", help="solve for an operator of a given shape")
    family_flags(p)
    p.add_argument("--ansatz", required=True, help="ansatz config file (key = value lines)")
    p.add_argument("--n-set", type=int_range, required=True, help="degrees to solve on, a..b")
    p.add_argument("--validate", type=int_range, required=True, help="held-out degrees, c..d")
    p.add_argument("--pins", help="file of '<column> = <rational>' lines")
    p.set_defaults(run=cmd_discover)

    p = sub.add_parser("verify", help="apply an operator to a family")
    p.add_argument("--equation", required=True, help=f"one of {', '.join(EQUATIONS)} or an equation file")
    family_flags(p, required=False)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=None)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("tables", help="diff regenerated coefficient tables against the shipped ones")
    p.add_argument("--alpha", type=int, choices=(0, 1, 2), required=True)
    p.add_argument("--group", choices=tuple(cf.GOLDEN_GROUPS))
    p.set_defaults(run=cmd_tables)

    p = sub.add_parser("identities", help="run a suite of identity checks")
    p.add_argument("--suite", choices=identities.SUITES, required=True)
    p.add_argument("--alpha", type=rational, nargs="+")
    p.add_argument("--beta", type=rational, default=None)
    p.add_argument("--method", choices=("partial", "columns"), default="partial",
                   help="summation order for the suma suite")
    p.set_defaults(run=cmd_identities)

    p = sub.add_parser("eval", help="print a family member")
    family_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(run=cmd_eval)
    return parser


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        return args.run(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"orthodiff: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    sys.exit(run(argv))
