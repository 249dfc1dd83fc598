"""Command-line front end.

Exit codes: 0 when the answer is determined, 2 when it is unknown or the
budget/precision ran out, 1 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

from .errors import BreuilError, BudgetExceeded, NoLambdaInField, NoMorphism, PrecisionTooLow
from .field import make_field
from .fileio import (
    format_bundle,
    format_module,
    format_series,
    format_verdict,
    is_bundle_text,
    parse_bundle,
    parse_module,
    read_text,
    write_text,
)
from .finite_length import search_finite_length_pairs, search_precision
from .healthiness import CHECK_NAMES, build_counterexample, default_precision, diagnose
from .modules import dualize, solve_mu_p_morphism, validate
from .series import RingContext, find_normalizing_lambda, shear, weierstrass_preparation

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2

# probe precision used to read off the order of an input before choosing N
PROBE_PRECISION = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _field_args(p: argparse.ArgumentParser, d_default: int | None = 2) -> None:
    p.add_argument("--p", type=int, required=True, help="characteristic")
    p.add_argument("--m", type=int, default=1, help="degree of the ground field over F_p")
    if d_default is not None:
        p.add_argument("--d", type=int, default=d_default, help="number of variables")
    p.add_argument("--precision", type=int, default=None, help="truncation degree N")


def _hint_args(p: argparse.ArgumentParser) -> None:
    for name in ("t", "u", "v", "a", "b", "c"):
        p.add_argument(f"--{name}", default=None, help="counterexample parameter (series)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="breuilmod", description="Breuil modules in characteristic p and healthiness diagnosis")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("diagnose", help="decide (p-)quasi-healthiness of W(k)[[T]]/(p - h)")
    _field_args(p)
    p.add_argument("--h", required=True, help="the series hbar")
    p.add_argument("--case", choices=["i", "ii", "iii"], default=None)
    _hint_args(p)
    p.add_argument("--out", default="witness", help="prefix for the witness bundle")

    p = sub.add_parser("counterexample", help="build and verify a counterexample bundle")
    _field_args(p)
    p.add_argument("--h", required=True)
    p.add_argument("--case", choices=["i", "ii", "iii"], required=True)
    _hint_args(p)
    p.add_argument("--out", default="counterexample", help="output prefix")

    p = sub.add_parser("validate", help="validate a module or bundle file")
    p.add_argument("--module", required=True)

    p = sub.add_parser("dualize", help="write the dual of a module file")
    p.add_argument("--module", required=True)
    p.add_argument("--out", default=None, help="output path (default: stdout)")

    p = sub.add_parser("oracle", help="bounded search for finite-length pairs")
    _field_args(p, d_default=None)
    p.add_argument("--h", required=True)
    p.add_argument("--max-colength", type=int, default=4)
    p.add_argument("--max-degree", type=int, default=3)

    p = sub.add_parser("p11", help="solve g*a = sigma(a)*T^(p-1) over k[[T]]")
    _field_args(p, d_default=None)
    p.add_argument("--g", required=True, help="series in T")
    p.add_argument("--e", type=int, default=None, help="ramification index (default p-1)")

    p = sub.add_parser("prepare", help="Weierstrass preparation of a series in two variables")
    _field_args(p, d_default=None)
    p.add_argument("--h", required=True)
    return parser


# -- helpers ------------------------------------------------------------------

def _field(args):
    try:
        return make_field(args.p, args.m)
    except BreuilError as exc:
        raise UsageError(f"--p/--m: {exc}") from None


def _parse_flag(flag: str, text: str, ctx: RingContext):
    try:
        return ctx.parse(text)
    except BreuilError as exc:
        raise UsageError(f"--{flag}: {exc}") from None


def _context_for(args, text: str, d: int, minimum: int = 0) -> RingContext:
    """Working context: --precision, or max(2p, 2e) from the order of the input."""
    F = _field(args)
    if d < 1:
        raise UsageError("--d: must be positive")
    if args.precision is not None:
        if args.precision < 0:
            raise UsageError("--precision: must be non-negative")
        return RingContext(F, d, args.precision)
    probe = _parse_flag("h", text, RingContext(F, d, PROBE_PRECISION))
    o = probe.order()
    e = o.value if o.known else PROBE_PRECISION
    return RingContext(F, d, max(default_precision(F.p, e), minimum))


def _hints(args, ctx: RingContext) -> dict:
    hints = {}
    for name in ("t", "u", "v", "a", "b", "c"):
        val = getattr(args, name)
        if val is not None:
            hints[name] = _parse_flag(name, val, ctx)
    return hints


# -- commands -----------------------------------------------------------------

def cmd_diagnose(args, out) -> int:
    ctx = _context_for(args, args.h, args.d)
    h = _parse_flag("h", args.h, ctx)
    hints = _hints(args, ctx)
    if args.case:
        hints["case"] = args.case
    v = diagnose(h, hints or None)
    witness_file = None
    if v.witness is not None:
        witness_file = f"{args.out}.bundle"
        write_text(witness_file, format_bundle(v.witness))
    out.write(format_verdict(v, witness_file))
    return EXIT_OK if v.determined else EXIT_UNKNOWN


def cmd_counterexample(args, out) -> int:
    ctx = _context_for(args, args.h, args.d)
    h = _parse_flag("h", args.h, ctx)
    b = build_counterexample(args.case, h, **_hints(args, ctx))
    paths = {"M1": f"{args.out}.M1.bmod", "M2": f"{args.out}.M2.bmod", "bundle": f"{args.out}.bundle"}
    write_text(paths["M1"], format_module(b.M1))
    write_text(paths["M2"], format_module(b.M2))
    write_text(paths["bundle"], format_bundle(b))
    out.write(f"case={b.case}\n")
    for k in CHECK_NAMES:
        out.write(f"{k}={str(b.checks[k]).lower()}\n")
    out.write(f"source_file={paths['M1']}\ntarget_file={paths['M2']}\nwitness_file={paths['bundle']}\n")
    return EXIT_OK


def cmd_validate(args, out) -> int:
    text = read_text(args.module)
    if is_bundle_text(text):
        b = parse_bundle(text)
        out.write(f"case={b.case}\n")
        for k, val in b.checks.items():
            out.write(f"{k}={str(val).lower()}\n")
        return EXIT_OK if b.ok else EXIT_ERROR
    M = parse_module(text)
    rep = validate(M)
    out.write(f"certified={str(rep.certified).lower()}\nconnected={str(rep.connected).lower()}\n"
              f"exact={str(rep.exact).lower()}\n")
    for d in rep.details:
        out.write(f"detail={d}\n")
    return EXIT_OK


def cmd_dualize(args, out) -> int:
    M = parse_module(read_text(args.module))
    text = format_module(dualize(M))
    if args.out:
        write_text(args.out, text)
        out.write(f"dual_file={args.out}\n")
    else:
        out.write(text)
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    need = search_precision(args.p, args.max_colength)
    ctx = _context_for(args, args.h, 2, minimum=need)
    h = _parse_flag("h", args.h, ctx)
    try:
        res = search_finite_length_pairs(h, args.max_colength, args.max_degree)
    except BudgetExceeded as exc:
        out.write("result=budget_exceeded\n")
        for k, v in exc.statistics.items():
            out.write(f"{k}={v}\n")
        return EXIT_UNKNOWN
    out.write(f"result={'witness' if res.found else 'none'}\n")
    for k, v in res.statistics.items():
        out.write(f"{k}={v}\n")
    if res.found:
        w = res.witness
        out.write("summands=" + " | ".join(str(list(a.gens)) for a in w.summands) + "\n")
        out.write("phi=" + " | ".join("; ".join(str(entry) for entry in row) for row in w.phi) + "\n")
    return EXIT_OK


def cmd_p11(args, out) -> int:
    F = _field(args)
    prec = args.precision if args.precision is not None else 3 * args.p
    ctx = RingContext(F, 1, prec)
    g = _parse_flag("g", args.g, ctx)
    e = args.e if args.e is not None else args.p - 1
    try:
        sols = solve_mu_p_morphism(g, e, prec)
    except NoMorphism as exc:
        out.write(f"result=none\nreason={exc}\n")
        return EXIT_OK
    out.write(f"result=solution\nord_a={sols[0].ord_a}\n")
    sf = sols[0].a.field
    out.write(f"field=F_{sf.q}\n")
    for s in sols:
        out.write(f"a={format_series(s.a)}\n")
    return EXIT_OK


def cmd_prepare(args, out) -> int:
    ctx = _context_for(args, args.h, 2)
    h = _parse_flag("h", args.h, ctx)
    lam = find_normalizing_lambda(h)
    f = shear(h, lam) if lam.code else h
    unit, wpoly = weierstrass_preparation(f)
    out.write(f"lambda={lam}\ne={len(wpoly)}\nunit={format_series(unit)}\n")
    for i, a in enumerate(wpoly):
        out.write(f"a{i}={format_series(a)}\n")
    return EXIT_OK


COMMANDS = {
    "diagnose": cmd_diagnose,
    "counterexample": cmd_counterexample,
    "validate": cmd_validate,
    "dualize": cmd_dualize,
    "oracle": cmd_oracle,
    "p11": cmd_p11,
    "prepare": cmd_prepare,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ERROR
    except PrecisionTooLow as exc:
        err.write(f"error: {exc}; raise --precision\n")
        return EXIT_UNKNOWN
    except NoLambdaInField as exc:
        err.write(f"error: {exc} (try a larger --m)\n")
        return EXIT_ERROR
    except BreuilError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ERROR


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
