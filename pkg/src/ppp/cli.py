"""Command-line front end.

Exit codes: 0 success / certified, 1 refuted, 2 usage or input error,
3 internal disagreement between the two primary certifiers (a bug trap).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import bounds as bounds_mod
from .arith import lcm_table, primorial_table
from .certify import (
    CertReport,
    certify_primary_direct,
    certify_primary_hall,
    certify_pseudo_hall,
)
from .construct import construct_genuine, phi_geometric, phi_primorial, phi_table
from .egfinv import egf_triple
from .recur import (
    GuessBudget,
    LeadingZeroError,
    NonIntegralError,
    PolyRecurrence,
    apply_recurrence,
    guess_recurrence,
    verify_recurrence,
)
from .transforms import IntSequence, binomial_transform, inverse_binomial_transform

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_DISAGREE = 3


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# Sequence file format: one base-10 integer per line, '#' comments; or a JSON
# object {"offset": n, "terms": ["...", ...]}.


def parse_sequence(text: str) -> IntSequence:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
            terms = [int(t) for t in obj["terms"]]
            offset = int(obj.get("offset", 0))
            return IntSequence.of(terms, offset)
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"bad JSON sequence: {exc}") from exc
    terms = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        # tolerate the unicode minus
        line = line.replace("−", "-")
        try:
            terms.append(int(line))
        except ValueError as exc:
            raise InputError(f"line {lineno}: not an integer: {line!r}") from exc
    if not terms:
        raise InputError("empty sequence input")
    return IntSequence.of(terms)


def emit_sequence(seq: IntSequence, out) -> None:
    if seq.offset != 0:
        out.write(json.dumps(
            {"offset": seq.offset, "terms": [str(t) for t in seq.terms]},
            sort_keys=True, separators=(",", ":"),
        ) + "\n")
        return
    for t in seq.terms:
        out.write(f"{t}\n")


def _read_stdin_sequence(args) -> IntSequence:
    text = sys.stdin.read()
    return parse_sequence(text)


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


# ---------------------------------------------------------------------------
# Subcommands


def cmd_sieve(args) -> int:
    table = primorial_table(args.n) if args.kind == "primorial" else lcm_table(args.n)
    for v in table:
        print(v)
    return EXIT_OK


def cmd_transform(args) -> int:
    seq = _read_stdin_sequence(args)
    emit_sequence(binomial_transform(seq), sys.stdout)
    return EXIT_OK


def cmd_inverse_transform(args) -> int:
    seq = _read_stdin_sequence(args)
    emit_sequence(inverse_binomial_transform(seq), sys.stdout)
    return EXIT_OK


def cmd_reindex(args) -> int:
    seq = _read_stdin_sequence(args)
    emit_sequence(IntSequence(seq.terms, args.to), sys.stdout)
    return EXIT_OK


def cmd_certify(args) -> int:
    seq = _read_stdin_sequence(args)
    reports: list[CertReport] = []
    if args.mode in ("primary-direct", "both"):
        reports.append(certify_primary_direct(seq))
    if args.mode in ("primary-hall", "both"):
        reports.append(certify_primary_hall(seq))
    if args.mode == "pseudo-hall":
        reports.append(certify_pseudo_hall(seq))
    if args.json:
        print(_canonical_json([r.to_json_dict() for r in reports]))
    else:
        for r in reports:
            print(r.describe())
    if args.mode == "both" and reports[0].certified != reports[1].certified:
        print("internal error: direct and transform certifiers disagree", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK if all(r.certified for r in reports) else EXIT_REFUTED


def _parse_phi(preset: str):
    if preset == "primorial":
        return phi_primorial()
    if preset.startswith("geometric:"):
        return phi_geometric(_parse_fraction(preset.split(":", 1)[1]))
    if preset.startswith("file:"):
        path = preset.split(":", 1)[1]
        try:
            with open(path, encoding="utf-8") as f:
                values = [Fraction(line.strip()) for line in f
                          if line.strip() and not line.startswith("#")]
        except OSError as exc:
            raise InputError(f"cannot read growth table: {exc}") from exc
        return phi_table(values)
    raise InputError(f"unknown growth preset: {preset!r}")


def cmd_construct(args) -> int:
    phi = _parse_phi(args.phi)
    try:
        a, b, trace = construct_genuine(phi, args.n)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    if args.trace:
        print("#     n  c  u  v  w  b  a")
        for st in trace.steps:
            print(f"# {st.n} {st.c} {st.u} {st.v} {st.w} {st.b} {st.a}")
    emit_sequence(b if args.emit == "b" else a, sys.stdout)
    return EXIT_OK


def cmd_egf_invert(args) -> int:
    seq = _read_stdin_sequence(args)
    triple = egf_triple(seq)
    print(_canonical_json(triple.to_json_dict()))
    return EXIT_OK


def _load_recurrence(path: str) -> PolyRecurrence:
    try:
        with open(path, encoding="utf-8") as f:
            return PolyRecurrence.from_json_dict(json.load(f))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot load recurrence: {exc}") from exc


def cmd_guess(args) -> int:
    seq = _read_stdin_sequence(args)
    budget = GuessBudget(args.smax, args.dmax, args.margin)
    try:
        rec = guess_recurrence(seq, budget)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if rec is None:
        print(_canonical_json({"found": False}))
        return EXIT_REFUTED
    print(_canonical_json({"found": True, "recurrence": rec.to_json_dict(),
                           "verified_up_to": len(seq) - 1}))
    return EXIT_OK


def cmd_verify(args) -> int:
    seq = _read_stdin_sequence(args)
    rec = _load_recurrence(args.recurrence)
    report = verify_recurrence(seq, rec)
    if args.json:
        print(_canonical_json(report.to_json_dict()))
    else:
        print(report.describe())
    return EXIT_OK if report.certified else EXIT_REFUTED


def cmd_apply(args) -> int:
    seq = _read_stdin_sequence(args)
    rec = _load_recurrence(args.recurrence)
    try:
        out = apply_recurrence(rec, seq, args.n)
    except (LeadingZeroError, NonIntegralError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    emit_sequence(out, sys.stdout)
    return EXIT_OK


def cmd_bounds(args) -> int:
    bits = args.precision or int(os.environ.get("PPP_PRECISION_BITS", "256"))
    ctx = bounds_mod.PrecisionCtx(bits=bits)
    try:
        delta = bounds_mod.Delta.parse(args.delta)
        report = bounds_mod.bounds_report(_parse_fraction(args.c), delta, ctx)
    except (bounds_mod.DomainError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    print(_canonical_json(report.to_json_dict()))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ppp",
        description="Exact toolkit for primary pseudo-polynomial sequences",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="print primorial or lcm prefixes")
    p.add_argument("--kind", choices=["primorial", "lcm"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_sieve)

    p = sub.add_parser("transform", help="binomial transform (stdin -> stdout)")
    p.set_defaults(fn=cmd_transform)

    p = sub.add_parser("inverse-transform", help="inverse binomial transform")
    p.set_defaults(fn=cmd_inverse_transform)

    p = sub.add_parser("reindex", help="relabel a sequence's starting index")
    p.add_argument("--to", type=int, default=0)
    p.set_defaults(fn=cmd_reindex)

    p = sub.add_parser("certify", help="congruence/divisibility certification")
    p.add_argument("--mode", required=True,
                   choices=["primary-direct", "primary-hall", "pseudo-hall", "both"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("construct", help="build a genuine sequence above a growth target")
    p.add_argument("--phi", required=True,
                   help="primorial | geometric:NUM/DEN | file:PATH")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit", choices=["a", "b"], default="a")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("egf-invert", help="reciprocal-EGF triple (stdin a -> JSON b,c,u)")
    p.set_defaults(fn=cmd_egf_invert)

    p = sub.add_parser("guess", help="guess a polynomial-coefficient recurrence")
    p.add_argument("--smax", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--margin", type=int, default=10)
    p.set_defaults(fn=cmd_guess)

    p = sub.add_parser("verify", help="verify a recurrence against a sequence")
    p.add_argument("--recurrence", required=True, help="path to recurrence JSON")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("apply", help="extend a sequence by a recurrence")
    p.add_argument("--recurrence", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_apply)

    p = sub.add_parser("bounds", help="effective recurrence-size bounds report")
    p.add_argument("--c", required=True, help="growth constant, NUM/DEN")
    p.add_argument("--delta", required=True, help="growth base, NUM/DEN or e^NUM/DEN")
    p.add_argument("--precision", type=int, default=None,
                   help="working precision bits (default 256 or PPP_PRECISION_BITS)")
    p.set_defaults(fn=cmd_bounds)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, ValueError, TypeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
