"""Command-line interface.

Subcommands: alpha (enclose one set's constant), bounds (closed forms),
scan (batch report), verify (global claims), kappa (chord-length
conversion).  Exit codes: 0 success or verification pass, 1 verification
fail, 2 invalid input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .bounds import bound_report
from .covering import AlphaInterval, CoveringInstance, certified_alpha, exact_alpha
from .harness import (
    emit_report,
    scan,
    verify_five_sixteenths,
    verify_quarter_conjecture,
)
from .numbers import canonicalize, kappa_from_alpha, lattice_params
from .oracle import oracle_alpha

__all__ = ["main"]


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse {text!r} as a rational or decimal")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kronalpha",
        description="Angular Kronecker constants of small integer sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alpha", help="enclose alpha(S) for a 3-element set")
    p.add_argument("n", type=int, nargs=3, metavar="N")
    p.add_argument(
        "--method", choices=("covering", "exact", "oracle"), default="covering"
    )
    p.add_argument("--tol", default="1e-4", help="covering tolerance (rational or decimal)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("bounds", help="closed-form bounds for a 3-element set")
    p.add_argument("n", type=int, nargs=3, metavar="N")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("scan", help="scan all classes up to a ceiling on n3")
    p.add_argument("--max-n3", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--exact", action="store_true", help="also compute exact values")
    p.add_argument("--timing", action="store_true", help="fill the time_ms column")

    p = sub.add_parser("verify", help="verify a global claim over all classes")
    p.add_argument("--max-n3", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--five-sixteenths", action="store_true")
    group.add_argument("--conjecture", action="store_true")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("kappa", help="chord length 2*sin(pi*alpha)")
    p.add_argument("--alpha", required=True, help="alpha as P/Q or decimal")

    return parser


def _interval_json(entries, iv: AlphaInterval) -> dict:
    ct = canonicalize(entries)
    return {
        "set": list(entries),
        "canonical": list(ct.entries),
        "method": iv.method,
        "alpha_lo": f"{iv.lo.numerator}/{iv.lo.denominator}",
        "alpha_hi": f"{iv.hi.numerator}/{iv.hi.denominator}",
        "alpha_exact": (
            None
            if iv.exact is None
            else f"{iv.exact.numerator}/{iv.exact.denominator}"
        ),
        "alpha_lo_float": float(iv.lo),
        "alpha_hi_float": float(iv.hi),
    }


def _cmd_alpha(args) -> int:
    entries = tuple(args.n)
    if args.method == "oracle":
        iv = oracle_alpha(entries)
    else:
        ct = canonicalize(entries)
        if not ct.distinct_abs:
            raise ValueError(
                f"absolute values of {entries} are not distinct; "
                "the lattice methods do not apply (use --method oracle)"
            )
        inst = CoveringInstance(ct)
        if args.method == "exact":
            val = exact_alpha(inst)
            iv = AlphaInterval(lo=val, hi=val, exact=val, method="exact")
        else:
            iv = certified_alpha(inst, _parse_rational(args.tol))

    if args.json:
        import json

        print(json.dumps(_interval_json(entries, iv), indent=2))
        return 0
    ct = canonicalize(entries)
    print(f"set: {entries}  canonical: {ct.entries}")
    print(f"method: {iv.method}")
    if iv.exact is not None:
        print(f"alpha = {iv.exact} ({float(iv.exact):.12g})")
    else:
        print(
            f"alpha in [{float(iv.lo):.12g}, {float(iv.hi):.12g}]"
            f"  (width {float(iv.width):.3g})"
        )
    print(f"kappa in [{kappa_from_alpha(iv.lo):.12g}, {kappa_from_alpha(iv.hi):.12g}]")
    return 0


def _fmt_opt(x: Optional[Fraction]) -> str:
    if x is None:
        return "-"
    return f"{x} ({float(x):.12g})"


def _cmd_bounds(args) -> int:
    entries = tuple(args.n)
    ct = canonicalize(entries)
    rep = bound_report(ct)
    m = r = None
    if ct.distinct_abs:
        lp = lattice_params(ct)
        m, r = lp.m, lp.r
    if args.json:
        import json

        def rat(x):
            return None if x is None else f"{x.numerator}/{x.denominator}"

        print(
            json.dumps(
                {
                    "set": list(entries),
                    "canonical": list(ct.entries),
                    "m": m,
                    "r": r,
                    "rectangular": rep.rectangular,
                    "trivial": rat(rep.trivial),
                    "lower": rat(rep.lower),
                    "e1": rat(rep.e1),
                    "upper": rat(rep.upper),
                    "lambda": rat(rep.lam),
                },
                indent=2,
            )
        )
        return 0
    print(f"set: {entries}  canonical: {ct.entries}  m={m}  r={r}")
    if rep.rectangular:
        print("rectangular lattice (r = 0): shear bounds unavailable")
    print(f"trivial: {_fmt_opt(rep.trivial)}")
    print(f"lower:   {_fmt_opt(rep.lower)}")
    print(f"e1:      {_fmt_opt(rep.e1)}")
    print(f"upper:   {_fmt_opt(rep.upper)}")
    print(f"lambda:  {_fmt_opt(rep.lam)}")
    return 0


def _cmd_scan(args) -> int:
    records = scan(
        args.max_n3,
        jobs=args.jobs,
        exact=args.exact,
        timing=args.timing,
    )
    text = emit_report(records, format=args.format, path=args.out)
    if args.out is None:
        sys.stdout.write(text)
    else:
        print(f"wrote {len(records)} records to {args.out}")
    return 0


def _cmd_verify(args) -> int:
    if args.five_sixteenths:
        outcome = verify_five_sixteenths(args.max_n3, jobs=args.jobs)
        claim_text = "alpha(S) <= 5/16 for distinct absolute values"
    else:
        outcome = verify_quarter_conjecture(args.max_n3, jobs=args.jobs)
        claim_text = "alpha(S) <= 1/4, equality only at the {1,2,3} class"
    print(f"claim: {outcome.claim_id} ({claim_text})")
    print(f"classes checked: {outcome.checked} (n3 <= {args.max_n3})")
    print(
        f"worst set: {outcome.worst_set}  alpha in "
        f"[{outcome.worst_lo}, {outcome.worst_hi}]"
        f" = [{float(outcome.worst_lo):.12g}, {float(outcome.worst_hi):.12g}]"
    )
    print(f"result: {'PASS' if outcome.passed else 'FAIL'}")
    return 0 if outcome.passed else 1


def _cmd_kappa(args) -> int:
    alpha = _parse_rational(args.alpha)
    if not 0 <= alpha <= Fraction(1, 2):
        raise ValueError(f"alpha must lie in [0, 1/2], got {alpha}")
    print(f"alpha = {alpha}")
    print(f"kappa = {kappa_from_alpha(alpha):.12g}")
    return 0


_DISPATCH = {
    "alpha": _cmd_alpha,
    "bounds": _cmd_bounds,
    "scan": _cmd_scan,
    "verify": _cmd_verify,
    "kappa": _cmd_kappa,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
