"""Command-line interface: `llct VERB ...` with deterministic JSON output.

Exit codes: 0 ok, 2 parse error, 3 math-domain error, 4 uncertified
truncation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import session
from .dsl import ParseError, SemanticError, parse_wd, parse_scalar, parse_matrix
from .exact import DomainError
from .factors import (epsilon, epsilon_ratio_check, gamma, l_inverse,
                      l_ss_inverse, rs_l_inverse, sign_constancy_check)
from .oracle import classify, realize, tensor_matrix
from .points import extended_point_of
from .segments import is_generic_irreducible, llc_gen
from .wd import WDFamily, check_interpolation, tensor
from .zeta import (SatakeData, UncertifiedTruncation, invariant_pairing_check,
                   gl2_gamma_functional_equation_check, zeta_gl_n_gl1,
                   zeta_gl_n_gl_n)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_UNCERTIFIED = 4


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _parse_params(text: str) -> SatakeData:
    return SatakeData(tuple(parse_scalar(p.strip()) for p in text.split(",")))


def _parse_half(text: str) -> Fraction:
    v = Fraction(text)
    if (2 * v).denominator != 1:
        raise SemanticError(f"m must be a half-integer, got {text}")
    return v


def cmd_classify(args):
    r = parse_wd(args.expr)
    _emit(extended_point_of(r).render())


def cmd_llc(args):
    r = parse_wd(args.expr)
    ms = llc_gen(r)
    _emit({"segments": [s.render() for s in ms.segments],
           "ordering_mode": ms.ordering_mode.value,
           "generic_irreducible": is_generic_irreducible(ms)})


def cmd_L(args):
    _emit({"L_inverse": l_inverse(parse_wd(args.expr)).render()})


def cmd_Lss(args):
    _emit({"Lss_inverse": l_ss_inverse(parse_wd(args.expr)).render()})


def cmd_rsL(args):
    r1, r2 = parse_wd(args.expr1), parse_wd(args.expr2)
    shift2 = int(2 * _parse_half(args.shift))
    _emit({"RS_L_inverse": rs_l_inverse(r1, r2, shift2).render()})


def cmd_gamma(args):
    rf, unit = gamma(parse_wd(args.expr))
    _emit({"gamma": rf.render(), "unit": unit.render()})


def cmd_eps(args):
    _emit(epsilon(parse_wd(args.expr)).render())


def cmd_zeta(args):
    m = _parse_half(args.m)
    d1 = _parse_params(args.params)
    if args.n1 != d1.n:
        raise SemanticError(f"--n1 {args.n1} does not match {d1.n} parameters")
    if args.n2 == 1:
        res = zeta_gl_n_gl1(d1, m, args.bound, strict=True)
    elif args.n2 == args.n1:
        if not args.params2:
            raise SemanticError("--params2 required for the equal-rank integral")
        d2 = _parse_params(args.params2)
        res = zeta_gl_n_gl_n(d1, d2, m, args.bound, strict=True)
    else:
        raise SemanticError("supported ranks: n2 = 1 or n2 = n1")
    _emit(res.render())


def cmd_pairing(args):
    d = _parse_params(args.params)
    _emit({"ok": invariant_pairing_check(d, args.bound)})


def cmd_family_check(args):
    if args.matrix:
        rows = parse_matrix(args.matrix)
        fam = WDFamily(matrix_n=tuple(tuple(r) for r in rows))
    else:
        fam = WDFamily(rep=parse_wd(args.expr))
    res = check_interpolation(fam, Fraction(args.at))
    _emit({"at": str(Fraction(args.at)), "result": res.value})


def cmd_oracle(args):
    if args.mode == "roundtrip":
        r = parse_wd(args.expr)
        back = classify(realize(r))
        _emit({"input": r.render(), "classified": back.render(),
               "ok": back == r})
        return
    if args.mode == "tensor":
        r1, r2 = parse_wd(args.expr), parse_wd(args.expr2)
        structured = tensor(r1, r2)
        mt = tensor_matrix(realize(r1), realize(r2))
        oracle_side = classify(mt)
        _emit({"structured": structured.render(),
               "oracle": oracle_side.render(),
               "agree": structured == oracle_side})
        return
    raise SemanticError(f"unknown oracle mode {args.mode!r}")


def cmd_check(args):
    if args.what == "eps-ratio":
        _emit({"ok": epsilon_ratio_check(parse_wd(args.expr))})
        return
    if args.what == "sign":
        fam = WDFamily(rep=parse_wd(args.expr),
                       bad_points=tuple(Fraction(b) for b in args.bad.split(","))
                       if args.bad else ())
        rep = sign_constancy_check(fam)
        _emit({"ok": rep.ok,
               "signs": {str(a): s for a, s in rep.signs.items()},
               "skipped": len(rep.skipped)})
        return
    if args.what == "feq":
        d = _parse_params(args.params)
        _emit({"ok": gl2_gamma_functional_equation_check(d, args.bound)})
        return
    raise SemanticError(f"unknown check {args.what!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="llct",
        description="exact local Langlands / Weil-Deligne computations")
    ap.add_argument("--q", type=int, default=3,
                    help="residue cardinality (fixed per session, default 3)")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify", help="extended Bernstein point of a rep")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("llc", help="generic Langlands multisegment")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_llc)

    p = sub.add_parser("L", help="inverse L-factor")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_L)

    p = sub.add_parser("Lss", help="semisimple inverse L-factor")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_Lss)

    p = sub.add_parser("rsL", help="Rankin-Selberg inverse L-factor")
    p.add_argument("expr1")
    p.add_argument("expr2")
    p.add_argument("--shift", default="0", help="substitute T -> q^{-shift} T")
    p.set_defaults(fn=cmd_rsL)

    p = sub.add_parser("gamma", help="gamma factor (ratio of Lss, unit)")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_gamma)

    p = sub.add_parser("eps", help="epsilon factor (unit, conductor)")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_eps)

    p = sub.add_parser("zeta", help="truncated unramified zeta integral")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--params", required=True, help="comma-separated scalars")
    p.add_argument("--params2", default="", help="second Satake tuple (n2=n1)")
    p.add_argument("--m", required=True, help="half-integer shift")
    p.add_argument("--bound", type=int, default=40)
    p.set_defaults(fn=cmd_zeta)

    p = sub.add_parser("pairing", help="invariant-pairing normalization check")
    p.add_argument("--params", required=True)
    p.add_argument("--bound", type=int, default=40)
    p.set_defaults(fn=cmd_pairing)

    p = sub.add_parser("family-check", help="monodromy interpolation at a point")
    p.add_argument("expr", nargs="?", default="")
    p.add_argument("--matrix", default="", help="nilpotent matrix over Q[x]")
    p.add_argument("--at", required=True, help="rational specialization point")
    p.set_defaults(fn=cmd_family_check)

    p = sub.add_parser("oracle", help="matrix-oracle debugging commands")
    p.add_argument("mode", choices=["roundtrip", "tensor"])
    p.add_argument("expr")
    p.add_argument("expr2", nargs="?", default="")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("check", help="identity checks (eps-ratio, sign, feq)")
    p.add_argument("what", choices=["eps-ratio", "sign", "feq"])
    p.add_argument("expr", nargs="?", default="")
    p.add_argument("--params", default="")
    p.add_argument("--bound", type=int, default=40)
    p.add_argument("--bad", default="", help="bad points of the family")
    p.set_defaults(fn=cmd_check)

    return ap


def _join_negative_values(argv):
    """Let `--m -1/2` parse: argparse would read the value as a flag."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--m", "--shift", "--at") and i + 1 < len(argv) \
                and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(_join_negative_values(
        list(sys.argv[1:] if argv is None else argv)))
    session.set_q(args.q)
    try:
        args.fn(args)
    except ParseError as e:
        _emit({"error": "parse", "message": str(e)})
        return EXIT_PARSE
    except UncertifiedTruncation as e:
        _emit({"error": "uncertified", "message": str(e)})
        return EXIT_UNCERTIFIED
    except (SemanticError, DomainError, ValueError, ZeroDivisionError) as e:
        _emit({"error": "domain", "message": str(e)})
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
