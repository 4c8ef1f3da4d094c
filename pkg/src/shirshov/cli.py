"""Command-line front end.

Subcommands:

* ``nf``         — normal form of an expression (lie or assoc mode)
* ``basis``      — linear basis of the free system, by degree
* ``lyndon``     — Lyndon-Shirshov words over plain generators
* ``bracket``    — standard bracketing of a Lyndon-Shirshov word
* ``check-gsb``  — reduce all compositions of a rule system
* ``oracle-dim`` — exact quotient dimensions per degree

Generators are named x1, x2, … and ordered descending by index (x1 is the
greatest).  Rationals are read and printed as p or p/q.  Output is
deterministic: identical invocations produce byte-identical text.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .algebra import AlgebraConfig, Poly, leading
from .lyndon import enumerate_alsw_by_degree, is_alsw, shirshov_bracket
from .reference import oracle_quotient_dim
from .rota_baxter import DrblSystem, drbl_nf, enumerate_basis, instantiate_rules
from .syntax import TermSyntaxError, format_poly, format_term, parse_term, parse_word
from .words import Alphabet, NaLeaf, NaPair, Prime, Word


def make_alphabet(gens: int, with_operator: bool = True) -> Alphabet:
    """x1 > x2 > … > xN, optionally with the unary operator P."""
    if gens < 1:
        raise ValueError("need at least one generator")
    names = tuple("x%d" % (i + 1) for i in range(gens))
    return Alphabet(names, (("P", 1),) if with_operator else ())


def _infer_gens(text: str) -> int:
    """Number of generators mentioned in an expression (at least 1)."""
    indices = [int(m) for m in re.findall(r"\bx(\d+)\b", text)]
    return max(indices) if indices else 1


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a rational: %r" % text)


def _cmd_nf(args) -> int:
    alphabet = make_alphabet(_infer_gens(args.expr))
    config = AlgebraConfig(alphabet, args.weight)
    try:
        value = parse_term(args.expr, alphabet)
    except TermSyntaxError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    sys_ = DrblSystem(config)
    if args.mode == "lie":
        nf = drbl_nf(value, sys_, max_degree=args.max_deg)
        print(format_term(nf, config))
        return 0
    if isinstance(value, (NaLeaf, NaPair)):
        from .algebra import lie_expand

        value = lie_expand(config, value)
    if value.max_degree() > args.max_deg:
        print(
            "error: degree %d exceeds --max-deg %d"
            % (value.max_degree(), args.max_deg),
            file=sys.stderr,
        )
        return 2
    engine = sys_.system(args.max_deg)
    print(format_poly(engine.reduce(value, mode="assoc"), config))
    return 0


def _cmd_basis(args) -> int:
    alphabet = make_alphabet(args.gens)
    config = AlgebraConfig(alphabet, args.weight)
    basis = enumerate_basis(DrblSystem(config), args.max_deg)
    if args.json:
        payload = {
            "lambda": str(args.weight),
            "degrees": [
                {
                    "degree": d,
                    "count": len(basis[d]),
                    "elements": [format_term(t, config) for t in basis[d]],
                }
                for d in sorted(basis)
            ],
        }
        print(json.dumps(payload, indent=2))
        return 0
    for d in sorted(basis):
        print("degree %d: %d" % (d, len(basis[d])))
        for t in basis[d]:
            print("  %s" % format_term(t, config))
    return 0


def _cmd_lyndon(args) -> int:
    alphabet = make_alphabet(args.gens, with_operator=False)
    by_deg = enumerate_alsw_by_degree(alphabet, args.max_deg)
    for d in sorted(by_deg):
        words = by_deg[d]
        print("degree %d: %d" % (d, len(words)))
        for w in words:
            print("  %s" % format_term(w))
    return 0


def _cmd_bracket(args) -> int:
    alphabet = make_alphabet(_infer_gens(args.word))
    try:
        w = parse_word(args.word, alphabet)
    except TermSyntaxError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    if not is_alsw(w, alphabet):
        print("error: not a Lyndon-Shirshov word: %s" % format_term(w), file=sys.stderr)
        return 1
    print(format_term(shirshov_bracket(w, alphabet)))
    return 0


def _cmd_check_gsb(args) -> int:
    alphabet = make_alphabet(args.gens)
    config = AlgebraConfig(alphabet, args.weight)
    sys_ = DrblSystem(config)
    s1_only = args.system == "s1"
    engine = sys_.system(args.max_deg, s1_only=s1_only)
    mode = "assoc" if s1_only else "lie"
    report = engine.is_gsb(mode=mode)
    print(
        "system=%s gens=%d lambda=%s max-deg=%d mode=%s"
        % (args.system, args.gens, args.weight, args.max_deg, mode)
    )
    print(report.summary())
    if not report.passed:
        for amb, residue in report.failures:
            left = engine.rules[amb.left.rule_index]
            right = engine.rules[amb.right.rule_index]
            print(
                "  %s at %s: %s[%d] over %s[%d], residue %s"
                % (
                    amb.kind,
                    format_term(amb.word),
                    left.origin[0],
                    amb.left.lift,
                    right.origin[0],
                    amb.right.lift,
                    format_poly(residue, config),
                )
            )
        return 1
    return 0


def _cmd_oracle_dim(args) -> int:
    alphabet = make_alphabet(args.gens)
    config = AlgebraConfig(alphabet, args.weight)
    sys_ = DrblSystem(config)
    dims = oracle_quotient_dim(config, instantiate_rules(sys_, args.max_deg), args.max_deg)
    for d, dim in enumerate(dims, start=1):
        print("degree %d: %d" % (d, dim))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shirshov",
        description="Exact normal forms and basis checks for free "
        "differential Lie Rota-Baxter algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", help="normal form of an expression")
    p.add_argument("--lambda", dest="weight", type=_fraction, default=Fraction(0))
    p.add_argument("--mode", choices=("lie", "assoc"), default="lie")
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("expr")
    p.set_defaults(func=_cmd_nf)

    p = sub.add_parser("basis", help="linear basis by degree")
    p.add_argument("--gens", type=int, required=True)
    p.add_argument("--lambda", dest="weight", type=_fraction, default=Fraction(0))
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("lyndon", help="Lyndon-Shirshov words over generators")
    p.add_argument("--gens", type=int, required=True)
    p.add_argument("--max-deg", type=int, required=True)
    p.set_defaults(func=_cmd_lyndon)

    p = sub.add_parser("bracket", help="standard bracketing of a word")
    p.add_argument("word")
    p.set_defaults(func=_cmd_bracket)

    p = sub.add_parser("check-gsb", help="reduce all compositions")
    p.add_argument("--system", choices=("drbl", "s1"), required=True)
    p.add_argument("--gens", type=int, default=2)
    p.add_argument("--lambda", dest="weight", type=_fraction, default=Fraction(0))
    p.add_argument("--max-deg", type=int, required=True)
    p.set_defaults(func=_cmd_check_gsb)

    p = sub.add_parser("oracle-dim", help="exact quotient dimensions")
    p.add_argument("--gens", type=int, required=True)
    p.add_argument("--lambda", dest="weight", type=_fraction, default=Fraction(0))
    p.add_argument("--max-deg", type=int, required=True)
    p.set_defaults(func=_cmd_oracle_dim)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
