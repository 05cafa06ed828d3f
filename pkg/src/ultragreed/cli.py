"""Command-line front end.

Every command reads and writes the package's JSON formats with sorted keys, so
outputs diff deterministically.  Exit codes: 0 success, 1 domain error
(reported on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .field import FieldSpec, field_make
from .geg import VectorFamily, enumerate_greedoid
from .newick import parse_newick, triple_from_tree
from .represent import build_representation, converse_search
from .setsys import SetSystem, bhargava_greedoid, greedy_schedule
from .ultra import UltraTriple


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _read_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(obj, path: str | None) -> None:
    text = canonical_json(obj)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_field(text: str, modulus: str | None) -> FieldSpec:
    if "^" in text:
        p_text, _, n_text = text.partition("^")
    else:
        p_text, n_text = text, "1"
    try:
        p, n = int(p_text), int(n_text)
    except ValueError:
        raise ValueError(f"bad field syntax {text!r}; expected p or p^n") from None
    coeffs = None
    if modulus:
        coeffs = [int(c) for c in modulus.split(",")]
    return field_make(p, n, coeffs)


def _load_matrix(path: str) -> VectorFamily:
    obj = _read_json(path)
    if "matrix" in obj and "schedule" in obj:
        obj = obj["matrix"]
    return VectorFamily.from_json(obj)


def cmd_validate(args) -> int:
    triple = UltraTriple.from_json(_read_json(args.triple))
    print(f"valid: {len(triple)} elements")
    return 0


def cmd_greedoid(args) -> int:
    triple = UltraTriple.from_json(_read_json(args.triple))
    _emit(bhargava_greedoid(triple).to_json(), args.output)
    return 0


def cmd_schedule(args) -> int:
    triple = UltraTriple.from_json(_read_json(args.triple))
    _emit(greedy_schedule(triple).to_json(), args.output)
    return 0


def cmd_mcs(args) -> int:
    triple = UltraTriple.from_json(_read_json(args.triple))
    print(triple.mcs())
    return 0


def cmd_represent(args) -> int:
    triple = UltraTriple.from_json(_read_json(args.triple))
    spec = _parse_field(args.field, args.modulus)
    rep = build_representation(triple, spec, verify=args.verify)
    if args.bundle:
        _emit(rep.to_json(), args.bundle)
    _emit(rep.family.to_json(), args.output)
    return 0


def cmd_geg(args) -> int:
    family = _load_matrix(args.matrix)
    _emit(enumerate_greedoid(family).to_json(), args.output)
    return 0


def cmd_check(args) -> int:
    family = _load_matrix(args.matrix)
    triple = UltraTriple.from_json(_read_json(args.triple))
    from_matrix = enumerate_greedoid(family)
    from_triple = bhargava_greedoid(triple)
    if from_matrix == from_triple:
        print("equal")
        return 0
    print("different", file=sys.stderr)
    return 1


def cmd_from_newick(args) -> int:
    with open(args.tree, "r", encoding="utf-8") as fh:
        tree = parse_newick(fh.read())
    _emit(triple_from_tree(tree).to_json(), args.output)
    return 0


def cmd_converse_search(args) -> int:
    target = SetSystem.from_json(_read_json(args.setsys))
    spec = _parse_field(args.field, args.modulus)
    family = converse_search(target, spec)
    if family is None:
        _emit({"found": False}, args.output)
    else:
        _emit({"found": True, "matrix": family.to_json()}, args.output)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ultragreed",
        description=(
            "Maximum-perimeter greedoids of ultrametric triples and their "
            "finite-field matrix representations"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        return p

    p = add("validate", cmd_validate, "check the triple axioms of a JSON file")
    p.add_argument("triple")

    p = add("greedoid", cmd_greedoid, "brute-force maximum-perimeter greedoid")
    p.add_argument("triple")
    p.add_argument("-o", "--output")

    p = add("schedule", cmd_schedule, "greedy order and marginal gains")
    p.add_argument("triple")
    p.add_argument("-o", "--output")

    p = add("mcs", cmd_mcs, "maximum clique size")
    p.add_argument("triple")

    p = add("represent", cmd_represent, "build a representing matrix over GF(q)")
    p.add_argument("triple")
    p.add_argument("--field", required=True, metavar="P[^N]")
    p.add_argument("--modulus", help="comma-separated coefficients, constant term first")
    p.add_argument("--verify", action="store_true", help="re-check against brute force")
    p.add_argument("-o", "--output")
    p.add_argument("--bundle", help="also write the full representation bundle")

    p = add("geg", cmd_geg, "enumerate the Gaussian elimination greedoid of a matrix")
    p.add_argument("matrix")
    p.add_argument("-o", "--output")

    p = add("check", cmd_check, "compare a matrix greedoid against a triple greedoid")
    p.add_argument("matrix")
    p.add_argument("triple")

    p = add("from-newick", cmd_from_newick, "turn a clock-balanced tree into a triple")
    p.add_argument("tree")
    p.add_argument("-o", "--output")

    p = add("converse-search", cmd_converse_search, "exhaustive search for a realizing matrix")
    p.add_argument("setsys")
    p.add_argument("--field", required=True, metavar="P[^N]")
    p.add_argument("--modulus")
    p.add_argument("-o", "--output")

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
