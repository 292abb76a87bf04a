"""Batch command-line interface.

Input documents are UTF-8 JSON:

    {"scalar": {"prime": 7}, "kind": "constructor", "name": "lower_triangular", "n": 2}
    {"scalar": {"prime": 7}, "kind": "structure_constants",
     "dim": 2, "one": [1, 0], "mul_table": [[[1,0],[0,1]],[[0,1],[0,0]]]}

Constructor names: lower_triangular(n), upper_triangular(n), full_matrix(n),
truncated_poly(k), product(factors=[...]), opposite(inner={...}),
matrix_subalgebra(ambient_n, generators=[row-major matrices]).

Elements on the command line are JSON arrays: a flat array of residues, or,
for matrix-modelled algebras, a matrix literal desugared through the
constructor's documented basis.

Exit codes: 0 success / true verdict, 1 false verdict (check-* commands),
2 input error, 3 internal invariant violation or oracle disagreement.
Output is deterministic: sorted keys, subsets ordered by (size, lex).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra import Algebra, Element, build_algebra
from .linalg import DEFAULT_GUARD, InputError, InternalCheckError, ResourceGuardError
from .localization import (
    DenSetDescriptor,
    classify_element,
    duality_report,
    idempotent_denominator_check,
    localization_report,
    monoid_denominator_decision,
    powers_denominator_criterion,
    subset_str,
    two_sided_report,
)
from .oracle import FiniteSetOfElements, brute_denominator_check, monoid_closure
from .suite import powers_agreement, run_invariants

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def parse_input(document: str) -> Algebra:
    """Parse a JSON algebra description into a validated algebra."""
    try:
        desc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON near line {exc.lineno}, column {exc.colno}: {exc.msg}")
    return build_algebra(desc)


def parse_element(a: Algebra, text: str) -> Element:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid element JSON: {exc.msg}")
    return element_from_payload(a, payload)


def element_from_payload(a: Algebra, payload) -> Element:
    if isinstance(payload, list) and payload and all(isinstance(r, list) for r in payload):
        return a.from_matrix(payload)
    if isinstance(payload, list) and all(isinstance(v, int) for v in payload):
        return a.element(payload)
    raise InputError("element must be a JSON array of residues or a matrix literal")


def _load_generators(a: Algebra, path: str) -> list[Element]:
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if not isinstance(payload, list) or not payload:
        raise InputError("generators file must hold a non-empty JSON array")
    return [element_from_payload(a, item) for item in payload]


def _emit(payload: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"
    else:
        lines = []
        _render_text(payload, lines, "")
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _is_flat(value) -> bool:
    return isinstance(value, list) and not any(isinstance(v, (dict, list)) for v in value)


def _render_text(value, lines: list[str], prefix: str) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            sub = value[key]
            if _is_flat(sub):
                lines.append(f"{prefix}{key}: {json.dumps(sub)}")
            elif isinstance(sub, (dict, list)):
                lines.append(f"{prefix}{key}:")
                _render_text(sub, lines, prefix + "  ")
            else:
                lines.append(f"{prefix}{key}: {sub}")
    elif isinstance(value, list):
        for item in value:
            if _is_flat(item):
                lines.append(f"{prefix}- {json.dumps(item)}")
            elif isinstance(item, (dict, list)):
                lines.append(f"{prefix}-")
                _render_text(item, lines, prefix + "  ")
            else:
                lines.append(f"{prefix}- {item}")
    else:
        lines.append(f"{prefix}{value}")


def _descriptor_dict(desc: DenSetDescriptor | None) -> dict | None:
    if desc is None:
        return None
    out = {
        "kind": desc.kind,
        "idempotent": list(desc.witness_idempotent.coeffs),
        "ass_dim": desc.ass.dim,
        "ass_basis": [list(r) for r in desc.ass.space.basis],
        "quotient_dim": desc.quotient.algebra.dim,
    }
    if desc.min_core_exponent is not None:
        out["min_core_exponent"] = desc.min_core_exponent
    return out


def _read_input(args) -> Algebra:
    if args.input == "-":
        return parse_input(sys.stdin.read())
    with open(args.input, "r", encoding="utf-8") as fh:
        return parse_input(fh.read())


def cmd_report(args) -> int:
    a = _read_input(args)
    if args.side == "left":
        payload = localization_report(a).to_dict()
    elif args.side == "right":
        payload = duality_report(a).right.to_dict()
    else:
        payload = duality_report(a).to_dict()
    _emit(payload, args)
    return EXIT_OK


def cmd_check_powers(args) -> int:
    a = _read_input(args)
    if args.element is None:
        raise InputError("check-powers requires --element")
    s = parse_element(a, args.element)
    verdict, desc = powers_denominator_criterion(a, s)
    payload = {"verdict": verdict, "descriptor": _descriptor_dict(desc)}
    if args.oracle:
        agree, detail = powers_agreement(a, s, args.guard)
        payload["oracle"] = {"agrees": agree, "detail": detail}
        if not agree:
            _emit(payload, args)
            return EXIT_INTERNAL
    _emit(payload, args)
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_check_monoid(args) -> int:
    a = _read_input(args)
    gens = []
    if args.generators:
        gens = _load_generators(a, args.generators)
    if args.element is not None:
        gens.append(parse_element(a, args.element))
    if not gens:
        raise InputError("check-monoid requires --generators and/or --element")
    verdict, desc = monoid_denominator_decision(a, gens, args.guard)
    payload = {"verdict": verdict, "descriptor": _descriptor_dict(desc)}
    if args.oracle:
        closure = monoid_closure(a, gens, args.guard)
        if closure.contains_zero:
            oracle_verdict = False
            oracle_ass_dim = None
            same_ass = True
        else:
            res = brute_denominator_check(a, closure, "left", args.guard)
            oracle_verdict = res.is_den
            oracle_ass_dim = res.ass.dim if res.ass else None
            same_ass = not verdict or (desc is not None and res.ass is not None
                                       and res.ass.space == desc.ass.space)
        agree = oracle_verdict == verdict and same_ass
        payload["oracle"] = {"verdict": oracle_verdict, "ass_dim": oracle_ass_dim, "agrees": agree}
        if not agree:
            _emit(payload, args)
            return EXIT_INTERNAL
    _emit(payload, args)
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_check_idempotent(args) -> int:
    a = _read_input(args)
    if args.element is None:
        raise InputError("check-idempotent requires --element")
    e = parse_element(a, args.element)
    chk = idempotent_denominator_check(a, e)
    payload = {"left": chk.left, "right": chk.right, "twosided": chk.twosided,
               "central": chk.central, "descriptor": _descriptor_dict(chk.descriptor)}
    verdict = {"left": chk.left, "right": chk.right, "both": chk.twosided}[args.side]
    if args.oracle:
        sset = FiniteSetOfElements.from_elements(a, [a.one, e])
        oracle = {
            "left": brute_denominator_check(a, sset, "left", args.guard).is_den,
            "right": brute_denominator_check(a, sset, "right", args.guard).is_den,
            "twosided": brute_denominator_check(a, sset, "twosided", args.guard).is_den,
        }
        agree = (oracle["left"] == chk.left and oracle["right"] == chk.right
                 and oracle["twosided"] == chk.twosided)
        payload["oracle"] = {**oracle, "agrees": agree}
        if not agree:
            _emit(payload, args)
            return EXIT_INTERNAL
    _emit(payload, args)
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_classify_element(args) -> int:
    a = _read_input(args)
    if args.element is None:
        raise InputError("classify-element requires --element")
    r = parse_element(a, args.element)
    rep = localization_report(a)
    out = classify_element(a, r, rep)
    payload = {"left_localizable": out["left_localizable"], "completely": out["completely"],
               "witnesses": [subset_str(s) for s in out["witnesses"]]}
    _emit(payload, args)
    return EXIT_OK if out["left_localizable"] else EXIT_FALSE


def cmd_dual(args) -> int:
    a = _read_input(args)
    _emit(duality_report(a).to_dict(), args)
    return EXIT_OK


def cmd_twosided(args) -> int:
    a = _read_input(args)
    ts = two_sided_report(a)
    payload = ts.to_dict()
    verdict = True
    if args.element is not None:
        r = parse_element(a, args.element)
        verdict = ts.powers_criterion(r)
        payload["powers_verdict"] = verdict
        if args.oracle:
            closure = monoid_closure(a, [r], args.guard)
            if closure.contains_zero:
                oracle_verdict = False
            else:
                oracle_verdict = brute_denominator_check(a, closure, "twosided", args.guard).is_den
            payload["oracle"] = {"verdict": oracle_verdict, "agrees": oracle_verdict == verdict}
            if oracle_verdict != verdict:
                _emit(payload, args)
                return EXIT_INTERNAL
    _emit(payload, args)
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_verify(args) -> int:
    a = _read_input(args)
    results = run_invariants(a, guard=args.guard)
    payload = {"checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results],
               "all_ok": all(r.ok for r in results)}
    _emit(payload, args)
    return EXIT_OK if payload["all_ok"] else EXIT_INTERNAL


COMMANDS = {
    "report": cmd_report,
    "check-powers": cmd_check_powers,
    "check-monoid": cmd_check_monoid,
    "check-idempotent": cmd_check_idempotent,
    "classify-element": cmd_classify_element,
    "dual": cmd_dual,
    "twosided": cmd_twosided,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="artinloc",
        description="Classify denominator sets and Ore localizations of a "
                    "finite-dimensional algebra over GF(p).")
    sub = parser.add_subparsers(dest="command", required=True)
    default_guard = int(os.environ.get("ARTINLOC_GUARD", DEFAULT_GUARD))
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True,
                       help="path to the JSON algebra description ('-' for stdin)")
        p.add_argument("--element", help="element payload as JSON (vector or matrix literal)")
        p.add_argument("--generators", help="path to a JSON array of element payloads")
        p.add_argument("--side", choices=["left", "right", "both"], default="left")
        p.add_argument("--oracle", action="store_true",
                       help="cross-check the verdict against the brute-force oracle")
        p.add_argument("--guard", type=int, default=default_guard,
                       help="enumeration guard on p**dim (env ARTINLOC_GUARD)")
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--output", help="write the report to a file instead of stdout")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = COMMANDS[args.command](args)
    except (InputError, FileNotFoundError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    except (InternalCheckError, AssertionError) as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        code = EXIT_INTERNAL
    if argv is None:
        sys.exit(code)
    return code
