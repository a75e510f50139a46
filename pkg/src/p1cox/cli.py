"""Command-line front end.

    p1cox check   INSTANCE.json
    p1cox present INSTANCE.json
    p1cox verify  INSTANCE.json
    p1cox cones   --d D --m M
    p1cox map     INSTANCE.json (--forward | --inverse) [--point JSON]

Global flags ``--format {text,json}`` and ``--budget N`` are accepted before or
after the command.  Exit codes: 0 success, 1 mathematical failure, 2 input
error, 3 Groebner budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .birgeom import (
    IndeterminacyLocus,
    KernelRankUnexpected,
    NotOnHypersurface,
    OutOfRange,
    RationalPoint,
    build_matrices,
    cones,
    forward_map,
    inverse_map,
)
from .grading import GradedRing, GradingGroup, MultiDegree, NotHomogeneousError, make_ring
from .groebner import DEFAULT_BUDGET, Budget, ResourceLimitError
from .presentation import (
    ASSERTED_FLAGS,
    CoxEquation,
    DegreeZeroInP1Error,
    build_presentation,
    check_hypotheses,
    cox_equation,
    expand_cox_equation,
)
from .ring import ParseError, Ring, parse_polynomial
from .verifier import full_certificate

SCHEMA_VERSION = 1

EXIT_OK, EXIT_MATH, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class InstanceError(ValueError):
    pass


@dataclass
class Instance:
    base: GradedRing
    equation: CoxEquation
    asserted: Dict[str, bool]
    points: List[dict] = field(default_factory=list)


def load_instance(data: dict) -> Instance:
    """Build module inputs from a parsed instance document (schema 1)."""
    if data.get("schema") != SCHEMA_VERSION:
        raise InstanceError(f"unsupported schema {data.get('schema')!r}; expected {SCHEMA_VERSION}")
    try:
        ring_sec = data["ring"]
        grp = ring_sec.get("grading", {"free_rank": 1, "torsion": []})
        group = GradingGroup(int(grp["free_rank"]), tuple(grp.get("torsion", ())))
        z_names, z_degs, p1 = [], [], []
        for v in ring_sec["variables"]:
            role = v.get("role", "z")
            if role == "z":
                z_names.append(v["name"])
                z_degs.append(MultiDegree.from_json(v["degree"], group))
            elif role == "p1":
                p1.append(v["name"])
            else:
                raise InstanceError(f"unknown role {role!r} for {v['name']}")
        if len(p1) != 2:
            raise InstanceError(f"exactly two variables must have role 'p1', found {p1}")
        base = make_ring(z_names, z_degs, ring_sec.get("relations", ()), group)
        eq_sec = data["equation"]
        if "f" in eq_sec:
            f = parse_polynomial(eq_sec["f"], Ring(tuple(z_names) + tuple(p1)))
            eq = expand_cox_equation(f, base, p1)
        else:
            coeffs = [parse_polynomial(s, base.ring) for s in eq_sec["coefficients"]]
            if "d" in eq_sec and eq_sec["d"] != len(coeffs) - 1:
                raise InstanceError(f"d = {eq_sec['d']} but {len(coeffs)} coefficients given")
            eq = cox_equation(coeffs, base, p1)
        asserted = {k: bool(data.get("asserted", {}).get(k, False)) for k in ASSERTED_FLAGS}
        unknown = set(data.get("asserted", {})) - set(ASSERTED_FLAGS)
        if unknown:
            raise InstanceError(f"unknown asserted flags {sorted(unknown)}")
        return Instance(base, eq, asserted, list(data.get("points", [])))
    except KeyError as exc:
        raise InstanceError(f"missing field {exc}") from None


def read_instance(path: str) -> Instance:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"{path}: invalid JSON: {exc}") from None
    return load_instance(data)


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    inst = read_instance(args.instance)
    report = check_hypotheses(inst.equation, inst.base, inst.asserted, Budget(args.budget))
    _emit(args, report.to_json(), report.to_text())
    return EXIT_OK if report.machine_ok else EXIT_MATH


def cmd_present(args) -> int:
    inst = read_instance(args.instance)
    report = check_hypotheses(inst.equation, inst.base, inst.asserted, Budget(args.budget))
    if not report.machine_ok:
        print(report.to_text(), file=sys.stderr)
        return EXIT_MATH
    P = build_presentation(inst.equation)
    _emit(args, P.to_json(), P.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = read_instance(args.instance)
    budget = Budget(args.budget)
    report = check_hypotheses(inst.equation, inst.base, inst.asserted, budget)
    if not report.machine_ok:
        _emit(args, {"machine_verdict": False, "hypotheses": report.to_json()}, report.to_text())
        return EXIT_MATH
    P = build_presentation(inst.equation)
    bundle = full_certificate(P, report=report, budget=budget)
    _emit(args, bundle.to_json(), bundle.summary())
    return EXIT_OK if bundle.machine_verdict else EXIT_MATH


def cmd_cones(args) -> int:
    rep = cones(args.d, args.m)
    _emit(args, rep.to_json(), rep.to_text())
    return EXIT_OK


def _parse_point(data) -> RationalPoint:
    try:
        return RationalPoint.from_json(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InstanceError(f"bad point {data!r}: {exc}") from None


def cmd_map(args) -> int:
    inst = read_instance(args.instance)
    mats = build_matrices(inst.equation)
    space = "Y" if args.direction == "forward" else "Y'"
    if args.point:
        try:
            raw = [json.loads(args.point)]
        except json.JSONDecodeError as exc:
            raise InstanceError(f"--point is not valid JSON: {exc}") from None
    else:
        raw = [p for p in inst.points if p.get("space", "Y") == space]
        if not raw:
            raise InstanceError(f"no points on {space} in the instance and no --point given")
    fn = forward_map if args.direction == "forward" else inverse_map
    results = []
    for item in raw:
        pt = _parse_point(item)
        img = fn(mats, pt)
        results.append((pt, img))
    payload = {
        "direction": args.direction,
        "results": [{"source": p.to_json(), "image": q.to_json()} for p, q in results],
    }
    text = "\n".join(f"{p}  |->  {q}" for p, q in results)
    _emit(args, payload, text)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _common(defaults: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    sup = {} if defaults else {"default": argparse.SUPPRESS}
    p.add_argument("--format", choices=("text", "json"), **({"default": "text"} if defaults else sup))
    p.add_argument(
        "--budget", type=int, help=f"cap on S-pair reductions (default {DEFAULT_BUDGET})",
        **({"default": DEFAULT_BUDGET} if defaults else sup),
    )
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="p1cox",
        description="Cox rings of hypersurfaces in P^1 x Z: presentations, certificates, cones, maps.",
        parents=[_common(True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(False)
    for name, fn, help_ in (
        ("check", cmd_check, "check the algebraic hypotheses"),
        ("present", cmd_present, "print the presented Cox ring"),
        ("verify", cmd_verify, "run every machine check and print the certificate bundle"),
    ):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("instance")
        sp.set_defaults(func=fn)
    sp = sub.add_parser("cones", parents=[common], help="Eff/Mov/Nef cones for given d and m")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(func=cmd_cones)
    sp = sub.add_parser("map", parents=[common], help="evaluate the small modification or its inverse")
    sp.add_argument("instance")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--forward", dest="direction", action="store_const", const="forward")
    g.add_argument("--inverse", dest="direction", action="store_const", const="inverse")
    sp.add_argument("--point", help='JSON point, e.g. {"t": ["0", "1"], "z": ["1", "-1", "1", "1", "0"]}')
    sp.set_defaults(func=cmd_map)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (OutOfRange, IndeterminacyLocus, NotOnHypersurface, KernelRankUnexpected) as exc:
        locus = getattr(exc, "locus", None)
        print(f"error: {exc}" + (f" [locus: {locus}]" if locus else ""), file=sys.stderr)
        return EXIT_MATH
    except (InstanceError, ParseError, NotHomogeneousError, DegreeZeroInP1Error, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
