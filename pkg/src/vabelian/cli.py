"""Command-line front end.

Exit codes: 0 success, 1 invariant failure, 2 usage error, 3 capacity.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from . import espace as E
from . import reports as R
from .catalog import resolve
from .checks import MODULES, format_suite, run_suite
from .core import finite_quotient
from .errors import (
    LINE_CAP,
    ORDER_CAP,
    SIMPLEX_CAP,
    CapacityError,
    ConsistencyError,
    VAError,
    checked_cap,
)
from .finite import FiniteGroup, alternating, cyclic, dihedral, quaternion, symmetric
from .hyperelementary import is_p_hyperelementary
from .induction import classify_subgroups, irreducibility_consistency, line_generators, small_norm_kernel_hom
from .qproj import line_orbits
from .reducibility import detect_via_quotient

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cap-order", type=int)
    common.add_argument("--cap-simplices", type=int)
    common.add_argument("--cap-lines", type=int)

    ap = _Parser(prog="vabelian", description="Computations with virtually abelian groups.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("show", parents=[common], help="print and validate a presentation")
    s.add_argument("group", help="builtin name or group file")
    s.add_argument("--m", type=int, help="also report |G/A^m|")

    s = sub.add_parser("classify", parents=[common], help="case table of hyperelementary subgroups of G/A^(p^r)")
    s.add_argument("group")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--r", type=int, default=1)

    s = sub.add_parser("check", parents=[common], help="run the invariant suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--module", action="append", choices=MODULES, help="restrict to a module (repeatable)")

    s = sub.add_parser("qproj", parents=[common], help="rational lines of bounded height, by orbit")
    s.add_argument("group")
    s.add_argument("--bound", type=int, default=2)

    s = sub.add_parser("espace", parents=[common], help="coset-chain model of a finite group")
    s.add_argument("group", help="Z/n, Dn (order 2n), S3, S4, A4, Q8, or <va-group>/m")
    s.add_argument("--family", default="all", help="trivial, cyclic, all, or hyper:p")
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--union", metavar="P,Q", help="check the union/intersection lemma for hyper:P and hyper:Q")
    s.add_argument("--join", metavar="FAMILY", help="check the join inclusion of FAMILY inside --family")
    s.add_argument("--list", action="store_true", help="list the simplices")

    s = sub.add_parser("kernelhom", parents=[common], help="short homomorphisms Z^2 -> Z with prescribed mod-p kernel")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--gen", metavar="X,Y", help="a single generator instead of all p+1 lines")

    s = sub.add_parser("reduce", parents=[common], help="detect invariant cyclic subgroups of A/p^r A")
    s.add_argument("group")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--general", action="store_true", help="also run the exhaustive cyclic-subgroup search")
    return ap


def _int_pair(text: str, what: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must look like X,Y") from None
    return a, b


def finite_group_from_name(name: str, cap: int) -> FiniteGroup:
    fixed = {"S3": lambda: symmetric(3), "S4": lambda: symmetric(4), "A4": lambda: alternating(4), "Q8": quaternion}
    if name in fixed:
        return fixed[name]()
    if m := re.fullmatch(r"Z/(\d+)", name):
        return cyclic(int(m.group(1)))
    if m := re.fullmatch(r"D(\d+)", name):
        return dihedral(int(m.group(1)))
    if m := re.fullmatch(r"(.+)/(\d+)", name):
        return finite_quotient(resolve(m.group(1)), int(m.group(2)), cap).group
    raise UsageError(f"unknown finite group {name!r}")


def family_from_name(G: FiniteGroup, name: str) -> E.Family:
    if name == "trivial":
        return E.Family.trivial(G)
    if name == "all":
        return E.Family.all(G)
    if name == "cyclic":
        return E.Family.where(G, lambda H: H.is_cyclic)
    if m := re.fullmatch(r"hyper:(\d+)", name):
        p = int(m.group(1))
        return E.Family.where(G, lambda H: is_p_hyperelementary(H, p) is not None)
    raise UsageError(f"unknown family {name!r}")


def _emit(doc: dict, text: str, fmt: str) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n" if fmt == "json" else text)


def _run(args) -> int:
    cap_order = checked_cap(args.cap_order, ORDER_CAP)
    cap_simplices = checked_cap(args.cap_simplices, SIMPLEX_CAP)
    cap_lines = checked_cap(args.cap_lines, LINE_CAP)
    cmd = args.command

    if cmd == "show":
        P = resolve(args.group)
        doc = R.show_json(P, args.m, cap_order)
        _emit(doc, R.show_text(doc), args.format)
        return EXIT_OK

    if cmd == "classify":
        P = resolve(args.group)
        reps = classify_subgroups(P, args.p, args.r, cap=cap_order)
        ok = irreducibility_consistency(P, args.p, args.r, reps)
        doc = R.classify_json(P, args.p, args.r, reps, ok)
        _emit(doc, R.classify_text(doc), args.format)
        return EXIT_OK if ok else EXIT_INVARIANT

    if cmd == "check":
        results = run_suite(args.seed, tuple(args.module or ()))
        ok = all(r.passed for r in results)
        if args.format == "json":
            doc = {
                "schema": R.SCHEMA,
                "command": "check",
                "seed": args.seed,
                "checks": [
                    {"module": r.module, "name": r.name, "cases": r.cases, "passed": r.passed, "failures": list(r.failures)}
                    for r in results
                ],
                "ok": ok,
            }
            sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
        else:
            sys.stdout.write(format_suite(results, args.seed))
        return EXIT_OK if ok else EXIT_INVARIANT

    if cmd == "qproj":
        P = resolve(args.group)
        orbits = line_orbits(P, args.bound, cap_lines)
        doc = R.orbits_json(P, args.bound, orbits)
        _emit(doc, R.orbits_text(doc), args.format)
        return EXIT_OK

    if cmd == "kernelhom":
        gens = [_int_pair(args.gen, "--gen")] if args.gen else [tuple(map(int, g)) for g in line_generators(args.p)]
        doc = R.kernelhom_json([small_norm_kernel_hom(args.p, g) for g in gens])
        _emit(doc, R.kernelhom_text(doc), args.format)
        return EXIT_OK

    if cmd == "reduce":
        P = resolve(args.group)
        rep = detect_via_quotient(P, args.p, args.r, args.general, cap_lines)
        doc = R.detection_json(P, rep)
        _emit(doc, R.detection_text(doc), args.format)
        bad = rep.found and (rep.oracle is None or not rep.a_hat_nonzero_mod)
        return EXIT_INVARIANT if bad else EXIT_OK

    if cmd == "espace":
        if args.d < 0:
            raise UsageError("--d must be >= 0")
        G = finite_group_from_name(args.group, cap_order)
        fam = family_from_name(G, args.family)
        model = E.CosetModel(fam)
        skel = model.skeleton(args.d, cap_simplices)
        counts = [sum(len(s) == k + 1 for s in skel) for k in range(args.d + 1)]
        extra, ok = {}, True
        if args.union:
            p, q = _int_pair(args.union, "--union")
            u = E.union_check(G, family_from_name(G, f"hyper:{p}"), family_from_name(G, f"hyper:{q}"), args.d, cap_simplices)
            extra["union"] = {"precondition": u.precondition, "union_equal": u.union_equal, "intersection_equal": u.intersection_equal}
            ok &= u.ok
        if args.join:
            j = E.join_inclusion_check(G, family_from_name(G, args.join), fam, args.d, cap_simplices)
            extra["join"] = {
                "precondition": j.precondition,
                "well_defined": j.well_defined,
                "injective": j.injective,
                "simplicial": j.simplicial,
                "equivariant": j.equivariant,
            }
            ok &= j.ok
        lines = [model.export_line(s) for s in skel] if args.list else []
        doc = R.espace_json(G.name, args.family, args.d, counts, lines, extra)
        _emit(doc, R.espace_text(doc), args.format)
        return EXIT_OK if ok else EXIT_INVARIANT

    raise UsageError(f"unknown command {cmd}")  # pragma: no cover


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _run(args)
    except CapacityError as exc:
        sys.stderr.write(f"capacity: {exc}\n")
        return EXIT_CAPACITY
    except ConsistencyError as exc:
        sys.stderr.write(f"invariant failure: {exc}\n")
        return EXIT_INVARIANT
    except (VAError, UsageError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
