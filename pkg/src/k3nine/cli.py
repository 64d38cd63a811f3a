"""Command-line front end.

Exit status: 0 on success, 1 when a verification or diff finds a mismatch,
2 on usage or parse errors.  Reports are JSON on stdout with stable key order.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, classifier, lattices, lefschetz, verify
from .dataset import load_sigma_rows, load_tau_cases
from .exact import PolyParseError, QPoly, parse_poly
from .fibration import NotElliptic, UnclassifiedFiber, WeierstrassModel, analyze, bisection_genus
from .projective import DiagAction, coordinate_point_singularity_screen, format_monomial, invariant_monomials

OK, MISMATCH, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, ensure_ascii=False)
    sys.stdout.write("\n")


def _poly(text: str, var: str = "t") -> QPoly:
    try:
        return parse_poly(text, var)
    except (PolyParseError, ValueError) as exc:
        raise UsageError(f"cannot parse polynomial {text!r}: {exc}") from exc


def cmd_lefschetz(args) -> int:
    if args.order < 2 or not 1 <= args.k <= args.order:
        raise UsageError("need order >= 2 and 1 <= k <= order")
    types = lefschetz.admissible_types(
        args.order,
        args.k,
        curve_points_allowed=not args.isolated_only,
        cube_isolated_only=args.isolated_only,
    )
    with_curve = args.k == 1 and not args.isolated_only
    system = lefschetz.build_holo_system(args.order, args.k, types, with_curve)
    rel = lefschetz.solution_relations(system)
    solutions = lefschetz.solve_nonneg_integer(system) if args.solve else ()
    report = {
        "order": args.order,
        "k": args.k,
        "types": [str(t) for t in types],
        "status": "consistent" if rel.consistent else "inconsistent",
        "formatted": rel.format(),
        **lefschetz.relations_to_json(rel, solutions),
    }
    emit(report)
    return OK


def cmd_classify(args) -> int:
    try:
        pack = classifier.AxiomPack.parse(args.axioms)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    cases = load_tau_cases(args.data_dir)
    if args.case:
        cases = [c for c in cases if c.id == args.case]
        if not cases:
            raise UsageError(f"unknown case {args.case!r}")
    rows = classifier.classify_all(cases, pack)
    expected = [r for r in load_sigma_rows(args.data_dir) if not args.case or r["case"] == args.case]
    diff = classifier.diff_against(rows, expected)
    report = {
        "axioms": sorted(pack.names),
        "rows": [r.to_json() for r in rows],
        "count": len(rows),
        "superset": not diff["missing"] and bool(diff["extra"]),
    }
    if args.diff:
        report["diff"] = {**diff, "id_mismatch": [list(p) for p in diff["id_mismatch"]]}
    emit(report)
    return OK if not args.diff or diff["match"] else MISMATCH


def cmd_lattice(args) -> int:
    try:
        expr = lattices.parse_lattice(args.expr)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    emit(lattices.invariants(expr))
    return OK


def cmd_fibration(args) -> int:
    if args.bisection is not None:
        if args.a is not None or args.b is not None:
            raise UsageError("--bisection cannot be combined with --a/--b")
        try:
            genus = bisection_genus(_poly(args.bisection))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        emit({"f": args.bisection, "bisection": genus})
        return OK
    if args.b is None:
        raise UsageError("give --b (and optionally --a), or --bisection")
    a, b = _poly(args.a or "0"), _poly(args.b)
    try:
        report = analyze(WeierstrassModel(a, b))
    except (NotElliptic, UnclassifiedFiber, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    emit({"a": str(a), "b": str(b), **report.to_json()})
    return OK


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def cmd_monomials(args) -> int:
    try:
        act = DiagAction(args.order, args.weights, args.character)
        mons = invariant_monomials(act, args.degree)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = {
        "order": act.order,
        "weights": list(act.weights),
        "character": act.character,
        "degree": args.degree,
        "monomials": [format_monomial(m) for m in mons],
        "exponents": [list(m) for m in mons],
    }
    if mons and args.degree >= 2:
        report["screen"] = coordinate_point_singularity_screen(mons, act.dim)
    emit(report)
    return OK


def cmd_explain(args) -> int:
    try:
        pack = classifier.AxiomPack.parse(args.axioms)
        lines = classifier.explain_row(args.row, load_tau_cases(args.data_dir), pack)
    except classifier.UnknownCase:
        sys.stderr.write(f"k3nine: no row {args.row!r} under this axiom pack\n")
        return USAGE
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print("\n".join(lines))
    return OK


def cmd_verify(args) -> int:
    results = verify.run_all(args.data_dir)
    passed = verify.all_passed(results)
    if args.json:
        emit({"passed": passed, "results": [r.to_json() for r in results]})
    else:
        for r in results:
            print(r.line())
        failed = sum(r.status == verify.FAIL for r in results)
        print(f"{len(results) - failed}/{len(results)} checks without failure")
    return OK if passed else MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k3nine", description="Exact checks for order-9 automorphisms of K3 surfaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lefschetz", help="holomorphic Lefschetz system and its relations")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--k", type=int, required=True, help="sigma acts on the 2-form by zeta^k")
    s.add_argument("--isolated-only", action="store_true",
                   help="drop on-curve types and types whose cube has a trivial eigenvalue")
    s.add_argument("--solve", action="store_true", help="enumerate nonnegative integer solutions")
    s.set_defaults(func=cmd_lefschetz)

    s = sub.add_parser("classify", help="enumerate fixed loci of sigma")
    s.add_argument("--axioms", default="full", help="full, combinatorial, or comma-separated axiom names")
    s.add_argument("--diff", action="store_true", help="compare with the bundled reference rows")
    s.add_argument("--case", help="restrict to one order-3 case (A-H)")
    s.add_argument("--data-dir", type=Path)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("lattice", help="invariants of a lattice expression such as U+E6+A2")
    s.add_argument("expr")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("fibration", help="singular fibers of y^2 = x^3 + a(t) x + b(t)")
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--bisection", metavar="POLY", help="genus of y^2 = POLY")
    s.set_defaults(func=cmd_fibration)

    s = sub.add_parser("monomials", help="invariant monomials of a diagonal action")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--weights", type=_int_list, required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--character", type=int, default=0)
    s.set_defaults(func=cmd_monomials)

    s = sub.add_parser("explain", help="audit trail for one classified row")
    s.add_argument("row")
    s.add_argument("--axioms", default="full")
    s.add_argument("--data-dir", type=Path)
    s.set_defaults(func=cmd_explain)

    s = sub.add_parser("verify-paper", help="recompute every bundled expectation")
    s.add_argument("--json", action="store_true")
    s.add_argument("--data-dir", type=Path)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"k3nine: {exc}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
