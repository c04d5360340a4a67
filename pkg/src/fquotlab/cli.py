"""Command-line front end.

Exit codes: 0 when the command succeeds and every check passes, 1 when the
domain answer is negative (formula false, not a congruence, verification
defects), 2 for usage and IO errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import congruences, fquot, isotheorems
from .congruences import (
    Partition,
    con_lattice,
    format_partition,
    lattice_to_dot,
    parse_partition,
)
from .errors import (
    EmptyUnsupported,
    FormulaSyntaxError,
    FquotError,
    InternalTheoremViolation,
    KernelNotIncluded,
    NotACongruence,
    NotClosed,
    NotEquivalent,
    NotInLattice,
    NotPCNF,
    NotRefinement,
    PremiseFails,
    SearchSpaceTooLarge,
    SignatureMismatch,
    SizeMismatch,
    SourceMismatch,
    StructureFormatError,
    TargetSourceMismatch,
    UnboundVariable,
    UniverseTooLarge,
    UnknownArity,
)
from .folog import (
    evaluate,
    format_formula,
    is_quotient_safe,
    load_theory_file,
    parse_formula,
    preservation_check,
    to_pcnf,
)
from .fquot import bounded_free_check, poset_to_dot, quo_poset, verify_quo_con_iso
from .homs import Hom, check_strong_hom, enumerate_strong_homs
from .quotients import quotient_structure
from .structures import ElementMap, dump_structure, load_structure, structure_to_dict

_USAGE_ERRORS = (
    StructureFormatError,
    FormulaSyntaxError,
    UnknownArity,
    UnboundVariable,
    SignatureMismatch,
    SizeMismatch,
    SearchSpaceTooLarge,
    UniverseTooLarge,
    TargetSourceMismatch,
    SourceMismatch,
    NotInLattice,
    NotPCNF,
)

_NEGATIVE_ERRORS = (
    NotACongruence,
    NotClosed,
    NotRefinement,
    KernelNotIncluded,
    NotEquivalent,
    PremiseFails,
    EmptyUnsupported,
    InternalTheoremViolation,
)


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _blocks(p: Partition) -> list[list[int]]:
    return [list(b) for b in p.blocks()]


def _parse_map(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise StructureFormatError(f"bad map literal {text!r}") from exc


def _parse_elements(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split()]
    except ValueError as exc:
        raise StructureFormatError(f"bad element-set literal {text!r}") from exc


# --- commands -------------------------------------------------------------------

def cmd_validate(args) -> int:
    M = load_structure(args.file)
    if args.json:
        _emit_json({
            "ok": True,
            "name": M.name,
            "n": M.n,
            "structure": structure_to_dict(M),
        })
        return 0
    print(f"{M.display_name()}: universe {M.n}, signature {M.sig.describe()}")
    print("valid")
    return 0


def cmd_con(args) -> int:
    M = load_structure(args.file)
    lat = con_lattice(M, args.max_universe)
    edges = lat.covers()
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(lattice_to_dot(lat))
    if args.json:
        _emit_json({
            "structure": M.display_name(),
            "count": len(lat),
            "congruences": [_blocks(p) for p in lat.elements],
            "hasse_edges": [list(e) for e in edges],
        })
        return 0
    print(f"Con({M.display_name()}): {len(lat)} congruences")
    for i, p in enumerate(lat.elements):
        print(f"  [{i}] {format_partition(p)}")
    print("Hasse edges:")
    for i, j in edges:
        print(f"  [{i}] -> [{j}]")
    return 0


def cmd_quotient(args) -> int:
    M = load_structure(args.file)
    theta = parse_partition(args.by, M.n)
    result = quotient_structure(M, theta)
    if args.out:
        dump_structure(result.structure, args.out)
        if not args.json:
            print(
                f"wrote quotient with {result.structure.n} elements to {args.out}"
            )
        else:
            _emit_json(structure_to_dict(result.structure))
    else:
        _emit_json(structure_to_dict(result.structure))
    return 0


def cmd_hom_check(args) -> int:
    M = load_structure(args.source)
    N = load_structure(args.target)
    images = _parse_map(args.map)
    result = check_strong_hom(M, N, ElementMap(M.n, N.n, images))
    if isinstance(result, Hom):
        if args.json:
            _emit_json({
                "ok": True,
                "map": list(images),
                "surjective": result.surjective,
                "injective": result.injective,
            })
        else:
            print(
                "strong homomorphism;"
                f" surjective={'yes' if result.surjective else 'no'}"
                f" injective={'yes' if result.injective else 'no'}"
            )
        return 0
    if args.json:
        _emit_json({"ok": False, "map": list(images), "violation": str(result)})
    else:
        print(f"not a strong homomorphism: {result}")
    return 1


def cmd_hom_enum(args) -> int:
    M = load_structure(args.source)
    N = load_structure(args.target)
    homs = enumerate_strong_homs(M, N, args.filter, args.max_search)
    if args.json:
        _emit_json({
            "filter": args.filter,
            "count": len(homs),
            "homs": [list(h.map.images) for h in homs],
        })
        return 0
    print(f"{len(homs)} strong homomorphisms (filter: {args.filter})")
    for h in homs:
        print("  " + ",".join(str(v) for v in h.map.images))
    return 0


def cmd_iso_theorems(args) -> int:
    M = load_structure(args.file)
    report = isotheorems.run_theorem_sweep(M, args.max_universe, args.max_search)
    quo_con = verify_quo_con_iso(M, args.max_universe)
    if args.json:
        _emit_json({
            "structure": report.structure,
            "rows": [
                {"theorem": r.theorem, "instances": r.instances,
                 "defects": list(r.defects)}
                for r in report.rows
            ],
            "quo_con_ok": quo_con.ok,
            "total_defects": report.total_defects + len(quo_con.mismatches),
        })
        return 0 if report.total_defects == 0 and quo_con.ok else 1
    print(f"{'theorem':<16}{'instances':>10}{'defects':>9}")
    for row in report.rows:
        print(f"{row.theorem:<16}{row.instances:>10}{len(row.defects):>9}")
        for defect in row.defects:
            print(f"    defect: {defect}")
    verdict = "OK" if quo_con.ok else f"MISMATCHES {len(quo_con.mismatches)}"
    print(
        f"Quo ~ Con verification: {verdict}"
        f" ({quo_con.size} classes, {quo_con.entries_checked} order entries)"
    )
    total = report.total_defects + len(quo_con.mismatches)
    print(f"total defects: {total}")
    return 0 if total == 0 else 1


def cmd_eval(args) -> int:
    M = load_structure(args.file)
    formula = parse_formula(M.sig, args.formula)
    value = evaluate(M, formula)
    if args.json:
        _emit_json({"formula": format_formula(formula), "value": value})
    else:
        print("true" if value else "false")
    return 0 if value else 1


def cmd_pcnf(args) -> int:
    M = load_structure(args.file)
    formula = parse_formula(M.sig, args.formula)
    normalized = to_pcnf(formula)
    safe = is_quotient_safe(normalized)
    if args.json:
        _emit_json({
            "formula": format_formula(formula),
            "pcnf": format_formula(normalized),
            "quotient_safe": safe,
        })
        return 0
    print(f"pcnf: {format_formula(normalized)}")
    print(f"quotient-safe: {'yes' if safe else 'no'}")
    return 0


def cmd_preserve(args) -> int:
    M = load_structure(args.file)
    if args.theory:
        theory = load_theory_file(args.theory)
        if theory.signature != M.sig:
            raise SignatureMismatch("theory signature differs from the structure")
        formulas = list(theory.axioms)
    else:
        formulas = [parse_formula(M.sig, args.formula)]
    reports = [preservation_check(M, f, args.max_universe) for f in formulas]
    defects = sum(len(r.defects) for r in reports)
    counterexamples = sum(len(r.counterexamples) for r in reports)
    if args.json:
        _emit_json({
            "reports": [
                {
                    "formula": format_formula(r.formula),
                    "quotient_safe": r.safe,
                    "entries": [
                        {"theta": _blocks(e.theta), "holds": e.holds}
                        for e in r.entries
                    ],
                    "defects": len(r.defects),
                    "counterexamples": len(r.counterexamples),
                }
                for r in reports
            ],
            "total_defects": defects,
        })
        return 0 if defects == 0 else 1
    for r in reports:
        print(f"formula: {format_formula(r.formula)}")
        print(f"quotient-safe: {'yes' if r.safe else 'no'}")
        for e in r.entries:
            note = ""
            if not e.holds:
                note = (
                    "  (DEFECT)" if r.safe else "  (counterexample, not a defect)"
                )
            print(f"  {e.describe()}{note}")
    print(f"defects: {defects}, counterexamples: {counterexamples}")
    return 0 if defects == 0 else 1


def cmd_fquot(args) -> int:
    M = load_structure(args.file)
    poset = quo_poset(M, args.max_universe)
    report = verify_quo_con_iso(M, args.max_universe)
    edges = poset.covers()
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(poset_to_dot(poset))
    if args.json:
        _emit_json({
            "structure": M.display_name(),
            "classes": len(poset),
            "kernels": [_blocks(p) for p in poset.kernels()],
            "hasse_edges": [list(e) for e in edges],
            "quo_con_ok": report.ok,
            "mismatches": list(report.mismatches),
        })
        return 0 if report.ok else 1
    print(f"Quo({M.display_name()}): {len(poset)} classes")
    for i, theta in enumerate(poset.kernels()):
        print(f"  [{i}] kernel {format_partition(theta)}")
    print("Hasse edges:")
    for i, j in edges:
        print(f"  [{i}] -> [{j}]")
    verdict = "OK" if report.ok else f"MISMATCHES {len(report.mismatches)}"
    print(
        f"Quo ~ Con verification: {verdict}"
        f" ({report.size} classes, {report.entries_checked} order entries)"
    )
    for m in report.mismatches:
        print(f"  mismatch: {m}")
    return 0 if report.ok else 1


def cmd_free_check(args) -> int:
    A = load_structure(args.file)
    basis_elems = _parse_elements(args.basis)
    basis = ElementMap(len(basis_elems), A.n, tuple(basis_elems))
    targets = [load_structure(path) for path in args.targets]
    report = bounded_free_check(A, basis, targets, args.max_search)
    if args.json:
        failure = None
        if report.failure:
            failure = {
                "target_index": report.failure.target_index,
                "target": report.failure.target,
                "assignment": list(report.failure.assignment),
                "count": report.failure.count,
                "sample": [list(s) for s in report.failure.sample],
            }
        _emit_json({
            "passed": report.passed,
            "targets": report.targets,
            "assignments_checked": report.assignments_checked,
            "failure": failure,
        })
    else:
        print(report.describe())
    return 0 if report.passed else 1


# --- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fquot-lab",
        description=(
            "Congruences, quotients, and homomorphism lattices of finite "
            "first-order structures."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, dot=False, universe=False, search=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if dot:
            p.add_argument("--dot", metavar="FILE", help="write a DOT Hasse diagram")
        if universe:
            p.add_argument(
                "--max-universe", type=int, default=congruences.DEFAULT_UNIVERSE_BOUND,
                metavar="N", help="lattice enumeration bound",
            )
        if search:
            p.add_argument(
                "--max-search", type=int, default=10**7,
                metavar="N", help="hom search candidate bound",
            )

    p = sub.add_parser("validate", help="validate a structure file")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("con", help="congruence lattice")
    p.add_argument("file")
    common(p, dot=True, universe=True)
    p.set_defaults(func=cmd_con)

    p = sub.add_parser("quotient", help="quotient by a congruence")
    p.add_argument("file")
    p.add_argument("--by", required=True, metavar="PARTITION",
                   help='blocks like "0 2 4 | 1 3 5"')
    p.add_argument("-o", "--out", metavar="FILE", help="output file")
    common(p)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("hom", help="strong homomorphisms")
    hom_sub = p.add_subparsers(dest="hom_command", required=True)
    pc = hom_sub.add_parser("check", help="validate one map")
    pc.add_argument("source")
    pc.add_argument("target")
    pc.add_argument("--map", required=True, metavar="IMAGES",
                    help="comma-separated images, i -> images[i]")
    common(pc)
    pc.set_defaults(func=cmd_hom_check)
    pe = hom_sub.add_parser("enum", help="enumerate all homs")
    pe.add_argument("source")
    pe.add_argument("target")
    pe.add_argument("--filter", choices=("all", "surjective", "bijective"),
                    default="all")
    common(pe, search=True)
    pe.set_defaults(func=cmd_hom_enum)

    p = sub.add_parser("iso-theorems", help="exhaustive theorem sweep")
    p.add_argument("file")
    common(p, universe=True, search=True)
    p.set_defaults(func=cmd_iso_theorems)

    p = sub.add_parser("eval", help="evaluate a closed formula")
    p.add_argument("file")
    p.add_argument("--formula", required=True)
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("pcnf", help="prenex conjunctive normal form")
    p.add_argument("file")
    p.add_argument("--formula", required=True)
    common(p)
    p.set_defaults(func=cmd_pcnf)

    p = sub.add_parser("preserve", help="truth preservation under quotients")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--formula")
    group.add_argument("--theory", metavar="FILE")
    common(p, universe=True)
    p.set_defaults(func=cmd_preserve)

    p = sub.add_parser("fquot", help="quotient poset and Quo~Con verification")
    p.add_argument("file")
    common(p, dot=True, universe=True)
    p.set_defaults(func=cmd_fquot)

    p = sub.add_parser("free-check", help="bounded free-object verification")
    p.add_argument("file")
    p.add_argument("--basis", required=True, metavar="ELEMENTS",
                   help='injective basis images, e.g. "1 2"')
    p.add_argument("--targets", required=True, nargs="+", metavar="FILE")
    common(p, search=True)
    p.set_defaults(func=cmd_free_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _NEGATIVE_ERRORS as exc:
        if getattr(args, "json", False):
            _emit_json({"ok": False, "error": str(exc)})
        else:
            print(f"negative: {exc}", file=sys.stderr)
        return 1
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FquotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
