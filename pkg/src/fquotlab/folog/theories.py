"""Named theories, theory files, model checking, and quotient preservation."""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..congruences import Partition, con_lattice, format_partition
from ..errors import PremiseFails, SignatureMismatch, StructureFormatError
from ..fixtures import GROUP_SIG, MI_SIG
from ..quotients import quotient_structure
from ..structures import FiniteStructure, Signature, parse_signature
from .evaluate import evaluate
from .parser import parse_formula
from .pcnf import is_quotient_safe, to_pcnf
from .syntax import Formula, check_arities, format_formula, is_closed


@dataclass(frozen=True)
class Theory:
    name: str
    signature: Signature
    axioms: tuple[Formula, ...]

    def __post_init__(self):
        for ax in self.axioms:
            check_arities(self.signature, ax)
            if not is_closed(ax):
                raise StructureFormatError(
                    f"axiom {format_formula(ax)!r} has free variables"
                )


def load_theory(raw: dict) -> Theory:
    if not isinstance(raw, dict) or "signature" not in raw or "axioms" not in raw:
        raise StructureFormatError("theory file needs signature and axioms")
    sig = parse_signature(raw["signature"])
    axioms = tuple(parse_formula(sig, text) for text in raw["axioms"])
    return Theory(str(raw.get("name", "theory")), sig, axioms)


def load_theory_file(path: str) -> Theory:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StructureFormatError(f"{path}: {exc}") from exc
    return load_theory(raw)


def mi_monoid_theory() -> Theory:
    """A monoid-like theory with a unary pseudoidentity predicate,
    axiomatized without negated equalities."""
    texts = (
        "forall x. forall y. forall z. op(op(x,y),z) = op(x,op(y,z))",
        "exists e. forall x. (~E(e) | op(x,e) = x) & (~E(e) | op(e,x) = x)",
        "forall a. forall b. ~E(a) | ~E(b) | E(op(a,b))",
        "forall x. forall a. ~E(a) | op(x,a) = op(a,x)",
    )
    return Theory(
        "mi_monoid", MI_SIG, tuple(parse_formula(MI_SIG, t) for t in texts)
    )


def abelian_group_theory() -> Theory:
    texts = (
        "forall x. forall y. forall z. add(add(x,y),z) = add(x,add(y,z))",
        "forall x. forall y. add(x,y) = add(y,x)",
        "forall x. add(x,zero) = x",
        "forall x. add(x,neg(x)) = zero",
    )
    return Theory(
        "abelian_group", GROUP_SIG, tuple(parse_formula(GROUP_SIG, t) for t in texts)
    )


@dataclass(frozen=True)
class AxiomResult:
    formula: Formula
    holds: bool

    @property
    def text(self) -> str:
        return format_formula(self.formula)


@dataclass(frozen=True)
class TheoryReport:
    theory: str
    results: tuple[AxiomResult, ...]

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.results)


def models_theory(M: FiniteStructure, theory: Theory) -> TheoryReport:
    if M.sig != theory.signature:
        raise SignatureMismatch(
            f"{M.display_name()} is not a {theory.signature.describe()} structure"
        )
    return TheoryReport(
        theory.name,
        tuple(AxiomResult(ax, evaluate(M, ax)) for ax in theory.axioms),
    )


@dataclass(frozen=True)
class PreservationEntry:
    theta: Partition
    holds: bool

    def describe(self) -> str:
        verdict = "holds" if self.holds else "fails"
        return f"quotient by ({format_partition(self.theta)}): {verdict}"


@dataclass(frozen=True)
class PreservationReport:
    formula: Formula
    safe: bool
    entries: tuple[PreservationEntry, ...]

    @property
    def defects(self) -> tuple[PreservationEntry, ...]:
        """Failures that contradict the preservation guarantee."""
        if not self.safe:
            return ()
        return tuple(e for e in self.entries if not e.holds)

    @property
    def counterexamples(self) -> tuple[PreservationEntry, ...]:
        """Informative failures of an unsafe formula."""
        if self.safe:
            return ()
        return tuple(e for e in self.entries if not e.holds)

    @property
    def ok(self) -> bool:
        return not self.defects


def preservation_check(
    M: FiniteStructure, f: Formula, max_universe: int = 9
) -> PreservationReport:
    """Evaluate f on every quotient of M.

    If the PCNF of f has no negated-equality literal its truth must survive
    every quotient, so a failure is a defect; otherwise failures are
    reported as counterexamples.
    """
    check_arities(M.sig, f)
    if not evaluate(M, f):
        raise PremiseFails(f"structure does not satisfy {format_formula(f)!r}")
    safe = is_quotient_safe(to_pcnf(f))
    entries = []
    for theta in con_lattice(M, max_universe).elements:
        quotient = quotient_structure(M, theta).structure
        entries.append(PreservationEntry(theta, evaluate(quotient, f)))
    return PreservationReport(f, safe, tuple(entries))
