"""The quotient poset of a structure under the forgetful functor to sets.

Surjections out of a structure, taken up to mutual factorization, are in
order-preserving bijection with its congruences via the kernel; the poset
stores one canonical representative (the projection onto the quotient) per
class. Bounded verification of the free-object universal property is
included: it refutes freeness within a target list and certifies it only
relative to that list.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .congruences import ConLattice, Partition, con_lattice, format_partition
from .errors import (
    InternalTheoremViolation,
    NotEquivalent,
    SignatureMismatch,
    SizeMismatch,
    SourceMismatch,
)
from .homs import (
    DEFAULT_SEARCH_BOUND,
    Hom,
    check_strong_hom,
    enumerate_strong_homs,
    kernel,
    kernel_inclusion_witness,
)
from .isotheorems import IsoWitness
from .quotients import QuotientResult, factor_hom, quotient_structure
from .structures import ElementMap, FiniteStructure, is_isomorphic

DEFAULT_UNIVERSE_BOUND = 9


def leq_by_factorization(f: Hom, g: Hom) -> Hom | None:
    """The unique h with h . f = g if one exists, else None.

    Since f is surjective the candidate is forced pointwise; it exists iff
    every pair collapsed by f is collapsed by g, and is then automatically
    a strong homomorphism.
    """
    if f.source != g.source:
        raise SourceMismatch("factorization requires a common source")
    if not f.surjective or not g.surjective:
        raise SourceMismatch("factorization is defined for surjective homs")
    if kernel_inclusion_witness(f, g) is not None:
        return None
    images = [-1] * f.target.n
    for x in range(f.source.n):
        images[f(x)] = g(x)
    result = check_strong_hom(f.target, g.target, tuple(images))
    if not isinstance(result, Hom):
        raise InternalTheoremViolation(
            "factorization", f"forced factor is not a strong hom: {result}",
            (f.map.images, g.map.images),
        )
    return result


@dataclass(frozen=True)
class FQuotientPoset:
    """One canonical projection per congruence, ordered by factorization."""

    base: FiniteStructure
    reps: tuple[QuotientResult, ...]
    leq: tuple[tuple[bool, ...], ...]

    def __len__(self):
        return len(self.reps)

    def kernels(self) -> tuple[Partition, ...]:
        return tuple(kernel(r.proj) for r in self.reps)

    def covers(self) -> list[tuple[int, int]]:
        k = len(self.reps)
        out = []
        for i in range(k):
            for j in range(k):
                if i == j or not self.leq[i][j]:
                    continue
                if any(
                    m != i and m != j and self.leq[i][m] and self.leq[m][j]
                    for m in range(k)
                ):
                    continue
                out.append((i, j))
        return out


def quo_poset(
    M: FiniteStructure, max_universe: int = DEFAULT_UNIVERSE_BOUND
) -> FQuotientPoset:
    """The poset of quotient classes of M, one projection per congruence.

    The order is computed twice, by kernel inclusion and by searching for a
    factorizing hom; the routes must agree.
    """
    lat = con_lattice(M, max_universe)
    reps = tuple(quotient_structure(M, theta) for theta in lat.elements)
    k = len(reps)
    leq_rows = []
    for i in range(k):
        row = []
        for j in range(k):
            by_kernel = lat.leq[i][j]
            by_factor = leq_by_factorization(reps[i].proj, reps[j].proj) is not None
            if by_kernel != by_factor:
                raise InternalTheoremViolation(
                    "quo-poset",
                    f"kernel order and factorization order disagree at ({i},{j})",
                    (M.display_name(),),
                )
            row.append(by_kernel)
        leq_rows.append(tuple(row))
    return FQuotientPoset(M, reps, tuple(leq_rows))


@dataclass(frozen=True)
class QuoConReport:
    structure: str
    size: int
    entries_checked: int
    mismatches: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_quo_con_iso(
    M: FiniteStructure, max_universe: int = DEFAULT_UNIVERSE_BOUND
) -> QuoConReport:
    """Kernel maps the quotient poset bijectively onto the congruence
    lattice, matching factorization order with inclusion order entrywise."""
    lat = con_lattice(M, max_universe)
    poset = quo_poset(M, max_universe)
    mismatches: list[str] = []

    kernels = poset.kernels()
    if sorted(kernels, key=lambda p: p.class_of) != sorted(
        lat.elements, key=lambda p: p.class_of
    ):
        mismatches.append("kernels do not enumerate the congruence lattice")
    if len(set(kernels)) != len(kernels):
        mismatches.append("kernel map is not injective on representatives")

    entries = 0
    for i, j in itertools.product(range(len(poset)), repeat=2):
        entries += 1
        by_factor = poset.leq[i][j]
        by_kernel = kernels[i].refines(kernels[j])
        if by_factor != by_kernel:
            mismatches.append(
                f"order tables disagree at ({i},{j}):"
                f" factorization={by_factor} kernels={by_kernel}"
            )
    return QuoConReport(M.display_name(), len(poset), entries, tuple(mismatches))


@dataclass(frozen=True)
class CatThirdIsoReport:
    factor: Hom
    witness: Hom

    @property
    def ok(self) -> bool:
        return True


def verify_cat_third_iso(M: FiniteStructure, f: Hom, g: Hom) -> CatThirdIsoReport:
    """Quotienting the target of f by the kernel of the factor g/f yields a
    structure isomorphic to the target of g."""
    if f.source != M or g.source != M:
        raise SourceMismatch("both homs must start at the given structure")
    h = factor_hom(f, g)
    if not h.surjective:
        raise InternalTheoremViolation(
            "cat-third-iso", "factor of surjections is not surjective",
            (f.map.images, g.map.images),
        )
    requotient = quotient_structure(f.target, kernel(h))
    witness = is_isomorphic(requotient.structure, g.target)
    if witness is None:
        raise InternalTheoremViolation(
            "cat-third-iso", "(A/f)/(g/f) is not isomorphic to A/g",
            (f.map.images, g.map.images),
        )
    return CatThirdIsoReport(h, witness)


@dataclass(frozen=True)
class CatCorrespondenceReport:
    pairing: tuple[tuple[int, int], ...]
    filter_indices: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return True


def verify_cat_correspondence(
    M: FiniteStructure, f: Hom, max_universe: int = DEFAULT_UNIVERSE_BOUND
) -> CatCorrespondenceReport:
    """The filter above [f] maps onto the quotient poset of f's target by
    [g] -> [g/f], preserving and reflecting order."""
    if f.source != M:
        raise SourceMismatch("hom must start at the given structure")
    if not f.surjective:
        raise SourceMismatch("correspondence is stated for surjections")
    poset = quo_poset(M, max_universe)
    target_poset = quo_poset(f.target, max_universe)
    ker_f = kernel(f)
    kernels = poset.kernels()
    target_kernels = target_poset.kernels()

    filter_indices = [
        i for i in range(len(poset)) if ker_f.refines(kernels[i])
    ]
    instance = (M.display_name(), f.map.images)
    pairing: list[tuple[int, int]] = []
    for i in filter_indices:
        h = factor_hom(f, poset.reps[i].proj)
        ker_h = kernel(h)
        try:
            j = target_kernels.index(ker_h)
        except ValueError:
            raise InternalTheoremViolation(
                "cat-correspondence", "factor class missing from target poset",
                instance,
            ) from None
        pairing.append((i, j))

    hits = {j for _, j in pairing}
    if len(hits) != len(pairing) or len(pairing) != len(target_poset):
        raise InternalTheoremViolation(
            "cat-correspondence", "pairing is not a bijection", instance
        )
    for (i1, j1), (i2, j2) in itertools.product(pairing, repeat=2):
        if poset.leq[i1][i2] != target_poset.leq[j1][j2]:
            raise InternalTheoremViolation(
                "cat-correspondence",
                f"order disagrees at ({i1},{i2}) vs ({j1},{j2})",
                instance,
            )
    return CatCorrespondenceReport(tuple(pairing), tuple(filter_indices))


def equiv_implies_iso(f: Hom, g: Hom) -> IsoWitness:
    """For mutually factorizable surjections, the two factors are inverse
    isomorphisms between the targets."""
    gf = leq_by_factorization(f, g)
    fg = leq_by_factorization(g, f)
    if gf is None or fg is None:
        raise NotEquivalent("homs do not factor through each other")
    instance = (f.map.images, g.map.images)
    if any(fg(gf(x)) != x for x in range(f.target.n)) or any(
        gf(fg(y)) != y for y in range(g.target.n)
    ):
        raise InternalTheoremViolation(
            "equiv-iso", "factor pair is not a pair of inverses", instance
        )
    return IsoWitness(gf, "A/f", "A/g")


# --- bounded free-object verification ---------------------------------------------

@dataclass(frozen=True)
class FreeFailure:
    target_index: int
    target: str
    assignment: tuple[int, ...]
    count: int
    sample: tuple[tuple[int, ...], ...]

    def __str__(self):
        kind = "no extension" if self.count == 0 else f"{self.count} extensions"
        return (
            f"target #{self.target_index} ({self.target}), basis assignment "
            f"{self.assignment}: {kind}"
        )


@dataclass(frozen=True)
class FreeCheckReport:
    passed: bool
    targets: int
    assignments_checked: int
    failure: FreeFailure | None

    def describe(self) -> str:
        scope = f"{self.assignments_checked} assignments over {self.targets} targets"
        if self.passed:
            return f"PASS (relative to the given targets; {scope})"
        return f"FAIL ({scope}; {self.failure})"


def bounded_free_check(
    A: FiniteStructure,
    basis: ElementMap,
    targets: list[FiniteStructure],
    max_candidates: int = DEFAULT_SEARCH_BOUND,
) -> FreeCheckReport:
    """Check the universal property of (A, basis) against each target.

    For every target B and every set map from the basis into B, count the
    strong homs A -> B extending it; freeness relative to the targets means
    the count is exactly one every time. The first failure is reported with
    its multiplicity witness.
    """
    if basis.target_n != A.n:
        raise SizeMismatch("basis map must land in the universe of A")
    if len(set(basis.images)) != basis.source_n:
        raise SizeMismatch("basis map must be injective")
    for B in targets:
        if B.sig != A.sig:
            raise SignatureMismatch("targets must share the signature of A")

    checked = 0
    for index, B in enumerate(targets):
        for assignment in itertools.product(range(B.n), repeat=basis.source_n):
            checked += 1
            prescribed = {
                basis.images[k]: assignment[k] for k in range(basis.source_n)
            }
            homs = enumerate_strong_homs(
                A, B, "all", max_candidates, prescribed=prescribed
            )
            if len(homs) != 1:
                failure = FreeFailure(
                    index,
                    B.display_name(),
                    assignment,
                    len(homs),
                    tuple(h.map.images for h in homs[:2]),
                )
                return FreeCheckReport(False, len(targets), checked, failure)
    return FreeCheckReport(True, len(targets), checked, None)


def poset_to_dot(poset: FQuotientPoset, title: str = "quo_poset") -> str:
    """Hasse diagram of the quotient poset over kernel partitions."""
    lines = [f"digraph {title} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, theta in enumerate(poset.kernels()):
        lines.append(f'  q{i} [label="{format_partition(theta)}"];')
    for i, j in poset.covers():
        lines.append(f"  q{i} -> q{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
