"""Witness-producing verifiers for the isomorphism and correspondence
theorems on finite structures.

Each verifier constructs the explicit witness map and re-validates it as a
strong homomorphism rather than trusting the proof; a validation failure is
an implementation bug and is raised as InternalTheoremViolation with enough
context to reproduce.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .congruences import (
    ConLattice,
    Partition,
    check_congruence,
    con_lattice,
    format_partition,
    principal_filter,
    quotient_of_congruence,
    restrict_congruence,
    saturation,
)
from .errors import (
    InternalTheoremViolation,
    NotACongruence,
    SaturationNotClosed,
    NotClosed,
)
from .homs import Hom, check_strong_hom, enumerate_strong_homs, image, kernel
from .quotients import QuotientResult, factor_hom, quotient_structure
from .structures import FiniteStructure, check_closed


@dataclass(frozen=True)
class IsoWitness:
    iso: Hom
    lhs_description: str
    rhs_description: str

    def __post_init__(self):
        if not self.iso.bijective:
            raise InternalTheoremViolation(
                "witness", "claimed isomorphism is not bijective", self
            )

    def __str__(self):
        return f"{self.lhs_description} ~ {self.rhs_description} via {self.iso}"


@dataclass(frozen=True)
class LatticeIsoWitness:
    pairing: tuple[tuple[int, int], ...]

    def __str__(self):
        entries = " ".join(f"{i}<->{j}" for i, j in self.pairing)
        return f"lattice isomorphism [{entries}]"


def _validated_iso(
    theorem: str,
    lhs: FiniteStructure,
    rhs: FiniteStructure,
    images: list[int],
    lhs_desc: str,
    rhs_desc: str,
    instance: object,
) -> IsoWitness:
    if -1 in images:
        raise InternalTheoremViolation(theorem, "witness map not total", instance)
    result = check_strong_hom(lhs, rhs, tuple(images))
    if not isinstance(result, Hom):
        raise InternalTheoremViolation(theorem, str(result), instance)
    if not result.bijective:
        raise InternalTheoremViolation(theorem, "witness not bijective", instance)
    return IsoWitness(result, lhs_desc, rhs_desc)


def first_iso(h: Hom) -> IsoWitness:
    """source/ker h is isomorphic to the image of h, via block-of-x -> h(x)."""
    ker = kernel(h)
    quot = quotient_structure(h.source, ker)
    img, inclusion = image(h)
    pos = {y: i for i, y in enumerate(inclusion.map.images)}
    images = [-1] * quot.structure.n
    for x in range(h.source.n):
        images[ker.class_of[x]] = pos[h(x)]
    name = h.source.display_name()
    return _validated_iso(
        "first-iso", quot.structure, img, images,
        f"{name}/ker", "image", (h.map.images,),
    )


def second_iso(
    M: FiniteStructure, N: set[int] | frozenset[int], theta: Partition
) -> IsoWitness:
    """N/theta|_N is isomorphic to N^theta/theta|_{N^theta}."""
    subset = sorted(N)
    check_closed(M, subset)
    violation = check_congruence(M, theta)
    if violation is not None:
        raise NotACongruence(violation)

    saturated = sorted(saturation(M, theta, subset))
    try:
        check_closed(M, saturated)
    except NotClosed as exc:
        raise SaturationNotClosed(exc.symbol, exc.witness) from exc

    from .structures import induced_substructure

    sub_n = induced_substructure(M, subset)
    sub_sat = induced_substructure(M, saturated)
    theta_n = restrict_congruence(theta, subset)
    theta_sat = restrict_congruence(theta, saturated)
    lhs = quotient_structure(sub_n, theta_n)
    rhs = quotient_structure(sub_sat, theta_sat)

    pos_n = {x: i for i, x in enumerate(subset)}
    pos_sat = {x: i for i, x in enumerate(saturated)}
    images = [-1] * lhs.structure.n
    for y in subset:
        lhs_block = theta_n.class_of[pos_n[y]]
        rhs_block = theta_sat.class_of[pos_sat[y]]
        if images[lhs_block] not in (-1, rhs_block):
            raise InternalTheoremViolation(
                "second-iso", f"witness ambiguous at element {y}",
                (subset, format_partition(theta)),
            )
        images[lhs_block] = rhs_block
    return _validated_iso(
        "second-iso", lhs.structure, rhs.structure, images,
        "N/theta|N", "N^theta/theta|N^theta",
        (subset, format_partition(theta)),
    )


def third_iso(M: FiniteStructure, theta: Partition, psi: Partition) -> IsoWitness:
    """(M/theta)/(psi/theta) is isomorphic to M/psi, for theta <= psi."""
    inner = quotient_structure(M, theta)
    psi_over_theta = quotient_of_congruence(psi, theta)
    lhs = quotient_structure(inner.structure, psi_over_theta)
    rhs = quotient_structure(M, psi)
    images = [-1] * lhs.structure.n
    for x in range(M.n):
        double_block = psi_over_theta.class_of[theta.class_of[x]]
        images[double_block] = psi.class_of[x]
    name = M.display_name()
    return _validated_iso(
        "third-iso", lhs.structure, rhs.structure, images,
        f"({name}/theta)/(psi/theta)", f"{name}/psi",
        (format_partition(theta), format_partition(psi)),
    )


def correspondence(M: FiniteStructure, theta: Partition) -> LatticeIsoWitness:
    """The filter above theta in Con(M) is order-isomorphic to Con(M/theta),
    via psi -> psi/theta."""
    violation = check_congruence(M, theta)
    if violation is not None:
        raise NotACongruence(violation)
    lat = con_lattice(M)
    filt = principal_filter(lat, theta)
    quot = quotient_structure(M, theta)
    quot_lat = con_lattice(quot.structure)

    instance = (M.display_name(), format_partition(theta))
    pairing: list[tuple[int, int]] = []
    for i, psi in enumerate(filt.elements):
        img = quotient_of_congruence(psi, theta)
        try:
            j = quot_lat.index_of(img)
        except Exception as exc:
            raise InternalTheoremViolation(
                "correspondence", f"psi/theta escapes Con(M/theta): {exc}", instance
            ) from exc
        pairing.append((i, j))
    return _validated_lattice_iso("correspondence", filt, quot_lat, pairing, instance)


def _validated_lattice_iso(
    theorem: str,
    lhs: ConLattice,
    rhs: ConLattice,
    pairing: list[tuple[int, int]],
    instance: object,
) -> LatticeIsoWitness:
    rhs_hits = {j for _, j in pairing}
    if len(rhs_hits) != len(pairing) or len(pairing) != len(rhs.elements):
        raise InternalTheoremViolation(theorem, "pairing is not a bijection", instance)
    for (i1, j1), (i2, j2) in itertools.product(pairing, repeat=2):
        if lhs.leq[i1][i2] != rhs.leq[j1][j2]:
            raise InternalTheoremViolation(
                theorem,
                f"order disagrees at lhs ({i1},{i2}) vs rhs ({j1},{j2})",
                instance,
            )
    return LatticeIsoWitness(tuple(pairing))


@dataclass(frozen=True)
class KerFracReport:
    transported: Partition
    factor_kernel: Partition

    @property
    def ok(self) -> bool:
        return self.transported == self.factor_kernel


def check_ker_frac(M: FiniteStructure, f: Hom, g: Hom) -> KerFracReport:
    """Transporting (ker g)/(ker f) along the first-iso witness of f must
    equal ker(g/f)."""
    h = factor_hom(f, g)
    phi = first_iso(f).iso
    psi_over_theta = quotient_of_congruence(kernel(g), kernel(f))
    transported_class = [-1] * f.target.n
    for block, cls in enumerate(psi_over_theta.class_of):
        transported_class[phi(block)] = cls
    transported = Partition.from_class_of(transported_class)
    factor_kernel = kernel(h)
    report = KerFracReport(transported, factor_kernel)
    if not report.ok:
        raise InternalTheoremViolation(
            "ker-frac",
            f"{format_partition(transported)} != {format_partition(factor_kernel)}",
            (f.map.images, g.map.images),
        )
    return report


# --- the exhaustive sweep -------------------------------------------------------

@dataclass
class SweepRow:
    theorem: str
    instances: int = 0
    defects: list[str] = field(default_factory=list)


@dataclass
class SweepReport:
    structure: str
    rows: list[SweepRow]

    @property
    def total_defects(self) -> int:
        return sum(len(r.defects) for r in self.rows)


def _closed_subsets(M: FiniteStructure) -> list[list[int]]:
    out = []
    for size in range(1, M.n + 1):
        for subset in itertools.combinations(range(M.n), size):
            try:
                check_closed(M, subset)
            except NotClosed:
                continue
            out.append(list(subset))
    return out


def run_theorem_sweep(
    M: FiniteStructure,
    max_universe: int = 9,
    max_search: int = 10**7,
) -> SweepReport:
    """Verify every admissible theorem instance over M.

    Homs for the first isomorphism theorem range over all strong homs from
    M into each of its quotients; congruence pairs, closed subsets, and
    canonical projections supply the rest.
    """
    lat = con_lattice(M, max_universe)
    quotients: list[QuotientResult] = [
        quotient_structure(M, theta) for theta in lat.elements
    ]
    closed_sets = _closed_subsets(M)

    rows = {
        name: SweepRow(name)
        for name in (
            "first-iso", "second-iso", "third-iso",
            "correspondence", "ker-frac",
        )
    }

    def attempt(row: SweepRow, fn, *args):
        row.instances += 1
        try:
            fn(*args)
        except InternalTheoremViolation as exc:
            row.defects.append(str(exc))

    for q in quotients:
        for h in enumerate_strong_homs(M, q.structure, "all", max_search):
            attempt(rows["first-iso"], first_iso, h)
    for theta in lat.elements:
        for subset in closed_sets:
            attempt(rows["second-iso"], second_iso, M, set(subset), theta)
        attempt(rows["correspondence"], correspondence, M, theta)
    for i, theta in enumerate(lat.elements):
        for j, psi in enumerate(lat.elements):
            if not lat.leq[i][j]:
                continue
            attempt(rows["third-iso"], third_iso, M, theta, psi)
            attempt(
                rows["ker-frac"], check_ker_frac, M,
                quotients[i].proj, quotients[j].proj,
            )

    return SweepReport(M.display_name(), list(rows.values()))
