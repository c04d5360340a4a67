"""Partitions, congruence testing, and the congruence lattice.

Partitions are canonical: block labels appear in order of first occurrence,
so partition equality, hashing, and golden tests are exact. The congruence
lattice is generated from principal congruences and closed under binary
join; the top is computed, never presumed (the all-relation need not be a
congruence when relation symbols are present).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    NotInLattice,
    NotRefinement,
    SizeMismatch,
    StructureFormatError,
    UniverseTooLarge,
)
from .structures import FiniteStructure

DEFAULT_UNIVERSE_BOUND = 9


def _canonical(class_of: Sequence[int]) -> tuple[int, ...]:
    relabel: dict[int, int] = {}
    out = []
    for c in class_of:
        if c not in relabel:
            relabel[c] = len(relabel)
        out.append(relabel[c])
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    """An equivalence relation on 0..n-1, as a canonical block-index vector."""

    class_of: tuple[int, ...]

    def __post_init__(self):
        if not self.class_of:
            raise StructureFormatError("partition of an empty universe")
        if self.class_of != _canonical(self.class_of):
            raise StructureFormatError("partition labels not canonical")

    @staticmethod
    def from_class_of(class_of: Sequence[int]) -> "Partition":
        return Partition(_canonical(class_of))

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        """Build from explicit blocks; unlisted elements become singletons."""
        class_of = [-1] * n
        for marker, block in enumerate(blocks):
            for x in block:
                if not (0 <= x < n):
                    raise SizeMismatch(f"element {x} outside 0..{n - 1}")
                if class_of[x] != -1:
                    raise StructureFormatError(f"element {x} in two blocks")
                class_of[x] = n + marker
        fresh = 0
        for x in range(n):
            if class_of[x] == -1:
                class_of[x] = fresh
                fresh += 1
        return cls.from_class_of(class_of)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Partition":
        """Least equivalence relating the given pairs."""
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise SizeMismatch(f"pair ({a},{b}) outside 0..{n - 1}")
            parent[find(a)] = find(b)
        return cls.from_class_of([find(x) for x in range(n)])

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.class_of)

    @property
    def num_blocks(self) -> int:
        return max(self.class_of) + 1

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for x, c in enumerate(self.class_of):
            out[c].append(x)
        return tuple(tuple(b) for b in out)

    def relates(self, x: int, y: int) -> bool:
        return self.class_of[x] == self.class_of[y]

    def refines(self, other: "Partition") -> bool:
        """self <= other in the refinement order (self is finer)."""
        if self.n != other.n:
            raise SizeMismatch("partitions over different universes")
        seen: dict[int, int] = {}
        for c_self, c_other in zip(self.class_of, other.class_of):
            if seen.setdefault(c_self, c_other) != c_other:
                return False
        return True

    def pairs(self) -> Iterator[tuple[int, int]]:
        """Related pairs (x, y) with x < y."""
        for block in self.blocks():
            yield from itertools.combinations(block, 2)


def format_partition(p: Partition) -> str:
    return " | ".join(" ".join(str(x) for x in b) for b in p.blocks())


def parse_partition(text: str, n: int) -> Partition:
    """Parse the CLI literal, e.g. "0 2 4 | 1 3 5"; singletons may be omitted."""
    blocks = []
    for chunk in text.split("|"):
        elems = chunk.split()
        if not elems:
            continue
        try:
            block = [int(e) for e in elems]
        except ValueError as exc:
            raise StructureFormatError(f"bad partition literal {chunk!r}") from exc
        blocks.append(block)
    return Partition.from_blocks(n, blocks)


def eq_meet(parts: Sequence[Partition]) -> Partition:
    """Intersection of equivalence relations."""
    if not parts:
        raise SizeMismatch("meet of an empty family")
    n = parts[0].n
    for p in parts[1:]:
        if p.n != n:
            raise SizeMismatch("partitions over different universes")
    keys = [tuple(p.class_of[x] for p in parts) for x in range(n)]
    index: dict[tuple, int] = {}
    return Partition.from_class_of([index.setdefault(k, len(index)) for k in keys])


def eq_join(parts: Sequence[Partition]) -> Partition:
    """Least equivalence containing all the inputs.

    Computed as the transitive closure of the union, which on a finite set
    equals the union of all finite composition chains of the inputs.
    """
    if not parts:
        raise SizeMismatch("join of an empty family")
    n = parts[0].n
    for p in parts[1:]:
        if p.n != n:
            raise SizeMismatch("partitions over different universes")
    all_pairs = []
    for p in parts:
        for block in p.blocks():
            all_pairs.extend(zip(block, block[1:]))
    return Partition.from_pairs(n, all_pairs)


# --- congruence conditions ---------------------------------------------------

@dataclass(frozen=True)
class CongruenceFunctionViolation:
    symbol: str
    pair: tuple[int, int]
    args: tuple[int, ...]
    substituted: tuple[int, ...]
    outputs: tuple[int, int]

    def __str__(self):
        return (
            f"function {self.symbol!r}: pair {self.pair} sends {self.args} and "
            f"{self.substituted} to unrelated outputs {self.outputs}"
        )


@dataclass(frozen=True)
class CongruenceRelationViolation:
    symbol: str
    pair: tuple[int, int]
    true_tuple: tuple[int, ...]
    false_tuple: tuple[int, ...]

    def __str__(self):
        return (
            f"relation {self.symbol!r}: pair {self.pair} relates {self.true_tuple}"
            f" (holds) to {self.false_tuple} (fails)"
        )


CongruenceViolation = CongruenceFunctionViolation | CongruenceRelationViolation


def check_congruence(
    M: FiniteStructure, theta: Partition
) -> CongruenceViolation | None:
    """First single-coordinate violation of the congruence conditions, or None.

    Single-coordinate substitution suffices: componentwise substitution
    factors through a chain of single-coordinate steps.
    """
    if theta.n != M.n:
        raise SizeMismatch("partition size differs from the universe")
    blocks = theta.blocks()
    cls = theta.class_of
    for sym, arity in M.sig.functions:
        if arity == 0:
            continue
        table = M.func_tables[sym]
        for args in itertools.product(range(M.n), repeat=arity):
            base = M.apply(sym, args)
            for i, x in enumerate(args):
                for y in blocks[cls[x]]:
                    if y == x:
                        continue
                    subst = args[:i] + (y,) + args[i + 1:]
                    other = M.apply(sym, subst)
                    if cls[base] != cls[other]:
                        return CongruenceFunctionViolation(
                            sym, (x, y), args, subst, (base, other)
                        )
    for sym, arity in M.sig.relations:
        if arity == 0:
            continue
        tuples = M.rel_set(sym)
        for args in sorted(tuples):
            for i, x in enumerate(args):
                for y in blocks[cls[x]]:
                    if y == x:
                        continue
                    subst = args[:i] + (y,) + args[i + 1:]
                    if subst not in tuples:
                        return CongruenceRelationViolation(sym, (x, y), args, subst)
    return None


def is_congruence(M: FiniteStructure, theta: Partition) -> bool:
    return check_congruence(M, theta) is None


@dataclass(frozen=True)
class NoCongruence:
    """Evidence that no congruence contains the requested pairs."""

    symbol: str
    witness: CongruenceRelationViolation

    def __str__(self):
        return f"no congruence: {self.witness}"


def principal_congruence(
    M: FiniteStructure, pairs: Iterable[tuple[int, int]]
) -> Partition | NoCongruence:
    """Least congruence containing the pairs, or evidence none exists.

    Union-find fixed point under single-coordinate function substitution,
    then a relation-biconditional audit; an audit failure transfers to every
    larger equivalence, so it refutes all congruences containing the pairs.
    """
    n = M.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> bool:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[rb] = ra
        return True

    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise SizeMismatch(f"pair ({a},{b}) outside 0..{n - 1}")
        union(a, b)

    changed = True
    while changed:
        changed = False
        related = [
            (a, b)
            for a in range(n)
            for b in range(a + 1, n)
            if find(a) == find(b)
        ]
        for sym, arity in M.sig.functions:
            if arity == 0:
                continue
            for a, b in related:
                for i in range(arity):
                    for rest in itertools.product(range(n), repeat=arity - 1):
                        left = rest[:i] + (a,) + rest[i:]
                        right = rest[:i] + (b,) + rest[i:]
                        if union(M.apply(sym, left), M.apply(sym, right)):
                            changed = True

    theta = Partition.from_class_of([find(x) for x in range(n)])
    violation = check_congruence(M, theta)
    if violation is None:
        return theta
    assert isinstance(violation, CongruenceRelationViolation)
    return NoCongruence(violation.symbol, violation)


# --- the lattice ---------------------------------------------------------------

@dataclass(frozen=True)
class ConLattice:
    """A finite lattice of partitions under refinement, with order and
    meet/join tables."""

    elements: tuple[Partition, ...]
    leq: tuple[tuple[bool, ...], ...]
    meet_table: tuple[tuple[int, ...], ...]
    join_table: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.elements)

    def index_of(self, p: Partition) -> int:
        try:
            return self.elements.index(p)
        except ValueError:
            raise NotInLattice(f"{format_partition(p)} not in the lattice") from None

    def bottom(self) -> int:
        return next(
            i for i in range(len(self.elements))
            if all(self.leq[i][j] for j in range(len(self.elements)))
        )

    def top(self) -> int:
        return next(
            i for i in range(len(self.elements))
            if all(self.leq[j][i] for j in range(len(self.elements)))
        )

    def covers(self) -> list[tuple[int, int]]:
        """Covering pairs (i, j): i < j with nothing strictly between."""
        k = len(self.elements)
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


def _sort_key(p: Partition):
    return (-p.num_blocks, p.class_of)


def build_lattice(partitions: Iterable[Partition]) -> ConLattice:
    """Assemble order and meet/join tables for a set of partitions.

    The element order (finest first) is a linear extension of refinement.
    """
    elements = tuple(sorted(set(partitions), key=_sort_key))
    index = {p: i for i, p in enumerate(elements)}
    k = len(elements)
    leq = tuple(
        tuple(elements[i].refines(elements[j]) for j in range(k)) for i in range(k)
    )
    def locate(p: Partition, what: str) -> int:
        i = index.get(p)
        if i is None:
            raise NotInLattice(f"{what} {format_partition(p)} escapes the element set")
        return i

    meet_rows = []
    join_rows = []
    for i in range(k):
        meet_row = []
        join_row = []
        for j in range(k):
            meet_row.append(locate(eq_meet([elements[i], elements[j]]), "meet"))
            join_row.append(locate(eq_join([elements[i], elements[j]]), "join"))
        meet_rows.append(tuple(meet_row))
        join_rows.append(tuple(join_row))
    return ConLattice(elements, leq, tuple(meet_rows), tuple(join_rows))


def con_lattice(
    M: FiniteStructure, max_universe: int = DEFAULT_UNIVERSE_BOUND
) -> ConLattice:
    """The congruence lattice of M.

    Generated by the principal congruences of all element pairs (skipping
    pairs no congruence relates), closed under binary join, plus the
    diagonal. Every congruence is the join of the principal congruences of
    its pairs, so this is exhaustive.
    """
    if M.n > max_universe:
        raise UniverseTooLarge(M.n, max_universe)
    found: set[Partition] = {Partition.discrete(M.n)}
    for a in range(M.n):
        for b in range(a + 1, M.n):
            result = principal_congruence(M, [(a, b)])
            if isinstance(result, Partition):
                found.add(result)
    frontier = set(found)
    while frontier:
        fresh: set[Partition] = set()
        for p in frontier:
            for q in found:
                j = eq_join([p, q])
                if j not in found and j not in fresh:
                    fresh.add(j)
        found |= fresh
        frontier = fresh
    lat = build_lattice(found)
    assert all(is_congruence(M, p) for p in lat.elements)
    return lat


def principal_filter(lat: ConLattice, theta: Partition) -> ConLattice:
    """The sublattice of elements above theta, with inherited tables."""
    i0 = lat.index_of(theta)
    keep = [j for j in range(len(lat.elements)) if lat.leq[i0][j]]
    return build_lattice([lat.elements[j] for j in keep])


# --- partition calculus used by the isomorphism theorems -----------------------

def restrict_congruence(theta: Partition, elements: Iterable[int]) -> Partition:
    """Restriction of theta to an ordered subset, re-indexed to 0..k-1.

    A plain set is taken in increasing order, matching the re-indexing of
    induced substructures.
    """
    elems = list(elements)
    if len(set(elems)) != len(elems):
        raise SizeMismatch("restriction subset lists an element twice")
    for x in elems:
        if not (0 <= x < theta.n):
            raise SizeMismatch(f"element {x} outside 0..{theta.n - 1}")
    return Partition.from_class_of([theta.class_of[x] for x in elems])


def saturation(
    M: FiniteStructure, theta: Partition, subset: Iterable[int]
) -> frozenset[int]:
    """All elements whose theta-class meets the subset."""
    if theta.n != M.n:
        raise SizeMismatch("partition size differs from the universe")
    hit = {theta.class_of[x] for x in subset}
    return frozenset(x for x in range(M.n) if theta.class_of[x] in hit)


def quotient_of_congruence(psi: Partition, theta: Partition) -> Partition:
    """psi/theta as a partition of theta's blocks (canonical block ids)."""
    if psi.n != theta.n:
        raise SizeMismatch("partitions over different universes")
    for block in theta.blocks():
        first = block[0]
        for x in block[1:]:
            if not psi.relates(first, x):
                raise NotRefinement((first, x))
    reps = [block[0] for block in theta.blocks()]
    return Partition.from_class_of([psi.class_of[r] for r in reps])


# --- enumeration and export -----------------------------------------------------

def iter_partitions(n: int) -> Iterator[Partition]:
    """All partitions of 0..n-1, by restricted growth strings."""
    rgs = [0] * n

    def grow(k: int, maxed: int):
        if k == n:
            yield Partition(tuple(rgs))
            return
        for c in range(maxed + 2):
            rgs[k] = c
            yield from grow(k + 1, max(maxed, c))

    if n >= 1:
        yield from grow(1, 0)


def lattice_to_dot(lat: ConLattice, title: str = "con_lattice") -> str:
    """Hasse diagram in DOT form; edges are covering relations only."""
    lines = [f"digraph {title} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, p in enumerate(lat.elements):
        lines.append(f'  p{i} [label="{format_partition(p)}"];')
    for i, j in lat.covers():
        lines.append(f"  p{i} -> p{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
