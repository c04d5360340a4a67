"""Strong homomorphisms: validation, exhaustive enumeration, kernels, images.

A Hom cannot exist in an invalid state: both strong-homomorphism conditions
are checked at construction. Enumeration is lexicographic over image
sequences so golden tests are stable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Literal, Mapping, Sequence

from .congruences import Partition, is_congruence
from .errors import (
    SearchSpaceTooLarge,
    SignatureMismatch,
    SizeMismatch,
    TargetSourceMismatch,
)
from .structures import (
    ElementMap,
    FiniteStructure,
    _check_at,
    _incremental_checks,
    induced_substructure,
)

DEFAULT_SEARCH_BOUND = 10**7


@dataclass(frozen=True)
class FunctionViolation:
    symbol: str
    args: tuple[int, ...]
    expected: int
    got: int

    def __str__(self):
        return (
            f"function {self.symbol!r} at {self.args}: image of the value is "
            f"{self.expected} but the function of the images is {self.got}"
        )


@dataclass(frozen=True)
class RelationViolation:
    symbol: str
    args: tuple[int, ...]
    holds_in_source: bool

    def __str__(self):
        direction = (
            "holds in the source but not on the images"
            if self.holds_in_source
            else "holds on the images but not in the source"
        )
        return f"relation {self.symbol!r} at {self.args}: {direction}"


HomViolation = FunctionViolation | RelationViolation


class Hom:
    """A validated strong homomorphism."""

    __slots__ = ("source", "target", "map", "surjective", "injective")

    def __init__(self, source: FiniteStructure, target: FiniteStructure,
                 map: ElementMap):
        violation = _find_violation(source, target, map.images)
        if violation is not None:
            raise ValueError(f"not a strong homomorphism: {violation}")
        self.source = source
        self.target = target
        self.map = map
        distinct = len(set(map.images))
        self.surjective = distinct == target.n
        self.injective = distinct == source.n

    @property
    def bijective(self) -> bool:
        return self.surjective and self.injective

    def __call__(self, x: int) -> int:
        return self.map.images[x]

    def __eq__(self, other):
        return (
            isinstance(other, Hom)
            and self.source == other.source
            and self.target == other.target
            and self.map.images == other.map.images
        )

    def __hash__(self):
        return hash((self.map.images, self.source.n, self.target.n))

    def __repr__(self):
        kind = (
            "iso" if self.bijective
            else "epi" if self.surjective
            else "mono" if self.injective
            else "hom"
        )
        return f"Hom({kind} {list(self.map.images)})"

    @classmethod
    def identity(cls, M: FiniteStructure) -> "Hom":
        return cls(M, M, ElementMap(M.n, M.n, tuple(range(M.n))))

    def inverse(self) -> "Hom":
        if not self.bijective:
            raise ValueError("only bijective homs invert")
        inv = [0] * self.target.n
        for x, y in enumerate(self.map.images):
            inv[y] = x
        return Hom(self.target, self.source,
                   ElementMap(self.target.n, self.source.n, tuple(inv)))


def _find_violation(
    M: FiniteStructure, N: FiniteStructure, images: Sequence[int]
) -> HomViolation | None:
    for sym, arity in M.sig.functions:
        for args in itertools.product(range(M.n), repeat=arity):
            expected = images[M.apply(sym, args)]
            got = N.apply(sym, tuple(images[a] for a in args))
            if expected != got:
                return FunctionViolation(sym, args, expected, got)
    for sym, arity in M.sig.relations:
        for args in itertools.product(range(M.n), repeat=arity):
            here = M.holds(sym, args)
            there = N.holds(sym, tuple(images[a] for a in args))
            if here != there:
                return RelationViolation(sym, args, here)
    return None


def check_strong_hom(
    M: FiniteStructure,
    N: FiniteStructure,
    images: Sequence[int] | ElementMap,
) -> Hom | HomViolation:
    """Validate a raw map; the violation report is the failure result."""
    if M.sig != N.sig:
        raise SignatureMismatch("homomorphism requires a common signature")
    if isinstance(images, ElementMap):
        emap = images
        if emap.source_n != M.n or emap.target_n != N.n:
            raise SizeMismatch("element map shape differs from the structures")
    else:
        emap = ElementMap(M.n, N.n, tuple(images))
    violation = _find_violation(M, N, emap.images)
    if violation is not None:
        return violation
    return Hom(M, N, emap)


HomFilter = Literal["all", "surjective", "bijective"]


def enumerate_strong_homs(
    M: FiniteStructure,
    N: FiniteStructure,
    kind: HomFilter = "all",
    max_candidates: int = DEFAULT_SEARCH_BOUND,
    prescribed: Mapping[int, int] | None = None,
) -> list[Hom]:
    """All strong homs M -> N, lexicographic by image sequence.

    Backtracks over images with incremental checks; the guard rejects when
    the raw candidate count |N|^|M| exceeds the bound. `prescribed` pins the
    images of selected source elements before the search.
    """
    if M.sig != N.sig:
        raise SignatureMismatch("homomorphism requires a common signature")
    candidates = N.n ** M.n
    if candidates > max_candidates:
        raise SearchSpaceTooLarge(candidates, max_candidates)
    if kind == "bijective" and M.n != N.n:
        return []

    checks = _incremental_checks(M)
    images = [-1] * M.n
    used = [False] * N.n
    out: list[Hom] = []
    prescribed = dict(prescribed or {})

    def extend(k: int):
        if k == M.n:
            if kind != "all" and len(set(images)) != N.n:
                return
            hom = check_strong_hom(M, N, tuple(images))
            assert isinstance(hom, Hom)
            out.append(hom)
            return
        if kind != "all":
            # every missing target value still needs a preimage
            missing = N.n - len({images[i] for i in range(k)})
            if missing > M.n - k:
                return
        choices = (prescribed[k],) if k in prescribed else range(N.n)
        for v in choices:
            if kind == "bijective" and used[v]:
                continue
            images[k] = v
            used[v] = True
            if _check_at(M, N, images, checks[k]):
                extend(k + 1)
            used[v] = False
        images[k] = -1

    extend(0)
    return out


def kernel(h: Hom) -> Partition:
    """Partition of the source identifying elements with equal images."""
    theta = Partition.from_class_of(h.map.images)
    assert is_congruence(h.source, theta)
    return theta


def kernel_inclusion_witness(f: Hom, g: Hom) -> tuple[int, int] | None:
    """First pair collapsed by f but separated by g, or None if ker f <= ker g."""
    groups: dict[int, int] = {}
    for x in range(f.source.n):
        first = groups.setdefault(f(x), x)
        if g(first) != g(x):
            return (first, x)
    return None


def image(h: Hom) -> tuple[FiniteStructure, Hom]:
    """Induced substructure of the target on the image set, plus its
    inclusion into the target."""
    img = sorted(set(h.map.images))
    sub = induced_substructure(h.target, img)
    inclusion = Hom(
        sub, h.target, ElementMap(sub.n, h.target.n, tuple(img))
    )
    return sub, inclusion


def corestrict(h: Hom) -> Hom:
    """h with the target cut down to its image; always surjective."""
    sub, inclusion = image(h)
    pos = {y: i for i, y in enumerate(inclusion.map.images)}
    return Hom(
        h.source, sub,
        ElementMap(h.source.n, sub.n, tuple(pos[y] for y in h.map.images)),
    )


def compose(outer: Hom, inner: Hom) -> Hom:
    """outer after inner."""
    if inner.target != outer.source:
        raise TargetSourceMismatch("inner target differs from outer source")
    images = tuple(outer.map.images[y] for y in inner.map.images)
    return Hom(
        inner.source, outer.target,
        ElementMap(inner.source.n, outer.target.n, images),
    )
