"""Signatures, finite first-order structures, substructures, isomorphism.

Universes are always 0..n-1; element names are display metadata and never
affect equality. Function tables are stored flat in row-major argument
order; relation tuple sets are sorted and duplicate-free so structural
equality is plain field equality.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, TYPE_CHECKING

from .errors import (
    ArityMismatch,
    DuplicateName,
    EmptyUnsupported,
    InvalidIdentifier,
    MissingTable,
    NotClosed,
    OutOfRangeElement,
    SignatureMismatch,
    SizeMismatch,
    StructureFormatError,
)

if TYPE_CHECKING:
    from .homs import Hom

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
KEYWORDS = frozenset({"forall", "exists", "true", "false"})


@dataclass(frozen=True)
class Signature:
    """Function and relation symbols with arities."""

    functions: tuple[tuple[str, int], ...] = ()
    relations: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        seen: set[str] = set()
        for name, arity in (*self.functions, *self.relations):
            if not IDENT_RE.match(name) or name in KEYWORDS:
                raise InvalidIdentifier(name)
            if name in seen:
                raise DuplicateName(name)
            seen.add(name)
            if arity < 0:
                raise ArityMismatch(name, "negative arity")

    def function_arity(self, name: str) -> int | None:
        for sym, arity in self.functions:
            if sym == name:
                return arity
        return None

    def relation_arity(self, name: str) -> int | None:
        for sym, arity in self.relations:
            if sym == name:
                return arity
        return None

    @property
    def constants(self) -> tuple[str, ...]:
        return tuple(name for name, arity in self.functions if arity == 0)

    def describe(self) -> str:
        parts = [f"{n}/{a}" for n, a in self.functions]
        parts += [f"{n}/{a}" for n, a in self.relations]
        return " ".join(parts) if parts else "(empty)"


def _flat_index(args: Sequence[int], n: int) -> int:
    idx = 0
    for a in args:
        idx = idx * n + a
    return idx


@dataclass(frozen=True, eq=True)
class FiniteStructure:
    """A finite L-structure on universe 0..n-1.

    func_tables maps each function symbol to a flat tuple of length
    n**arity (row-major by argument); rel_tuples maps each relation symbol
    to a sorted tuple of distinct tuples.
    """

    sig: Signature
    n: int
    func_tables: Mapping[str, tuple[int, ...]]
    rel_tuples: Mapping[str, tuple[tuple[int, ...], ...]]
    elem_names: tuple[str, ...] | None = field(default=None, compare=False)
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise StructureFormatError("universe must have at least one element")
        for sym, arity in self.sig.functions:
            table = self.func_tables.get(sym)
            if table is None:
                raise MissingTable(sym)
            if len(table) != self.n ** arity:
                raise ArityMismatch(sym, f"{len(table)} entries for arity {arity}")
            for value in table:
                if not (0 <= value < self.n):
                    raise OutOfRangeElement(sym, value)
        for sym in self.func_tables:
            if self.sig.function_arity(sym) is None:
                raise StructureFormatError(f"table for undeclared function {sym!r}")
        for sym, arity in self.sig.relations:
            tuples = self.rel_tuples.get(sym)
            if tuples is None:
                raise MissingTable(sym)
            if list(tuples) != sorted(set(tuples)):
                raise StructureFormatError(f"relation {sym!r} not in canonical order")
            for t in tuples:
                if len(t) != arity:
                    raise ArityMismatch(sym, f"tuple {t} for arity {arity}")
                for value in t:
                    if not (0 <= value < self.n):
                        raise OutOfRangeElement(sym, value)
        for sym in self.rel_tuples:
            if self.sig.relation_arity(sym) is None:
                raise StructureFormatError(f"tuples for undeclared relation {sym!r}")
        if self.elem_names is not None:
            if len(self.elem_names) != self.n:
                raise StructureFormatError("element name count differs from n")
            if len(set(self.elem_names)) != self.n:
                raise StructureFormatError("element names not distinct")

    @property
    def universe(self) -> range:
        return range(self.n)

    def apply(self, symbol: str, args: Sequence[int]) -> int:
        return self.func_tables[symbol][_flat_index(args, self.n)]

    def holds(self, symbol: str, args: Sequence[int]) -> bool:
        return tuple(args) in self.rel_tuples[symbol]

    def rel_set(self, symbol: str) -> frozenset[tuple[int, ...]]:
        return frozenset(self.rel_tuples[symbol])

    def element_name(self, x: int) -> str:
        return self.elem_names[x] if self.elem_names else str(x)

    def display_name(self) -> str:
        return self.name if self.name else f"structure(n={self.n})"


def make_structure(
    sig: Signature,
    n: int,
    func_tables: Mapping[str, Sequence[int]] | None = None,
    rel_tuples: Mapping[str, Iterable[Sequence[int]]] | None = None,
    elem_names: Sequence[str] | None = None,
    name: str | None = None,
) -> FiniteStructure:
    """Build a structure, canonicalizing tables and relation tuple sets."""
    funcs = {
        sym: tuple(table) for sym, table in (func_tables or {}).items()
    }
    rels = {
        sym: tuple(sorted(set(tuple(t) for t in tuples)))
        for sym, tuples in (rel_tuples or {}).items()
    }
    return FiniteStructure(
        sig=sig,
        n=n,
        func_tables=funcs,
        rel_tuples=rels,
        elem_names=tuple(elem_names) if elem_names is not None else None,
        name=name,
    )


@dataclass(frozen=True)
class ElementMap:
    """A raw set map between universes, images[i] is the image of i."""

    source_n: int
    target_n: int
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source_n:
            raise SizeMismatch(
                f"{len(self.images)} images for a {self.source_n}-element source"
            )
        for v in self.images:
            if not (0 <= v < self.target_n):
                raise SizeMismatch(
                    f"image {v} outside a {self.target_n}-element target"
                )

    def __call__(self, x: int) -> int:
        return self.images[x]


# --- structure file format ---------------------------------------------------

def parse_signature(raw: Mapping) -> Signature:
    def entries(items) -> tuple[tuple[str, int], ...]:
        out = []
        for it in items:
            if not isinstance(it, Mapping) or "name" not in it or "arity" not in it:
                raise StructureFormatError("signature entries need name and arity")
            out.append((str(it["name"]), int(it["arity"])))
        return tuple(out)

    if not isinstance(raw, Mapping):
        raise StructureFormatError("signature must be an object")
    return Signature(
        functions=entries(raw.get("functions", ())),
        relations=entries(raw.get("relations", ())),
    )


def _parse_table(sym: str, arity: int, n: int, raw) -> tuple[int, ...]:
    """Flatten a nested row-major table, checking shape and range."""
    def walk(node, depth: int, out: list[int]):
        if depth == 0:
            if not isinstance(node, int) or isinstance(node, bool):
                raise ArityMismatch(sym, f"expected an int at depth {arity}")
            if not (0 <= node < n):
                raise OutOfRangeElement(sym, node)
            out.append(node)
            return
        if not isinstance(node, list) or len(node) != n:
            raise ArityMismatch(sym, f"expected a length-{n} array")
        for child in node:
            walk(child, depth - 1, out)

    out: list[int] = []
    walk(raw, arity, out)
    return tuple(out)


def validate_structure(sig: Signature, raw: Mapping) -> FiniteStructure:
    """Validate a decoded structure file against a signature."""
    if not isinstance(raw, Mapping):
        raise StructureFormatError("structure file must be a JSON object")
    if "universe" not in raw:
        raise StructureFormatError("missing universe")
    universe = raw["universe"]
    elem_names: tuple[str, ...] | None
    if isinstance(universe, int) and not isinstance(universe, bool):
        n = universe
        elem_names = None
    elif isinstance(universe, list):
        n = len(universe)
        names = [str(x) for x in universe]
        for nm in names:
            if names.count(nm) > 1:
                raise DuplicateName(nm)
        elem_names = tuple(names)
    else:
        raise StructureFormatError("universe must be an int or an array of names")
    if n < 1:
        raise StructureFormatError("universe must have at least one element")

    raw_funcs = raw.get("functions", {})
    raw_rels = raw.get("relations", {})
    if not isinstance(raw_funcs, Mapping) or not isinstance(raw_rels, Mapping):
        raise StructureFormatError("functions and relations must be objects")

    func_tables: dict[str, tuple[int, ...]] = {}
    for sym, arity in sig.functions:
        if sym not in raw_funcs:
            raise MissingTable(sym)
        func_tables[sym] = _parse_table(sym, arity, n, raw_funcs[sym])
    for sym in raw_funcs:
        if sig.function_arity(sym) is None:
            raise StructureFormatError(f"table for undeclared function {sym!r}")

    rel_tuples: dict[str, tuple[tuple[int, ...], ...]] = {}
    for sym, arity in sig.relations:
        if sym not in raw_rels:
            raise MissingTable(sym)
        rows = raw_rels[sym]
        if not isinstance(rows, list):
            raise ArityMismatch(sym, "expected an array of tuples")
        tuples = set()
        for row in rows:
            if not isinstance(row, list) or len(row) != arity:
                raise ArityMismatch(sym, f"tuple {row} for arity {arity}")
            for value in row:
                if not isinstance(value, int) or not (0 <= value < n):
                    raise OutOfRangeElement(sym, value)
            tuples.add(tuple(row))
        rel_tuples[sym] = tuple(sorted(tuples))
    for sym in raw_rels:
        if sig.relation_arity(sym) is None:
            raise StructureFormatError(f"tuples for undeclared relation {sym!r}")

    return FiniteStructure(
        sig=sig,
        n=n,
        func_tables=func_tables,
        rel_tuples=rel_tuples,
        elem_names=elem_names,
        name=str(raw["name"]) if "name" in raw else None,
    )


def parse_structure(raw: Mapping) -> FiniteStructure:
    if not isinstance(raw, Mapping) or "signature" not in raw:
        raise StructureFormatError("structure file needs a signature")
    return validate_structure(parse_signature(raw["signature"]), raw)


def load_structure(path: str) -> FiniteStructure:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StructureFormatError(f"{path}: {exc}") from exc
    return parse_structure(raw)


def structure_to_dict(M: FiniteStructure) -> dict:
    """Encode a structure in the interchange format."""
    def nest(table: tuple[int, ...], arity: int):
        if arity == 0:
            return table[0]
        if arity == 1:
            return list(table)
        step = len(table) // M.n
        return [nest(table[i * step:(i + 1) * step], arity - 1) for i in range(M.n)]

    out: dict = {}
    if M.name is not None:
        out["name"] = M.name
    out["signature"] = {
        "functions": [{"name": s, "arity": a} for s, a in M.sig.functions],
        "relations": [{"name": s, "arity": a} for s, a in M.sig.relations],
    }
    out["universe"] = list(M.elem_names) if M.elem_names is not None else M.n
    out["functions"] = {
        sym: nest(M.func_tables[sym], arity) for sym, arity in M.sig.functions
    }
    out["relations"] = {
        sym: [list(t) for t in M.rel_tuples[sym]] for sym, _ in M.sig.relations
    }
    return out


def dump_structure(M: FiniteStructure, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(structure_to_dict(M), fh, indent=2)
        fh.write("\n")


# --- substructures -----------------------------------------------------------

def substructure_closure(M: FiniteStructure, seed: Iterable[int]) -> frozenset[int]:
    """Least function-closed superset of seed; constants always included."""
    current = set(seed)
    for x in current:
        if not (0 <= x < M.n):
            raise OutOfRangeElement("seed", x)
    if not current and not M.sig.constants:
        raise EmptyUnsupported("empty seed and no constants to start from")
    for sym, arity in M.sig.functions:
        if arity == 0:
            current.add(M.apply(sym, ()))
    changed = True
    while changed:
        changed = False
        for sym, arity in M.sig.functions:
            if arity == 0:
                continue
            for args in itertools.product(sorted(current), repeat=arity):
                value = M.apply(sym, args)
                if value not in current:
                    current.add(value)
                    changed = True
    return frozenset(current)


def check_closed(M: FiniteStructure, subset: Iterable[int]) -> None:
    """Raise NotClosed at the first (signature-order, lex-order) escape."""
    inside = set(subset)
    for sym, arity in M.sig.functions:
        if arity == 0:
            if M.apply(sym, ()) not in inside:
                raise NotClosed(sym, ())
            continue
        for args in itertools.product(sorted(inside), repeat=arity):
            if M.apply(sym, args) not in inside:
                raise NotClosed(sym, args)


def induced_substructure(M: FiniteStructure, closed: Iterable[int]) -> FiniteStructure:
    """Substructure on a function-closed set, re-indexed to 0..k-1.

    The embedding is recorded in elem_names: new element i carries the
    display name of the original element it came from.
    """
    elems = sorted(set(closed))
    if not elems:
        raise StructureFormatError("substructure universe must be nonempty")
    check_closed(M, elems)
    pos = {x: i for i, x in enumerate(elems)}
    k = len(elems)

    func_tables: dict[str, tuple[int, ...]] = {}
    for sym, arity in M.sig.functions:
        table = [
            pos[M.apply(sym, args)]
            for args in itertools.product(elems, repeat=arity)
        ]
        func_tables[sym] = tuple(table)
    rel_tuples = {
        sym: tuple(
            sorted(
                tuple(pos[x] for x in t)
                for t in M.rel_tuples[sym]
                if all(x in pos for x in t)
            )
        )
        for sym, _ in M.sig.relations
    }
    return FiniteStructure(
        sig=M.sig,
        n=k,
        func_tables=func_tables,
        rel_tuples=rel_tuples,
        elem_names=tuple(M.element_name(x) for x in elems),
        name=None,
    )


# --- isomorphism search --------------------------------------------------------

def _relation_profile(M: FiniteStructure) -> list[tuple]:
    """Per-element invariant: counts of relation memberships by position."""
    profiles: list[list[int]] = [[] for _ in range(M.n)]
    for sym, arity in M.sig.relations:
        counts = [[0] * arity for _ in range(M.n)]
        for t in M.rel_tuples[sym]:
            for pos, x in enumerate(t):
                counts[x][pos] += 1
        for x in range(M.n):
            profiles[x].extend(counts[x])
    return [tuple(p) for p in profiles]


def is_isomorphic(M: FiniteStructure, N: FiniteStructure) -> "Hom | None":
    """First bijective strong hom in lexicographic backtracking order, or None.

    Prunes candidate images on constants and relation-incidence profiles.
    """
    from .homs import Hom, check_strong_hom

    if M.sig != N.sig:
        raise SignatureMismatch("isomorphism requires a common signature")
    if M.n != N.n:
        return None
    n = M.n
    prof_m = _relation_profile(M)
    prof_n = _relation_profile(N)
    if sorted(prof_m) != sorted(prof_n):
        return None
    forced: dict[int, int] = {}
    for sym, arity in M.sig.functions:
        if arity == 0:
            src, dst = M.apply(sym, ()), N.apply(sym, ())
            if src in forced and forced[src] != dst:
                return None
            forced[src] = dst

    checks = _incremental_checks(M)
    images = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        candidates = (forced[k],) if k in forced else range(n)
        for v in candidates:
            if used[v] or prof_m[k] != prof_n[v]:
                continue
            images[k] = v
            used[v] = True
            if _check_at(M, N, images, checks[k]):
                if extend(k + 1):
                    return True
            used[v] = False
        images[k] = -1
        return False

    if not extend(0):
        return None
    result = check_strong_hom(M, N, tuple(images))
    assert isinstance(result, Hom)
    return result


def _incremental_checks(M: FiniteStructure):
    """For each depth k, the function applications and relation tuples that
    become fully determined once elements 0..k have images."""
    per_depth: list[dict] = [
        {"funcs": [], "rels": []} for _ in range(M.n)
    ]
    for sym, arity in M.sig.functions:
        for args in itertools.product(range(M.n), repeat=arity):
            value = M.apply(sym, args)
            depth = max((*args, value))
            per_depth[depth]["funcs"].append((sym, args, value))
    for sym, arity in M.sig.relations:
        if arity == 0:
            per_depth[0]["rels"].append((sym, ()))
            continue
        for args in itertools.product(range(M.n), repeat=arity):
            per_depth[max(args)]["rels"].append((sym, args))
    return per_depth


def _check_at(M: FiniteStructure, N: FiniteStructure, images, batch) -> bool:
    for sym, args, value in batch["funcs"]:
        if N.apply(sym, tuple(images[a] for a in args)) != images[value]:
            return False
    for sym, args in batch["rels"]:
        if M.holds(sym, args) != N.holds(sym, tuple(images[a] for a in args)):
            return False
    return True
