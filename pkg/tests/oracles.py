"""Independent brute-force oracles.

These deliberately avoid the library's algorithms: partitions are
enumerated by recursive insertion rather than growth strings, congruence
checking uses the componentwise definition, joins use relation-composition
chains, evaluation never short-circuits.
"""

from __future__ import annotations

import itertools

from fquotlab.congruences import Partition
from fquotlab.folog.syntax import (
    And,
    Apply,
    Eq,
    Exists,
    FalseC,
    Forall,
    Iff,
    Implies,
    Not,
    Or,
    Rel,
    TrueC,
    Var,
)
from fquotlab.structures import FiniteStructure


def all_partitions(n: int) -> list[Partition]:
    """Every partition of 0..n-1, built by inserting one element at a time."""
    families: list[list[list[int]]] = [[]]
    for x in range(n):
        grown: list[list[list[int]]] = []
        for blocks in families:
            for i in range(len(blocks)):
                grown.append(
                    [b + [x] if i == j else list(b) for j, b in enumerate(blocks)]
                )
            grown.append([list(b) for b in blocks] + [[x]])
        families = grown
    return [Partition.from_blocks(n, blocks) for blocks in families]


def naive_is_congruence(M: FiniteStructure, theta: Partition) -> bool:
    """The componentwise definition: every pair of componentwise-related
    tuples must agree."""
    def related(xs, ys):
        return all(theta.relates(x, y) for x, y in zip(xs, ys))

    for sym, arity in M.sig.functions:
        for xs in itertools.product(range(M.n), repeat=arity):
            for ys in itertools.product(range(M.n), repeat=arity):
                if related(xs, ys) and not theta.relates(
                    M.apply(sym, xs), M.apply(sym, ys)
                ):
                    return False
    for sym, arity in M.sig.relations:
        for xs in itertools.product(range(M.n), repeat=arity):
            for ys in itertools.product(range(M.n), repeat=arity):
                if related(xs, ys) and M.holds(sym, xs) != M.holds(sym, ys):
                    return False
    return True


def congruences_by_filter(M: FiniteStructure) -> set[Partition]:
    """Filter all equivalence relations through the naive definition."""
    return {p for p in all_partitions(M.n) if naive_is_congruence(M, p)}


def relation_matrix(p: Partition) -> list[list[bool]]:
    return [[p.relates(x, y) for y in range(p.n)] for x in range(p.n)]


def compose_relations(a: list[list[bool]], b: list[list[bool]]) -> list[list[bool]]:
    n = len(a)
    return [
        [any(a[x][z] and b[z][y] for z in range(n)) for y in range(n)]
        for x in range(n)
    ]


def join_by_chains(parts: list[Partition], chain_length: int) -> Partition:
    """Union of all composition chains of the inputs up to the given length.

    Reflexivity makes shorter chains redundant, so iterating composition
    with the union suffices.
    """
    n = parts[0].n
    union = [
        [any(p.relates(x, y) for p in parts) for y in range(n)] for x in range(n)
    ]
    result = union
    for _ in range(chain_length - 1):
        result = compose_relations(result, union)
    class_of = [-1] * n
    fresh = 0
    for x in range(n):
        if class_of[x] == -1:
            for y in range(x, n):
                if result[x][y]:
                    class_of[y] = fresh
            fresh += 1
    return Partition.from_class_of(class_of)


def minimal_closed_superset(M: FiniteStructure, seed: set[int]) -> set[int]:
    """Minimum of all function-closed supersets, by scanning all 2^n subsets.

    The intersection of closed supersets is closed, so it is the minimum.
    """
    def closed(subset: frozenset[int]) -> bool:
        for sym, arity in M.sig.functions:
            for args in itertools.product(sorted(subset), repeat=arity):
                if M.apply(sym, args) not in subset:
                    return False
        return True

    closed_supersets = [
        frozenset(candidate)
        for size in range(M.n + 1)
        for candidate in itertools.combinations(range(M.n), size)
        if seed <= set(candidate) and closed(frozenset(candidate))
    ]
    minimum = frozenset(range(M.n))
    for c in closed_supersets:
        minimum &= c
    assert closed(minimum) and seed <= minimum
    return set(minimum)


def naive_eval(M: FiniteStructure, formula, asg: dict[str, int]) -> bool:
    """Tarski satisfaction without short-circuiting, with explicit
    assignment tables."""
    def term(t, table):
        if isinstance(t, Var):
            return table[t.name]
        return M.apply(t.symbol, tuple(term(a, table) for a in t.args))

    def rec(f, table):
        if isinstance(f, TrueC):
            return True
        if isinstance(f, FalseC):
            return False
        if isinstance(f, Rel):
            return tuple(term(t, table) for t in f.args) in set(
                M.rel_tuples[f.symbol]
            )
        if isinstance(f, Eq):
            return term(f.left, table) == term(f.right, table)
        if isinstance(f, Not):
            return not rec(f.body, table)
        if isinstance(f, And):
            values = [rec(a, table) for a in f.args]
            return all(values)
        if isinstance(f, Or):
            values = [rec(a, table) for a in f.args]
            return any(values)
        if isinstance(f, Implies):
            left, right = rec(f.left, table), rec(f.right, table)
            return (not left) or right
        if isinstance(f, Iff):
            return rec(f.left, table) == rec(f.right, table)
        if isinstance(f, Forall):
            values = [rec(f.body, {**table, f.var: x}) for x in range(M.n)]
            return all(values)
        if isinstance(f, Exists):
            values = [rec(f.body, {**table, f.var: x}) for x in range(M.n)]
            return any(values)
        raise TypeError(f"unexpected node {f!r}")

    return rec(formula, dict(asg))
