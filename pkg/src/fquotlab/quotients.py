"""Quotient structures, quotient maps, and factor homomorphisms.

Block indexing follows the partition's canonical labeling, so quotients are
reproducible bit for bit. The representative-independence audit runs only
under __debug__: the congruence conditions already guarantee
well-definedness, the audit guards the implementation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .congruences import Partition, check_congruence, format_partition
from .errors import KernelNotIncluded, NotACongruence, SourceMismatch
from .homs import Hom, kernel_inclusion_witness
from .structures import ElementMap, FiniteStructure


@dataclass(frozen=True)
class QuotientResult:
    structure: FiniteStructure
    proj: Hom


def quotient_structure(M: FiniteStructure, theta: Partition) -> QuotientResult:
    """M/theta with its projection map.

    Function tables go through block representatives; a relation holds on
    blocks iff it holds on some (equivalently, by the congruence condition,
    every) representative tuple.
    """
    violation = check_congruence(M, theta)
    if violation is not None:
        raise NotACongruence(violation)
    blocks = theta.blocks()
    reps = [b[0] for b in blocks]
    cls = theta.class_of
    k = len(blocks)

    func_tables = {
        sym: tuple(
            cls[M.apply(sym, tuple(reps[b] for b in args))]
            for args in itertools.product(range(k), repeat=arity)
        )
        for sym, arity in M.sig.functions
    }
    rel_tuples = {
        sym: tuple(sorted({tuple(cls[x] for x in t) for t in M.rel_tuples[sym]}))
        for sym, _ in M.sig.relations
    }
    structure = FiniteStructure(
        sig=M.sig,
        n=k,
        func_tables=func_tables,
        rel_tuples=rel_tuples,
        elem_names=tuple("[" + " ".join(str(x) for x in b) + "]" for b in blocks),
        name=f"{M.name}/({format_partition(theta)})" if M.name else None,
    )
    if __debug__:
        _audit_representatives(M, theta, structure)
    proj = Hom(M, structure, ElementMap(M.n, k, tuple(cls)))
    assert proj.surjective
    return QuotientResult(structure, proj)


def _audit_representatives(
    M: FiniteStructure, theta: Partition, quotient: FiniteStructure
) -> None:
    """Rebuild tables with every representative choice; all must agree.

    Exponential in block count, so only run in debug builds.
    """
    blocks = theta.blocks()
    cls = theta.class_of
    for choice in itertools.product(*blocks):
        for sym, arity in M.sig.functions:
            for args in itertools.product(range(len(blocks)), repeat=arity):
                value = cls[M.apply(sym, tuple(choice[b] for b in args))]
                if value != quotient.apply(sym, args):
                    raise AssertionError(
                        f"representative choice {choice} changes {sym} at {args}"
                    )
        for sym, arity in M.sig.relations:
            rel = quotient.rel_set(sym)
            for args in itertools.product(range(len(blocks)), repeat=arity):
                holds = M.holds(sym, tuple(choice[b] for b in args))
                if holds != (args in rel):
                    raise AssertionError(
                        f"representative choice {choice} changes {sym} at {args}"
                    )


def factor_hom(f: Hom, g: Hom) -> Hom:
    """The unique h with h . f = g, for surjective f, g with ker f <= ker g."""
    if f.source != g.source:
        raise SourceMismatch("factoring homs must share a source")
    if not f.surjective or not g.surjective:
        raise SourceMismatch("factoring requires surjective homs")
    witness = kernel_inclusion_witness(f, g)
    if witness is not None:
        raise KernelNotIncluded(witness)
    images = [-1] * f.target.n
    for x in range(f.source.n):
        images[f(x)] = g(x)
    return Hom(
        f.target, g.target,
        ElementMap(f.target.n, g.target.n, tuple(images)),
    )
