"""The in-repo corpus of small structures used throughout tests and docs."""

from __future__ import annotations

from .structures import FiniteStructure, Signature, make_structure

GROUP_SIG = Signature(functions=(("add", 2), ("neg", 1), ("zero", 0)))
POINT_SIG = Signature(functions=(("c", 0),))
FLAG_SIG = Signature(relations=(("R", 1),))
MI_SIG = Signature(functions=(("op", 2),), relations=(("E", 1),))
GRAPH_SIG = Signature(relations=(("R", 2),))


def cyclic_group(n: int, name: str | None = None) -> FiniteStructure:
    return make_structure(
        GROUP_SIG,
        n,
        func_tables={
            "add": [(x + y) % n for x in range(n) for y in range(n)],
            "neg": [(-x) % n for x in range(n)],
            "zero": [0],
        },
        name=name,
    )


def z6() -> FiniteStructure:
    return cyclic_group(6, "Z6")


def z3() -> FiniteStructure:
    return cyclic_group(3, "Z3")


def z2() -> FiniteStructure:
    return cyclic_group(2, "Z2")


def z1() -> FiniteStructure:
    return cyclic_group(1, "Z1")


def p3() -> FiniteStructure:
    return make_structure(POINT_SIG, 3, func_tables={"c": [0]}, name="P3")


def pointed_set(n: int, name: str | None = None) -> FiniteStructure:
    return make_structure(POINT_SIG, n, func_tables={"c": [0]}, name=name)


def flag() -> FiniteStructure:
    return make_structure(FLAG_SIG, 2, rel_tuples={"R": [(0,)]}, name="FLAG")


def mi2() -> FiniteStructure:
    return make_structure(
        MI_SIG,
        2,
        func_tables={"op": [0, 1, 1, 0]},
        rel_tuples={"E": [(0,)]},
        name="MI2",
    )


def graph4() -> FiniteStructure:
    return make_structure(
        GRAPH_SIG,
        4,
        rel_tuples={"R": [(0, 1), (2, 3), (0, 3), (2, 1)]},
        name="GRAPH4",
    )


def corpus() -> dict[str, FiniteStructure]:
    """The seven shipped fixtures, keyed by name."""
    out = [z6(), z2(), z3(), p3(), flag(), mi2(), graph4()]
    return {m.name: m for m in out}
