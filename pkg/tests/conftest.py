import random

import pytest

from fquotlab.congruences import Partition
from fquotlab.fixtures import corpus
from fquotlab.folog.syntax import (
    And,
    Apply,
    Eq,
    Exists,
    Forall,
    Iff,
    Implies,
    Not,
    Or,
    Rel,
    Var,
)
from fquotlab.structures import Signature, make_structure

# one binary function, one unary and one binary relation: the signature for
# the random formula corpus
FORMULA_SIG = Signature(functions=(("f", 2),), relations=(("U", 1), ("B", 2)))


@pytest.fixture(scope="session")
def fixture_corpus():
    return corpus()


def random_signature(rng: random.Random) -> Signature:
    functions = []
    for i in range(rng.randint(0, 2)):
        functions.append((f"f{i}", rng.randint(0, 2)))
    relations = []
    for i in range(rng.randint(0, 2)):
        relations.append((f"r{i}", rng.randint(0, 2)))
    return Signature(tuple(functions), tuple(relations))


def random_structure(rng: random.Random, max_n: int, sig: Signature | None = None):
    n = rng.randint(1, max_n)
    sig = sig if sig is not None else random_signature(rng)
    func_tables = {
        sym: [rng.randrange(n) for _ in range(n ** arity)]
        for sym, arity in sig.functions
    }
    rel_tuples = {}
    for sym, arity in sig.relations:
        tuples = []
        for args in _all_tuples(n, arity):
            if rng.random() < 0.5:
                tuples.append(args)
        rel_tuples[sym] = tuples
    return make_structure(sig, n, func_tables, rel_tuples)


def _all_tuples(n: int, arity: int):
    import itertools

    return list(itertools.product(range(n), repeat=arity))


def random_partition(rng: random.Random, n: int) -> Partition:
    class_of = [0] * n
    maxed = 0
    for i in range(1, n):
        class_of[i] = rng.randint(0, maxed + 1)
        maxed = max(maxed, class_of[i])
    return Partition.from_class_of(class_of)
