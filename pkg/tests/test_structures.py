import copy
import itertools
import json
import random

import pytest

from fquotlab.errors import (
    ArityMismatch,
    DuplicateName,
    EmptyUnsupported,
    InvalidIdentifier,
    MissingTable,
    NotClosed,
    OutOfRangeElement,
    SignatureMismatch,
)
from fquotlab.fixtures import FLAG_SIG, corpus, flag, graph4, z2, z3, z6
from fquotlab.homs import compose
from fquotlab.structures import (
    Signature,
    dump_structure,
    induced_substructure,
    is_isomorphic,
    load_structure,
    make_structure,
    parse_structure,
    structure_to_dict,
    substructure_closure,
)

from .oracles import minimal_closed_superset


def test_signature_rejects_duplicate_names():
    with pytest.raises(DuplicateName):
        Signature(functions=(("f", 1),), relations=(("f", 2),))


def test_signature_rejects_bad_identifiers():
    with pytest.raises(InvalidIdentifier):
        Signature(functions=(("2bad", 1),))
    with pytest.raises(InvalidIdentifier):
        Signature(relations=(("forall", 1),))


def test_z6_fixture_round_trip(tmp_path):
    M = z6()
    path = tmp_path / "z6.json"
    dump_structure(M, str(path))
    again = load_structure(str(path))
    assert again == M
    assert again.name == "Z6"
    assert again.apply("add", (4, 5)) == 3
    assert again.apply("neg", (2,)) == 4
    assert again.apply("zero", ()) == 0


def test_out_of_range_entry_names_symbol():
    raw = structure_to_dict(z6())
    raw["functions"]["add"][0][0] = 7
    with pytest.raises(OutOfRangeElement) as exc:
        parse_structure(raw)
    assert exc.value.symbol == "add"


def test_missing_table_names_symbol():
    raw = structure_to_dict(z6())
    del raw["functions"]["neg"]
    with pytest.raises(MissingTable) as exc:
        parse_structure(raw)
    assert exc.value.symbol == "neg"


def test_wrong_table_shape():
    raw = structure_to_dict(z6())
    raw["functions"]["neg"] = 3
    with pytest.raises(ArityMismatch):
        parse_structure(raw)


def test_named_universe_round_trip(tmp_path):
    M = make_structure(
        FLAG_SIG, 2, rel_tuples={"R": [(0,)]}, elem_names=("up", "down")
    )
    raw = structure_to_dict(M)
    assert raw["universe"] == ["up", "down"]
    again = parse_structure(json.loads(json.dumps(raw)))
    assert again.elem_names == ("up", "down")
    assert again == M


def test_relation_tuples_deduplicated():
    raw = structure_to_dict(flag())
    raw["relations"]["R"] = [[0], [0]]
    M = parse_structure(raw)
    assert M.rel_tuples["R"] == ((0,),)


# --- substructure closure ---------------------------------------------------

def test_closure_z6_examples():
    M = z6()
    assert substructure_closure(M, {2}) == {0, 2, 4}
    assert substructure_closure(M, set()) == {0}
    assert substructure_closure(flag(), {1}) == {1}


def test_closure_empty_seed_without_constants():
    with pytest.raises(EmptyUnsupported):
        substructure_closure(flag(), set())


@pytest.mark.parametrize("name", ["Z6", "Z2", "Z3", "P3", "FLAG", "MI2", "GRAPH4"])
def test_closure_equals_minimal_closed_superset(name, fixture_corpus):
    M = fixture_corpus[name]
    for size in range(M.n + 1):
        for seed in itertools.combinations(range(M.n), size):
            if not seed and not M.sig.constants:
                continue
            assert substructure_closure(M, set(seed)) == minimal_closed_superset(
                M, set(seed)
            )


def test_closure_idempotent_and_monotone():
    M = z6()
    rng = random.Random(11)
    for _ in range(50):
        seed = {x for x in range(6) if rng.random() < 0.5}
        closed = substructure_closure(M, seed)
        assert substructure_closure(M, closed) == closed
        bigger = seed | {rng.randrange(6)}
        assert closed <= substructure_closure(M, bigger)
        induced_substructure(M, closed)  # passes the NotClosed check


# --- induced substructures -----------------------------------------------------

def test_induced_z6_even_elements_is_z3():
    sub = induced_substructure(z6(), {0, 2, 4})
    assert sub.n == 3
    assert sub.elem_names == ("0", "2", "4")
    assert is_isomorphic(sub, z3()) is not None


def test_induced_full_set_is_identity_reindex():
    M = z6()
    assert induced_substructure(M, range(6)) == M


def test_induced_not_closed_witness():
    with pytest.raises(NotClosed) as exc:
        induced_substructure(z6(), {1, 2})
    assert exc.value.symbol == "add"
    assert exc.value.witness == (1, 2)


# --- isomorphism search -----------------------------------------------------------

def test_identity_witness_found_first():
    w = is_isomorphic(z6(), z6())
    assert w is not None
    assert w.map.images == (0, 1, 2, 3, 4, 5)


def test_flag_variant_requires_swap():
    other = make_structure(FLAG_SIG, 2, rel_tuples={"R": [(1,)]})
    w = is_isomorphic(flag(), other)
    assert w is not None
    assert w.map.images == (1, 0)


def test_signature_mismatch_rejected():
    with pytest.raises(SignatureMismatch):
        is_isomorphic(z6(), flag())


def test_non_isomorphic_structures():
    assert is_isomorphic(z2(), z3()) is None
    empty = make_structure(FLAG_SIG, 2, rel_tuples={"R": []})
    assert is_isomorphic(flag(), empty) is None


def test_isomorphism_is_an_equivalence(fixture_corpus):
    graph_variant = make_structure(
        graph4().sig, 4, rel_tuples={"R": [(1, 0), (3, 2), (1, 2), (3, 0)]},
        name="GRAPH4b",
    )
    structures = [z6(), z2(), graph4(), graph_variant, flag()]
    for M in structures:
        w = is_isomorphic(M, M)
        assert w is not None and w.map.images == tuple(range(M.n))
    for M, N in itertools.permutations(structures, 2):
        if M.sig != N.sig:
            continue
        w = is_isomorphic(M, N)
        if w is None:
            assert is_isomorphic(N, M) is None
            continue
        back = w.inverse()
        assert back.source == N and back.target == M
        for P in structures:
            if P.sig != M.sig:
                continue
            v = is_isomorphic(N, P)
            if v is not None:
                assert compose(v, w).bijective


def test_quotient_of_z6_by_mod2_isomorphic_to_z2():
    from fquotlab.congruences import parse_partition
    from fquotlab.quotients import quotient_structure

    theta = parse_partition("0 2 4 | 1 3 5", 6)
    q = quotient_structure(z6(), theta)
    assert is_isomorphic(q.structure, z2()) is not None
