import itertools
import random

import pytest

from fquotlab.congruences import (
    CongruenceRelationViolation,
    NoCongruence,
    Partition,
    check_congruence,
    con_lattice,
    is_congruence,
    lattice_to_dot,
    parse_partition,
    principal_congruence,
    principal_filter,
)
from fquotlab.errors import NotInLattice, UniverseTooLarge
from fquotlab.fixtures import flag, graph4, p3, z6

from .conftest import random_structure
from .oracles import congruences_by_filter, naive_is_congruence

THETA2 = parse_partition("0 2 4 | 1 3 5", 6)
THETA3 = parse_partition("0 3 | 1 4 | 2 5", 6)


def test_is_congruence_examples():
    assert is_congruence(z6(), THETA2)
    violation = check_congruence(flag(), Partition.total(2))
    assert isinstance(violation, CongruenceRelationViolation)
    assert violation.symbol == "R"
    assert is_congruence(graph4(), parse_partition("0 2", 4))


def test_single_coordinate_check_matches_componentwise_definition():
    from .oracles import all_partitions

    rng = random.Random(42)
    for _ in range(60):
        M = random_structure(rng, 4)
        for theta in all_partitions(M.n):
            assert is_congruence(M, theta) == naive_is_congruence(M, theta)


def test_principal_congruence_examples():
    assert principal_congruence(z6(), [(0, 2)]) == THETA2
    result = principal_congruence(flag(), [(0, 1)])
    assert isinstance(result, NoCongruence)
    assert result.symbol == "R"
    assert principal_congruence(p3(), [(1, 2)]) == Partition.from_blocks(
        3, [[1, 2]]
    )


def test_principal_congruence_soundness_and_minimality(fixture_corpus):
    for M in fixture_corpus.values():
        lat = con_lattice(M)
        for a in range(M.n):
            for b in range(a + 1, M.n):
                result = principal_congruence(M, [(a, b)])
                containing = [
                    p for p in lat.elements if p.relates(a, b)
                ]
                if isinstance(result, NoCongruence):
                    assert not containing
                    continue
                assert is_congruence(M, result)
                assert result.relates(a, b)
                for p in containing:
                    assert result.refines(p)
                assert result in containing


def test_con_lattice_matches_eq_filter_oracle_on_fixtures(fixture_corpus):
    for M in fixture_corpus.values():
        assert set(con_lattice(M).elements) == congruences_by_filter(M)


def test_con_lattice_pinned_counts(fixture_corpus):
    assert len(con_lattice(fixture_corpus["Z6"])) == 4
    assert len(con_lattice(fixture_corpus["FLAG"])) == 1
    assert len(con_lattice(fixture_corpus["GRAPH4"])) == 4
    assert len(con_lattice(fixture_corpus["P3"])) == 5


def test_con_lattice_z6_elements():
    lat = con_lattice(z6())
    assert set(lat.elements) == {
        Partition.discrete(6), THETA2, THETA3, Partition.total(6)
    }


def test_con_lattice_graph4_elements():
    lat = con_lattice(graph4())
    assert set(lat.elements) == {
        Partition.discrete(4),
        parse_partition("0 2", 4),
        parse_partition("1 3", 4),
        parse_partition("0 2 | 1 3", 4),
    }


def test_universe_bound_enforced():
    with pytest.raises(UniverseTooLarge):
        con_lattice(z6(), max_universe=4)


def test_top_is_computed_not_presumed():
    lat = con_lattice(flag())
    assert lat.elements[lat.top()] == Partition.discrete(2)
    lat6 = con_lattice(z6())
    assert lat6.elements[lat6.top()] == Partition.total(6)
    assert lat6.elements[lat6.bottom()] == Partition.discrete(6)


def test_meet_and_join_tables_realize_bounds(fixture_corpus):
    for M in fixture_corpus.values():
        lat = con_lattice(M)
        k = len(lat)
        for i, j in itertools.product(range(k), repeat=2):
            meet = lat.meet_table[i][j]
            join = lat.join_table[i][j]
            assert lat.leq[meet][i] and lat.leq[meet][j]
            assert lat.leq[i][join] and lat.leq[j][join]
            for m in range(k):
                if lat.leq[m][i] and lat.leq[m][j]:
                    assert lat.leq[m][meet]
                if lat.leq[i][m] and lat.leq[j][m]:
                    assert lat.leq[join][m]


def test_principal_filter_examples():
    lat = con_lattice(z6())
    filt = principal_filter(lat, THETA2)
    assert set(filt.elements) == {THETA2, Partition.total(6)}
    assert len(principal_filter(lat, Partition.discrete(6))) == len(lat)
    assert len(principal_filter(lat, Partition.total(6))) == 1
    with pytest.raises(NotInLattice):
        principal_filter(lat, parse_partition("0 1", 6))


def test_lattice_dot_export():
    dot = lattice_to_dot(con_lattice(z6()))
    assert dot.startswith("digraph")
    assert '"0 2 4 | 1 3 5"' in dot
    # covering edges only: bottom never points straight at the top
    assert dot.count("->") == 4
