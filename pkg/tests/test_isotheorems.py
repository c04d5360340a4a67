import itertools

import pytest

from fquotlab.congruences import (
    Partition,
    con_lattice,
    parse_partition,
    principal_filter,
)
from fquotlab.errors import NotACongruence, NotClosed
from fquotlab.fixtures import graph4, z2, z6
from fquotlab.homs import Hom, check_strong_hom
from fquotlab.isotheorems import (
    check_ker_frac,
    correspondence,
    first_iso,
    run_theorem_sweep,
    second_iso,
    third_iso,
)
from fquotlab.quotients import quotient_structure

THETA2 = parse_partition("0 2 4 | 1 3 5", 6)
THETA3 = parse_partition("0 3 | 1 4 | 2 5", 6)


def test_first_iso_mod2():
    h = check_strong_hom(z6(), z2(), [0, 1, 0, 1, 0, 1])
    w = first_iso(h)
    assert w.iso.source.n == 2 and w.iso.target.n == 2


def test_first_iso_identity():
    w = first_iso(Hom.identity(z6()))
    assert w.iso.source.n == 6


def test_first_iso_non_surjective_embedding():
    h = check_strong_hom(z2(), z6(), [0, 3])
    w = first_iso(h)
    assert w.iso.source.n == 2
    assert w.iso.target.elem_names == ("0", "3")


def test_second_iso_saturation_covers_universe():
    w = second_iso(z6(), {0, 2, 4}, THETA3)
    assert w.iso.source.n == 3
    assert w.iso.target.n == 3


def test_second_iso_trivial_substructure():
    w = second_iso(z6(), {0}, THETA2)
    assert w.iso.source.n == 1 and w.iso.target.n == 1


def test_second_iso_two_block_case():
    w = second_iso(z6(), {0, 3}, THETA2)
    assert w.iso.source.n == 2 and w.iso.target.n == 2


def test_second_iso_preconditions():
    with pytest.raises(NotClosed):
        second_iso(z6(), {1, 2}, THETA2)
    with pytest.raises(NotACongruence):
        second_iso(z6(), {0, 2, 4}, parse_partition("0 1", 6))


def test_third_iso_examples():
    w = third_iso(z6(), THETA2, Partition.total(6))
    assert w.iso.source.n == 1
    w2 = third_iso(z6(), Partition.discrete(6), THETA3)
    assert w2.iso.source.n == 3
    w3 = third_iso(
        graph4(), parse_partition("0 2", 4), parse_partition("0 2 | 1 3", 4)
    )
    assert w3.iso.source.n == 2


def test_correspondence_z6():
    w = correspondence(z6(), THETA2)
    assert len(w.pairing) == 2


def test_correspondence_at_discrete_is_whole_lattice(fixture_corpus):
    for M in fixture_corpus.values():
        lat = con_lattice(M)
        w = correspondence(M, Partition.discrete(M.n))
        assert len(w.pairing) == len(lat)


def test_correspondence_cardinality(fixture_corpus):
    for M in fixture_corpus.values():
        lat = con_lattice(M)
        for theta in lat.elements:
            filt = principal_filter(lat, theta)
            quot = quotient_structure(M, theta).structure
            assert len(filt) == len(con_lattice(quot))


def test_check_ker_frac_examples():
    f = quotient_structure(z6(), THETA2).proj
    g = quotient_structure(z6(), Partition.total(6)).proj
    report = check_ker_frac(z6(), f, g)
    assert report.ok
    assert report.factor_kernel == Partition.total(2)

    same = check_ker_frac(z6(), f, f)
    assert same.factor_kernel == Partition.discrete(2)

    d = quotient_structure(z6(), Partition.discrete(6)).proj
    t3 = quotient_structure(z6(), THETA3).proj
    mixed = check_ker_frac(z6(), d, t3)
    assert mixed.ok
    assert mixed.factor_kernel.num_blocks == 3


def test_sweep_zero_defects_everywhere(fixture_corpus):
    for M in fixture_corpus.values():
        report = run_theorem_sweep(M)
        assert report.total_defects == 0
        for row in report.rows:
            assert row.instances > 0
