import itertools

import pytest

from fquotlab.congruences import (
    Partition,
    con_lattice,
    parse_partition,
)
from fquotlab.errors import KernelNotIncluded, NotACongruence, SourceMismatch
from fquotlab.fixtures import graph4, z1, z6
from fquotlab.homs import Hom, check_strong_hom, compose, enumerate_strong_homs, kernel
from fquotlab.quotients import (
    _audit_representatives,
    factor_hom,
    quotient_structure,
)
from fquotlab.structures import is_isomorphic

THETA2 = parse_partition("0 2 4 | 1 3 5", 6)
THETA3 = parse_partition("0 3 | 1 4 | 2 5", 6)


def test_quotient_z6_by_theta2():
    q = quotient_structure(z6(), THETA2)
    assert q.structure.n == 2
    assert q.structure.elem_names == ("[0 2 4]", "[1 3 5]")
    assert q.proj.surjective
    from fquotlab.fixtures import z2

    assert is_isomorphic(q.structure, z2()) is not None


def test_quotient_by_discrete_is_isomorphic_via_proj(fixture_corpus):
    for M in fixture_corpus.values():
        q = quotient_structure(M, Partition.discrete(M.n))
        assert q.proj.bijective
        assert q.structure == M


def test_quotient_graph4_example():
    q = quotient_structure(graph4(), parse_partition("0 2 | 1 3", 4))
    assert q.structure.n == 2
    assert q.structure.rel_tuples["R"] == ((0, 1),)


def test_quotient_rejects_non_congruence():
    with pytest.raises(NotACongruence):
        quotient_structure(z6(), parse_partition("0 1", 6))


def test_kernel_of_projection_is_theta(fixture_corpus):
    for M in fixture_corpus.values():
        for theta in con_lattice(M).elements:
            q = quotient_structure(M, theta)
            assert kernel(q.proj) == theta


def test_representative_independence(fixture_corpus):
    for M in fixture_corpus.values():
        for theta in con_lattice(M).elements:
            q = quotient_structure(M, theta)
            _audit_representatives(M, theta, q.structure)


# --- factor homs -------------------------------------------------------------

def test_factor_to_point():
    f = quotient_structure(z6(), THETA2).proj
    g = check_strong_hom(z6(), z1(), [0] * 6)
    h = factor_hom(f, g)
    assert h.map.images == (0, 0)
    assert compose(h, f) == g


def test_factor_of_self_is_identity():
    f = quotient_structure(z6(), THETA2).proj
    assert factor_hom(f, f) == Hom.identity(f.target)


def test_factor_kernel_not_included_witness():
    f = quotient_structure(z6(), THETA3).proj
    g = quotient_structure(z6(), THETA2).proj
    with pytest.raises(KernelNotIncluded) as exc:
        factor_hom(f, g)
    x, y = exc.value.witness
    assert THETA3.relates(x, y) and not THETA2.relates(x, y)


def test_factor_source_mismatch():
    f = quotient_structure(z6(), THETA2).proj
    g = quotient_structure(graph4(), Partition.discrete(4)).proj
    with pytest.raises(SourceMismatch):
        factor_hom(f, g)


def _surjective_homs_from(M):
    lat = con_lattice(M)
    out = []
    for theta in lat.elements:
        q = quotient_structure(M, theta)
        out.extend(enumerate_strong_homs(M, q.structure, "surjective"))
    return out


def test_factor_exists_iff_kernel_included(fixture_corpus):
    """Both directions of the factorization lemma, on all surjective hom
    pairs out of each fixture."""
    for M in fixture_corpus.values():
        homs = _surjective_homs_from(M)
        for f, g in itertools.product(homs, repeat=2):
            included = kernel(f).refines(kernel(g))
            try:
                h = factor_hom(f, g)
            except KernelNotIncluded:
                assert not included
                continue
            assert included
            assert compose(h, f) == g


def test_factor_tower(fixture_corpus):
    """Composing stepwise factors equals the direct factor along a chain of
    congruences."""
    for M in fixture_corpus.values():
        lat = con_lattice(M)
        for theta, psi, rho in itertools.product(lat.elements, repeat=3):
            if not (theta.refines(psi) and psi.refines(rho)):
                continue
            pt = quotient_structure(M, theta).proj
            pp = quotient_structure(M, psi).proj
            pr = quotient_structure(M, rho).proj
            stepwise = compose(factor_hom(pp, pr), factor_hom(pt, pp))
            assert stepwise == factor_hom(pt, pr)


def test_factor_is_unique():
    f = quotient_structure(z6(), THETA2).proj
    g = quotient_structure(z6(), Partition.total(6)).proj
    h = factor_hom(f, g)
    candidates = [
        other
        for other in enumerate_strong_homs(f.target, g.target)
        if compose(other, f) == g
    ]
    assert candidates == [h]
