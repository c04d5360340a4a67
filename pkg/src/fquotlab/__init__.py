"""Congruences, quotients, and homomorphism lattices of finite first-order
structures, with a machine-checked treatment of the isomorphism theorems."""

from .structures import (
    ElementMap,
    FiniteStructure,
    Signature,
    dump_structure,
    induced_substructure,
    is_isomorphic,
    load_structure,
    make_structure,
    parse_signature,
    parse_structure,
    structure_to_dict,
    substructure_closure,
    validate_structure,
)
from .congruences import (
    ConLattice,
    NoCongruence,
    Partition,
    check_congruence,
    con_lattice,
    eq_join,
    eq_meet,
    format_partition,
    is_congruence,
    iter_partitions,
    lattice_to_dot,
    parse_partition,
    principal_congruence,
    principal_filter,
    quotient_of_congruence,
    restrict_congruence,
    saturation,
)
from .homs import (
    Hom,
    check_strong_hom,
    compose,
    corestrict,
    enumerate_strong_homs,
    image,
    kernel,
)
from .quotients import QuotientResult, factor_hom, quotient_structure
from .isotheorems import (
    IsoWitness,
    LatticeIsoWitness,
    check_ker_frac,
    correspondence,
    first_iso,
    run_theorem_sweep,
    second_iso,
    third_iso,
)
from .fquot import (
    FQuotientPoset,
    bounded_free_check,
    equiv_implies_iso,
    leq_by_factorization,
    quo_poset,
    verify_cat_correspondence,
    verify_cat_third_iso,
    verify_quo_con_iso,
)

__all__ = [name for name in dir() if not name.startswith("_")]
