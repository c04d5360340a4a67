"""First-order syntax, parsing, evaluation, and PCNF normalization."""

from .evaluate import eval_term, evaluate
from .parser import parse_formula, parse_term
from .pcnf import (
    is_literal,
    is_pcnf,
    is_quotient_safe,
    matrix_literals,
    strip_prefix,
    to_pcnf,
)
from .syntax import (
    And,
    Apply,
    Eq,
    Exists,
    FALSE,
    FalseC,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Rel,
    TRUE,
    Term,
    TrueC,
    Var,
    check_arities,
    format_formula,
    format_term,
    free_vars,
    is_closed,
    make_and,
    make_or,
)
from .theories import (
    PreservationReport,
    Theory,
    TheoryReport,
    abelian_group_theory,
    load_theory,
    load_theory_file,
    mi_monoid_theory,
    models_theory,
    preservation_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
