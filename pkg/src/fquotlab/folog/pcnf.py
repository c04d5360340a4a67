"""Prenex conjunctive normal form.

The pipeline is equivalence-preserving (no Skolemization): fold truth
constants, eliminate <-> and ->, push negations to literals, rename bound
variables apart with fresh names _v0, _v1, ... assigned left to right, pull
quantifiers to the front preserving their relative order, then distribute
disjunction over conjunction. No prefix minimization is attempted.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from ..errors import NotPCNF
from .syntax import (
    And,
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
    Apply,
    make_and,
    make_or,
)

FRESH_PREFIX = "_v"


def _smart_not(f: Formula) -> Formula:
    if isinstance(f, TrueC):
        return FALSE
    if isinstance(f, FalseC):
        return TRUE
    if isinstance(f, Not):
        return f.body
    return Not(f)


def fold_constants(f: Formula) -> Formula:
    """Normalize true/false away algebraically."""
    match f:
        case TrueC() | FalseC() | Rel() | Eq():
            return f
        case Not(body):
            return _smart_not(fold_constants(body))
        case And(args):
            parts = []
            for a in map(fold_constants, args):
                if isinstance(a, FalseC):
                    return FALSE
                if not isinstance(a, TrueC):
                    parts.append(a)
            return make_and(parts)
        case Or(args):
            parts = []
            for a in map(fold_constants, args):
                if isinstance(a, TrueC):
                    return TRUE
                if not isinstance(a, FalseC):
                    parts.append(a)
            return make_or(parts)
        case Implies(left, right):
            left, right = fold_constants(left), fold_constants(right)
            if isinstance(left, FalseC) or isinstance(right, TrueC):
                return TRUE
            if isinstance(left, TrueC):
                return right
            if isinstance(right, FalseC):
                return _smart_not(left)
            return Implies(left, right)
        case Iff(left, right):
            left, right = fold_constants(left), fold_constants(right)
            if isinstance(left, TrueC):
                return right
            if isinstance(right, TrueC):
                return left
            if isinstance(left, FalseC):
                return _smart_not(right)
            if isinstance(right, FalseC):
                return _smart_not(left)
            return Iff(left, right)
        case Forall(var, body) | Exists(var, body):
            body = fold_constants(body)
            # the universe is nonempty, so quantifying a constant is a no-op
            if isinstance(body, (TrueC, FalseC)):
                return body
            return type(f)(var, body)
    raise TypeError(f"not a formula: {f!r}")


def eliminate_implications(f: Formula) -> Formula:
    match f:
        case Rel() | Eq() | TrueC() | FalseC():
            return f
        case Not(body):
            return Not(eliminate_implications(body))
        case And(args):
            return And(tuple(map(eliminate_implications, args)))
        case Or(args):
            return Or(tuple(map(eliminate_implications, args)))
        case Implies(left, right):
            left = eliminate_implications(left)
            right = eliminate_implications(right)
            return Or((Not(left), right))
        case Iff(left, right):
            left = eliminate_implications(left)
            right = eliminate_implications(right)
            return And((Or((Not(left), right)), Or((Not(right), left))))
        case Forall(var, body):
            return Forall(var, eliminate_implications(body))
        case Exists(var, body):
            return Exists(var, eliminate_implications(body))
    raise TypeError(f"not a formula: {f!r}")


def to_nnf(f: Formula, positive: bool = True) -> Formula:
    """Push negations down to literals; requires -> and <-> eliminated."""
    match f:
        case Rel() | Eq():
            return f if positive else Not(f)
        case TrueC():
            return TRUE if positive else FALSE
        case FalseC():
            return FALSE if positive else TRUE
        case Not(body):
            return to_nnf(body, not positive)
        case And(args):
            parts = tuple(to_nnf(a, positive) for a in args)
            return And(parts) if positive else Or(parts)
        case Or(args):
            parts = tuple(to_nnf(a, positive) for a in args)
            return Or(parts) if positive else And(parts)
        case Forall(var, body):
            body = to_nnf(body, positive)
            return Forall(var, body) if positive else Exists(var, body)
        case Exists(var, body):
            body = to_nnf(body, positive)
            return Exists(var, body) if positive else Forall(var, body)
    raise TypeError(f"unexpected connective in NNF input: {f!r}")


def _rename_term(t: Term, env: dict[str, str]) -> Term:
    if isinstance(t, Var):
        return Var(env.get(t.name, t.name))
    return Apply(t.symbol, tuple(_rename_term(a, env) for a in t.args))


def rename_apart(f: Formula) -> Formula:
    """Give every quantifier a fresh _vK name, numbered left to right."""
    counter = itertools.count()

    def rec(g: Formula, env: dict[str, str]) -> Formula:
        match g:
            case Rel(symbol, args):
                return Rel(symbol, tuple(_rename_term(t, env) for t in args))
            case Eq(left, right):
                return Eq(_rename_term(left, env), _rename_term(right, env))
            case Not(body):
                return Not(rec(body, env))
            case And(args):
                return And(tuple(rec(a, env) for a in args))
            case Or(args):
                return Or(tuple(rec(a, env) for a in args))
            case Forall(var, body) | Exists(var, body):
                fresh = f"{FRESH_PREFIX}{next(counter)}"
                body = rec(body, {**env, var: fresh})
                return type(g)(fresh, body)
            case TrueC() | FalseC():
                return g
        raise TypeError(f"unexpected connective after NNF: {g!r}")

    return rec(f, {})


def extract_prefix(f: Formula) -> tuple[list[tuple[type, str]], Formula]:
    """Pull quantifiers out, preserving the left-to-right order of
    occurrence; sound because bound names are pairwise distinct."""
    match f:
        case Forall(var, body) | Exists(var, body):
            prefix, matrix = extract_prefix(body)
            return [(type(f), var)] + prefix, matrix
        case And(args) | Or(args):
            prefix = []
            matrices = []
            for a in args:
                p, m = extract_prefix(a)
                prefix.extend(p)
                matrices.append(m)
            rebuilt = make_and(matrices) if isinstance(f, And) else make_or(matrices)
            return prefix, rebuilt
        case _:
            return [], f


def _cnf_clauses(f: Formula) -> list[list[Formula]]:
    match f:
        case And(args):
            out = []
            for a in args:
                out.extend(_cnf_clauses(a))
            return out
        case Or(args):
            branch_clauses = [_cnf_clauses(a) for a in args]
            out = []
            for combo in itertools.product(*branch_clauses):
                out.append([lit for clause in combo for lit in clause])
            return out
        case _:
            return [[f]]


def distribute(matrix: Formula) -> Formula:
    return make_and([make_or(clause) for clause in _cnf_clauses(matrix)])


def to_pcnf(f: Formula) -> Formula:
    folded = fold_constants(f)
    if isinstance(folded, (TrueC, FalseC)):
        return folded
    nnf = to_nnf(eliminate_implications(folded))
    prefix, matrix = extract_prefix(rename_apart(nnf))
    result = distribute(matrix)
    for quant, var in reversed(prefix):
        result = quant(var, result)
    return result


# --- the structural predicate ----------------------------------------------------

def is_literal(f: Formula) -> bool:
    if isinstance(f, (Rel, Eq)):
        return True
    return isinstance(f, Not) and isinstance(f.body, (Rel, Eq))


def _is_clause(f: Formula) -> bool:
    if isinstance(f, Or):
        return all(is_literal(a) for a in f.args)
    return is_literal(f)


def strip_prefix(f: Formula) -> tuple[list[tuple[type, str]], Formula]:
    prefix = []
    while isinstance(f, (Forall, Exists)):
        prefix.append((type(f), f.var))
        f = f.body
    return prefix, f


def is_pcnf(f: Formula) -> bool:
    """Quantifier prefix over a conjunction of disjunctions of literals;
    a bare truth constant counts as the degenerate matrix."""
    _, matrix = strip_prefix(f)
    if isinstance(matrix, (TrueC, FalseC)):
        return not isinstance(f, (Forall, Exists))
    if isinstance(matrix, And):
        return all(_is_clause(a) for a in matrix.args)
    return _is_clause(matrix)


def matrix_literals(f: Formula) -> Iterator[Formula]:
    _, matrix = strip_prefix(f)
    clauses = matrix.args if isinstance(matrix, And) else (matrix,)
    for clause in clauses:
        if isinstance(clause, Or):
            yield from clause.args
        else:
            yield clause


def is_quotient_safe(f: Formula) -> bool:
    """True iff no literal of the PCNF matrix is a negated equality."""
    if not is_pcnf(f):
        raise NotPCNF("apply to_pcnf first")
    if isinstance(f, (TrueC, FalseC)):
        return True
    return not any(
        isinstance(lit, Not) and isinstance(lit.body, Eq)
        for lit in matrix_literals(f)
    )
