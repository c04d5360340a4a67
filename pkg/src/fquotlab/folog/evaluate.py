"""Tarski satisfaction on finite structures."""

from __future__ import annotations

from typing import Mapping

from ..errors import UnboundVariable, UnknownArity
from ..structures import FiniteStructure
from .syntax import (
    And,
    Apply,
    Eq,
    Exists,
    FalseC,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Rel,
    Term,
    TrueC,
    Var,
)


def eval_term(M: FiniteStructure, t: Term, asg: Mapping[str, int]) -> int:
    if isinstance(t, Var):
        if t.name not in asg:
            raise UnboundVariable(t.name)
        return asg[t.name]
    arity = M.sig.function_arity(t.symbol)
    if arity is None or arity != len(t.args):
        raise UnknownArity(t.symbol)
    return M.apply(t.symbol, tuple(eval_term(M, a, asg) for a in t.args))


def evaluate(
    M: FiniteStructure, f: Formula, asg: Mapping[str, int] | None = None
) -> bool:
    """Truth of f in M under the assignment; quantifiers range over the
    universe."""
    env = dict(asg or {})

    def rec(g: Formula, env: dict[str, int]) -> bool:
        match g:
            case TrueC():
                return True
            case FalseC():
                return False
            case Rel(symbol, args):
                arity = M.sig.relation_arity(symbol)
                if arity is None or arity != len(args):
                    raise UnknownArity(symbol)
                return M.holds(symbol, tuple(eval_term(M, a, env) for a in args))
            case Eq(left, right):
                return eval_term(M, left, env) == eval_term(M, right, env)
            case Not(body):
                return not rec(body, env)
            case And(args):
                return all(rec(a, env) for a in args)
            case Or(args):
                return any(rec(a, env) for a in args)
            case Implies(left, right):
                return (not rec(left, env)) or rec(right, env)
            case Iff(left, right):
                return rec(left, env) == rec(right, env)
            case Forall(var, body):
                return all(rec(body, {**env, var: x}) for x in range(M.n))
            case Exists(var, body):
                return any(rec(body, {**env, var: x}) for x in range(M.n))
        raise TypeError(f"not a formula: {g!r}")

    return rec(f, env)
