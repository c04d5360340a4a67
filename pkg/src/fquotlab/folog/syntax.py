"""First-order terms and formulas as immutable trees, plus the printer.

And/Or are n-ary (at least two operands); helpers collapse degenerate
cases. The printer emits the concrete grammar with minimal parentheses and
round-trips through the parser.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from ..errors import UnknownArity
from ..structures import Signature


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Apply:
    symbol: str
    args: tuple["Term", ...] = ()


Term = Union[Var, Apply]


@dataclass(frozen=True)
class Rel:
    symbol: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    args: tuple["Formula", ...]

    def __post_init__(self):
        assert len(self.args) >= 2


@dataclass(frozen=True)
class Or:
    args: tuple["Formula", ...]

    def __post_init__(self):
        assert len(self.args) >= 2


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class TrueC:
    pass


@dataclass(frozen=True)
class FalseC:
    pass


Formula = Union[
    Rel, Eq, Not, And, Or, Implies, Iff, Forall, Exists, TrueC, FalseC
]

TRUE = TrueC()
FALSE = FalseC()


def make_and(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    if not parts:
        return TRUE
    if len(parts) == 1:
        return parts[0]
    return And(parts)


def make_or(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    if not parts:
        return FALSE
    if len(parts) == 1:
        return parts[0]
    return Or(parts)


def term_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    out: frozenset[str] = frozenset()
    for a in t.args:
        out |= term_vars(a)
    return out


def free_vars(f: Formula) -> frozenset[str]:
    match f:
        case Rel(_, args):
            out: frozenset[str] = frozenset()
            for t in args:
                out |= term_vars(t)
            return out
        case Eq(left, right):
            return term_vars(left) | term_vars(right)
        case Not(body):
            return free_vars(body)
        case And(args) | Or(args):
            out = frozenset()
            for g in args:
                out |= free_vars(g)
            return out
        case Implies(left, right) | Iff(left, right):
            return free_vars(left) | free_vars(right)
        case Forall(var, body) | Exists(var, body):
            return free_vars(body) - {var}
        case TrueC() | FalseC():
            return frozenset()
    raise TypeError(f"not a formula: {f!r}")


def is_closed(f: Formula) -> bool:
    return not free_vars(f)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    match f:
        case Not(body) | Forall(_, body) | Exists(_, body):
            yield from subformulas(body)
        case And(args) | Or(args):
            for g in args:
                yield from subformulas(g)
        case Implies(left, right) | Iff(left, right):
            yield from subformulas(left)
            yield from subformulas(right)


def check_arities(sig: Signature, f: Formula) -> None:
    """Verify every symbol in f is declared in sig with the right arity."""
    def check_term(t: Term):
        if isinstance(t, Var):
            return
        arity = sig.function_arity(t.symbol)
        if arity is None:
            raise UnknownArity(t.symbol, "not a declared function symbol")
        if arity != len(t.args):
            raise UnknownArity(t.symbol, f"expects {arity} arguments")
        for a in t.args:
            check_term(a)

    for g in subformulas(f):
        match g:
            case Rel(symbol, args):
                arity = sig.relation_arity(symbol)
                if arity is None:
                    raise UnknownArity(symbol, "not a declared relation symbol")
                if arity != len(args):
                    raise UnknownArity(symbol, f"expects {arity} arguments")
                for t in args:
                    check_term(t)
            case Eq(left, right):
                check_term(left)
                check_term(right)


# --- printing ------------------------------------------------------------------

_PREC_IFF, _PREC_IMP, _PREC_OR, _PREC_AND, _PREC_NOT, _PREC_ATOM = 1, 2, 3, 4, 5, 6


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return t.symbol
    return f"{t.symbol}({', '.join(format_term(a) for a in t.args)})"


def format_formula(f: Formula) -> str:
    return _render(f, 0)


def _render(f: Formula, ctx: int) -> str:
    def wrap(text: str, prec: int) -> str:
        return f"({text})" if prec < ctx else text

    match f:
        case TrueC():
            return "true"
        case FalseC():
            return "false"
        case Rel(symbol, args):
            if not args:
                return symbol
            return f"{symbol}({', '.join(format_term(a) for a in args)})"
        case Eq(left, right):
            return f"{format_term(left)} = {format_term(right)}"
        case Not(body):
            # parenthesize negated equations: "~(s = t)" reads better than
            # "~s = t" even though the grammar is unambiguous
            inner = _render(body, _PREC_NOT)
            if isinstance(body, Eq):
                inner = f"({inner})"
            return wrap("~" + inner, _PREC_NOT)
        case And(args):
            text = " & ".join(_render(a, _PREC_AND + 1) for a in args)
            return wrap(text, _PREC_AND)
        case Or(args):
            text = " | ".join(_render(a, _PREC_OR + 1) for a in args)
            return wrap(text, _PREC_OR)
        case Implies(left, right):
            text = f"{_render(left, _PREC_IMP + 1)} -> {_render(right, _PREC_IMP)}"
            return wrap(text, _PREC_IMP)
        case Iff(left, right):
            text = f"{_render(left, _PREC_IFF)} <-> {_render(right, _PREC_IFF + 1)}"
            return wrap(text, _PREC_IFF)
        case Forall(var, body):
            return wrap(f"forall {var}. {_render(body, 0)}", 0)
        case Exists(var, body):
            return wrap(f"exists {var}. {_render(body, 0)}", 0)
    raise TypeError(f"not a formula: {f!r}")
