"""Recursive-descent parser for the formula language.

Identifiers are resolved against the signature: declared names are symbols,
everything else is a variable. Quantifier bodies extend maximally; a
quantifier may start any subformula. Variable names beginning with '_' are
reserved for the normalizer's fresh variables.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

from ..errors import FormulaSyntaxError, ShadowingWarning, UnknownArity
from ..structures import Signature
from .syntax import (
    Apply,
    Eq,
    Exists,
    FALSE,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Rel,
    TRUE,
    Term,
    Var,
    make_and,
    make_or,
)

_TOKEN_RE = re.compile(
    r"(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<iff><->)"
    r"|(?P<arrow>->)"
    r"|(?P<punct>[()=~&|,.])"
    r"|(?P<bad>\S)"
)

_KEYWORDS = {"forall", "exists", "true", "false"}


@dataclass(frozen=True)
class _Token:
    kind: str  # ident | keyword | op | eof
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    for lineno, line in enumerate(text.splitlines() or [""], start=1):
        pos = 0
        while pos < len(line):
            if line[pos].isspace():
                pos += 1
                continue
            m = _TOKEN_RE.match(line, pos)
            if m is None or m.lastgroup == "bad":
                raise FormulaSyntaxError(lineno, pos + 1, "a token")
            text_ = m.group()
            if m.lastgroup == "ident":
                kind = "keyword" if text_ in _KEYWORDS else "ident"
            else:
                kind = "op"
            tokens.append(_Token(kind, text_, lineno, pos + 1))
            pos = m.end()
    last_line = text.count("\n") + 1
    tokens.append(_Token("eof", "", last_line, len(text.splitlines()[-1]) + 1 if text.splitlines() else 1))
    return tokens


class _Parser:
    def __init__(self, sig: Signature, tokens: list[_Token]):
        self.sig = sig
        self.tokens = tokens
        self.pos = 0
        self.bound: list[str] = []

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok.text != text:
            raise FormulaSyntaxError(tok.line, tok.col, repr(text))
        return self.advance()

    def fail(self, expected: str):
        tok = self.peek()
        raise FormulaSyntaxError(tok.line, tok.col, expected)

    # formula := iff ; quantifiers may start any subformula and their
    # bodies extend maximally.
    def formula(self) -> Formula:
        left = self.imp()
        while self.peek().text == "<->":
            self.advance()
            left = Iff(left, self.imp())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek().text == "->":
            self.advance()
            return Implies(left, self.imp())
        return left

    def disj(self) -> Formula:
        parts = [self.conj()]
        while self.peek().text == "|":
            self.advance()
            parts.append(self.conj())
        return make_or(parts)

    def conj(self) -> Formula:
        parts = [self.unary()]
        while self.peek().text == "&":
            self.advance()
            parts.append(self.unary())
        return make_and(parts)

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.text == "~":
            self.advance()
            return Not(self.unary())
        if tok.text in ("forall", "exists"):
            return self.quantifier()
        if tok.text == "(":
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        return self.atom()

    def quantifier(self) -> Formula:
        tok = self.advance()
        name_tok = self.peek()
        if name_tok.kind != "ident":
            self.fail("a variable name")
        name = self.advance().text
        self._check_var_name(name, name_tok)
        if name in self.bound:
            warnings.warn(
                f"variable {name!r} shadows an enclosing binding",
                ShadowingWarning,
                stacklevel=4,
            )
        self.expect(".")
        self.bound.append(name)
        try:
            body = self.formula()
        finally:
            self.bound.pop()
        return Forall(name, body) if tok.text == "forall" else Exists(name, body)

    def atom(self) -> Formula:
        tok = self.peek()
        if tok.text == "true":
            self.advance()
            return TRUE
        if tok.text == "false":
            self.advance()
            return FALSE
        if tok.kind != "ident":
            self.fail("a formula")
        arity = self.sig.relation_arity(tok.text)
        if arity is not None:
            symbol = self.advance().text
            args = self.call_args(symbol, arity)
            return Rel(symbol, args)
        left = self.term()
        self.expect("=")
        right = self.term()
        return Eq(left, right)

    def call_args(self, symbol: str, arity: int) -> tuple[Term, ...]:
        if arity == 0:
            if self.peek().text == "(":
                raise UnknownArity(symbol, "0-ary symbols are written bare")
            return ()
        self.expect("(")
        args = [self.term()]
        while self.peek().text == ",":
            self.advance()
            args.append(self.term())
        self.expect(")")
        if len(args) != arity:
            raise UnknownArity(symbol, f"expects {arity} arguments, got {len(args)}")
        return tuple(args)

    def term(self) -> Term:
        tok = self.peek()
        if tok.kind != "ident":
            self.fail("a term")
        name = self.advance().text
        arity = self.sig.function_arity(name)
        if arity is not None:
            return Apply(name, self.call_args(name, arity))
        if self.sig.relation_arity(name) is not None:
            raise UnknownArity(name, "relation symbol used in a term")
        if self.peek().text == "(":
            raise UnknownArity(name, "undeclared symbol applied to arguments")
        self._check_var_name(name, tok)
        return Var(name)

    def _check_var_name(self, name: str, tok: _Token):
        if name.startswith("_"):
            raise FormulaSyntaxError(
                tok.line, tok.col, "a variable not beginning with '_'"
            )
        if (
            self.sig.function_arity(name) is not None
            or self.sig.relation_arity(name) is not None
        ):
            raise FormulaSyntaxError(
                tok.line, tok.col, f"a variable (got signature symbol {name!r})"
            )


def parse_formula(sig: Signature, text: str) -> Formula:
    parser = _Parser(sig, _tokenize(text))
    result = parser.formula()
    tok = parser.peek()
    if tok.kind != "eof":
        raise FormulaSyntaxError(tok.line, tok.col, "end of input")
    return result


def parse_term(sig: Signature, text: str) -> Term:
    parser = _Parser(sig, _tokenize(text))
    result = parser.term()
    tok = parser.peek()
    if tok.kind != "eof":
        raise FormulaSyntaxError(tok.line, tok.col, "end of input")
    return result
