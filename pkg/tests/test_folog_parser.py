import random

import pytest

from fquotlab.errors import FormulaSyntaxError, ShadowingWarning, UnknownArity
from fquotlab.fixtures import GROUP_SIG, MI_SIG
from fquotlab.folog import (
    And,
    Apply,
    Eq,
    Exists,
    Forall,
    Iff,
    Implies,
    Not,
    Or,
    Rel,
    Var,
    format_formula,
    free_vars,
    is_closed,
    parse_formula,
)
from fquotlab.structures import Signature

SIG2 = Signature(relations=(("R", 1), ("S", 1)))


def test_commutativity_parses():
    f = parse_formula(GROUP_SIG, "forall x. forall y. add(x,y) = add(y,x)")
    assert f == Forall(
        "x",
        Forall(
            "y",
            Eq(
                Apply("add", (Var("x"), Var("y"))),
                Apply("add", (Var("y"), Var("x"))),
            ),
        ),
    )
    assert is_closed(f)


def test_mi_example_parses():
    f = parse_formula(MI_SIG, "exists e. E(e) & op(e,e) = e")
    assert isinstance(f, Exists)
    assert isinstance(f.body, And)
    assert f.body.args[0] == Rel("E", (Var("e"),))


def test_unclosed_paren_is_syntax_error():
    with pytest.raises(FormulaSyntaxError) as exc:
        parse_formula(SIG2, "forall x. R(x")
    assert exc.value.line == 1


def test_precedence_chain():
    sig = Signature(relations=(("A", 0), ("B", 0), ("C", 0), ("D", 0), ("E", 0)))
    f = parse_formula(sig, "~A & B | C -> D <-> E")
    # ~ > & > | > -> > <->
    assert f == Iff(
        Implies(Or((And((Not(Rel("A")), Rel("B"))), Rel("C"))), Rel("D")),
        Rel("E"),
    )


def test_implies_right_associative():
    sig = Signature(relations=(("A", 0), ("B", 0), ("C", 0)))
    f = parse_formula(sig, "A -> B -> C")
    assert f == Implies(Rel("A"), Implies(Rel("B"), Rel("C")))


def test_quantifier_body_extends_maximally():
    f = parse_formula(SIG2, "forall x. R(x) & S(x)")
    assert isinstance(f, Forall)
    assert isinstance(f.body, And)


def test_quantifier_after_connective():
    f = parse_formula(SIG2, "forall x. (R(x) -> exists y. S(y))")
    assert isinstance(f.body, Implies)
    assert isinstance(f.body.right, Exists)


def test_bare_constants_and_equality():
    f = parse_formula(GROUP_SIG, "zero = neg(zero)")
    assert f == Eq(Apply("zero"), Apply("neg", (Apply("zero"),)))
    with pytest.raises(UnknownArity):
        parse_formula(GROUP_SIG, "zero() = zero")


def test_arity_errors():
    with pytest.raises(UnknownArity):
        parse_formula(GROUP_SIG, "add(x) = x")
    with pytest.raises(UnknownArity):
        parse_formula(GROUP_SIG, "foo(x) = x")
    with pytest.raises(UnknownArity):
        parse_formula(MI_SIG, "op(E(x), x) = x")


def test_reserved_underscore_variables_rejected():
    with pytest.raises(FormulaSyntaxError):
        parse_formula(SIG2, "R(_x)")
    with pytest.raises(FormulaSyntaxError):
        parse_formula(SIG2, "forall _y. R(_y)")


def test_shadowing_warns_but_parses():
    with pytest.warns(ShadowingWarning):
        f = parse_formula(SIG2, "forall x. R(x) & (exists x. S(x))")
    assert isinstance(f, Forall)


def test_free_variables():
    f = parse_formula(SIG2, "R(x) & (forall y. S(y) | R(z))")
    assert free_vars(f) == {"x", "z"}


def test_trailing_tokens_rejected():
    with pytest.raises(FormulaSyntaxError) as exc:
        parse_formula(SIG2, "R(x) R(y)")
    assert "end of input" in str(exc.value)


# --- printer round trip ------------------------------------------------------

def _random_formula(rng: random.Random, depth: int):
    variables = ("x", "y", "z")

    def term(d):
        if d <= 0 or rng.random() < 0.6:
            return Var(rng.choice(variables))
        return Apply("f", (term(d - 1), term(d - 1)))

    def atom():
        k = rng.random()
        if k < 0.4:
            return Rel("U", (term(2),))
        if k < 0.7:
            return Rel("B", (term(1), term(1)))
        return Eq(term(1), term(1))

    def build(d):
        if d <= 0:
            return atom()
        k = rng.randrange(7)
        if k == 0:
            return Not(build(d - 1))
        if k == 1:
            return And(tuple(build(d - 1) for _ in range(rng.randint(2, 3))))
        if k == 2:
            return Or(tuple(build(d - 1) for _ in range(rng.randint(2, 3))))
        if k == 3:
            return Implies(build(d - 1), build(d - 1))
        if k == 4:
            return Iff(build(d - 1), build(d - 1))
        if k == 5:
            return Forall(rng.choice(variables), build(d - 1))
        return Exists(rng.choice(variables), build(d - 1))

    return build(depth)


RANDOM_SIG = Signature(
    functions=(("f", 2),), relations=(("U", 1), ("B", 2))
)


def test_format_parse_round_trip():
    import warnings

    rng = random.Random(7)
    for _ in range(300):
        f = _random_formula(rng, rng.randint(0, 4))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ShadowingWarning)
            again = parse_formula(RANDOM_SIG, format_formula(f))
        assert again == f
