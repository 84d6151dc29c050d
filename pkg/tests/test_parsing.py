import random
from fractions import Fraction

import pytest

from conftest import random_operator, random_polynomial
from taut.algebra import Polynomial
from taut.parsing import ParseError, format_operator, parse_operator, parse_polynomial
from taut.weyl import WeylElement


def test_simple_operators():
    v = ("x1",)
    assert parse_operator("x1*d1 + 1", v) == WeylElement(v, {(1, 1): 1, (0, 0): 1})
    # the parser multiplies, the engine normal-orders
    assert parse_operator("d1*x1", v) == parse_operator("x1*d1 + 1", v)
    assert parse_operator("dx1^2", v) == parse_operator("d1*d1", v)


def test_segre_operator():
    v = ("x11", "x12", "x21", "x22")
    P = parse_operator("d11*d22 - d21*d12", v)
    assert P.terms == {(0, 0, 0, 0, 1, 0, 0, 1): 1, (0, 0, 0, 0, 0, 1, 1, 0): -1}


def test_grammar():
    v = ("x", "y")
    assert parse_operator("x*x + 2*x*y + y^2", v) == parse_operator("x^2 + 2*y*x + y*y", v)
    assert parse_operator("-3/4*dx", v) == WeylElement(v, {(0, 0, 1, 0): Fraction(-3, 4)})
    assert parse_operator("dx*x^2", v) == parse_operator("x^2*dx + 2*x", v)
    assert parse_polynomial("x*y - 1", v) == Polynomial(v, {(1, 1): 1, (0, 0): -1})
    with pytest.raises(ParseError):
        parse_polynomial("dx", v)


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("x + ", 1, 5),
        ("x +\n * y", 2, 2),
        ("x + q", 1, 5),
        ("(x + y)", 1, 1),
        ("2 x", 1, 3),
        ("x^y", 1, 3),
        ("1/0*x", 1, 3),
        ("x $ y", 1, 3),
    ],
)
def test_parse_error_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_operator(text, ("x", "y"))
    assert (info.value.line, info.value.col) == (line, col)


def test_unknown_variable_message():
    with pytest.raises(ParseError, match="unknown"):
        parse_operator("w", ("x", "y"))


def test_reserved_variable_names():
    with pytest.raises(ValueError):
        parse_operator("x", ("x", "dx"))


@pytest.mark.parametrize("vars", [("x", "y"), ("x11", "x12", "x21", "x22"), ("z0", "z1", "z2")])
def test_round_trip_random_operators(vars):
    rng = random.Random(7)
    for _ in range(500 // 3 + 1):
        op = random_operator(rng, vars, terms=rng.randint(0, 5), maxdeg=3)
        text = format_operator(op)
        assert parse_operator(text, vars) == op
        assert format_operator(parse_operator(text, vars)) == text


def test_round_trip_polynomials():
    rng = random.Random(3)
    v = ("a", "b", "c")
    for _ in range(100):
        p = random_polynomial(rng, v, terms=4, maxdeg=3)
        assert parse_polynomial(str(p), v) == p


def test_localized_operator_printing():
    v = ("lam", "s")
    op = parse_operator("dlam*lam + s*ds", v, localized=("lam",))
    # lam sits in the coefficient, so the s-term leads
    assert str(op) == "s*ds + lam*dlam + 1"
    assert str(parse_operator("3/2*dlam", v, localized=("lam",))) == "3/2*dlam"
