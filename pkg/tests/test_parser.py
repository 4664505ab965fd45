from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from buchifield.errors import DivisionInPolyContext, NegativeExponent, ParseError, WrongVariable
from buchifield.fields import QQ
from buchifield.funcfield import QQx, RatFunc
from buchifield.parser import parse_expr_any, parse_form, parse_poly, parse_ratfunc, tokenize
from buchifield.poly import Poly


def test_poly_example():
    assert parse_poly("x^2 - 2*x + 1").coeffs == (1, -2, 1)


def test_ratfunc_examples():
    f = parse_ratfunc("(x^2+1)/(x-3)")
    assert f.den == parse_poly("x - 3") and f.num == parse_poly("x^2 + 1")
    g = parse_ratfunc("x^2/(2x)")
    assert g.num == parse_poly("x/2") and g.den == parse_poly("1")
    assert g == QQx.gen / 2


def test_implicit_multiplication_and_stars():
    assert parse_poly("3x(x+1)") == parse_poly("3*x^2 + 3*x")
    assert parse_poly("x**3") == parse_poly("x^3")
    assert parse_poly("2 x") == parse_poly("2*x")


def test_constant_division_in_poly():
    assert parse_poly("x/2 + 1/3") == Poly([Fraction(1, 3), Fraction(1, 2)], QQ)


@pytest.mark.parametrize(
    "src,exc,col",
    [
        ("x/(x+1)", DivisionInPolyContext, 1),
        ("x^-2", NegativeExponent, 2),
        ("t + 1", WrongVariable, 0),
        ("x + $", ParseError, 4),
        ("(x + 1", ParseError, 5),  # end of input points at the last character
        ("x +", ParseError, 2),
    ],
)
def test_errors_and_columns(src, exc, col):
    with pytest.raises(exc) as info:
        parse_poly(src)
    assert info.value.column == col
    assert 0 <= info.value.column <= len(src)


def test_errors_are_syntax_errors():
    with pytest.raises(SyntaxError):
        parse_poly("x ++")


def test_division_by_zero_constant():
    with pytest.raises(ParseError) as info:
        parse_ratfunc("x/(x-x)")
    assert info.value.column == 1


def test_parse_form_variants():
    a = parse_form('{"n": 2, "coeffs": ["-x^2", 0]}')
    b = parse_form("t^2 - x^2")
    c = parse_form({"coeffs": ["-x^2", "0"]})
    assert a == b == c
    assert a.n == 2


def test_parse_expr_any():
    f = parse_expr_any("t^2+t", ("t", "x"))
    assert f.num.var == "t"
    with pytest.raises(WrongVariable):
        parse_expr_any("x*t")


def test_tokens_carry_positions():
    toks = tokenize("  12 + x")
    assert [(t.kind, t.pos) for t in toks] == [("num", 2), ("op", 5), ("var", 7), ("end", 8)]


def _random_ratfunc(rng: random.Random) -> RatFunc:
    def poly(deg):
        return Poly([Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(deg + 1)], QQ)

    while True:
        num, den = poly(rng.randint(0, 4)), poly(rng.randint(0, 3))
        if not den.is_zero:
            return RatFunc(num, den)


def test_round_trip_500():
    rng = random.Random(11)
    for i in range(500):
        if i % 2:
            f = _random_ratfunc(rng)
            assert parse_ratfunc(str(f)) == f
        else:
            p = Poly([Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(rng.randint(1, 6))], QQ)
            assert parse_poly(str(p)) == p


@given(st.text(alphabet="x0123456789+-*/^() ", max_size=14))
def test_rejections_report_column_in_range(src):
    try:
        parse_ratfunc(src)
    except ParseError as exc:
        assert 0 <= exc.column <= len(src)
    except ZeroDivisionError:
        pass
