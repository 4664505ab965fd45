from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from buchifield.errors import ZeroFunction
from buchifield.funcfield import (
    BuchiForm, ClassKind, ProjPoint, QQx, classify, evaluate, evaluate_coords, is_k_powerful,
    max_powerfulness, multiplicity_profile, random_form, zero_profile,
)
from buchifield.parser import parse_form, parse_ratfunc as R

x = QQx.gen


def profile(f):
    return sorted((str(g), m) for g, m in zero_profile(f).finite_part.parts)


def test_ratfunc_normalization():
    f = R("(2x^2 - 2)/(4x - 4)")
    assert str(f) == "1/2*x + 1/2"
    g = R("(x+1)/(2x)")
    assert g.den.lc == 1
    assert R("0/(x+3)").den == R("1").num


def test_evaluate_examples():
    assert evaluate(parse_form("(t+x)^2"), ProjPoint.affine(2)) == R("x^2+4x+4")
    assert evaluate(parse_form("t^2-x^2"), ProjPoint.affine(0)) == -(x**2)
    assert evaluate(parse_form("t^2+x*t"), ProjPoint.infinity()) == 1


def test_zero_profile_examples():
    p = zero_profile(R("x^3 (x-1)^2/(x+1)^5"))
    assert profile(R("x^3 (x-1)^2/(x+1)^5")) == [("x", 3), ("x - 1", 2)]
    assert p.order_at_infinity <= 0
    q = zero_profile(R("1/x"))
    assert q.multiplicities == [1]
    assert zero_profile(R("5")).multiplicities == []
    with pytest.raises(ZeroFunction):
        zero_profile(R("0"))


def test_powerful_examples():
    f = R("x^2 (x-1)^3")
    assert is_k_powerful(f, 2) and not is_k_powerful(f, 3)
    assert is_k_powerful(R("(7/2 + x)^4"), 4)
    assert is_k_powerful(R("x^2/(x-1)"), 2)
    assert is_k_powerful(R("5"), 100)
    assert max_powerfulness(R("5")) is None
    assert max_powerfulness(f) == 2


def test_multiplicity_profile_examples():
    assert multiplicity_profile(parse_form("(t+x)^3")).multiplicities == (3,)
    assert multiplicity_profile(parse_form("t^2-x^2")).multiplicities == (1,)
    assert sorted(multiplicity_profile(parse_form("(t+x)^2 (t+x^2)")).multiplicities) == [1, 2]


def test_classify_examples():
    c = classify(parse_form("t^3+3x t^2+3x^2 t+x^3"))
    assert c.kind is ClassKind.POWER_OF_LINEAR and c.nu == x
    assert classify(parse_form("t^2+7")).kind is ClassKind.CONSTANT_COEFFICIENTS
    assert classify(parse_form("t^3+x t")).kind is ClassKind.OTHER
    # a constant nu lands in both branches; constant coefficients win
    assert classify(parse_form("(t+1)^2")).kind is ClassKind.CONSTANT_COEFFICIENTS


def test_projpoint_normalization():
    assert ProjPoint.from_coords(4, 2) == ProjPoint.affine(2)
    assert ProjPoint.from_coords(-3, 0) == ProjPoint.infinity()
    with pytest.raises(ValueError):
        ProjPoint.from_coords(0, 0)


@given(st.integers(-5, 5), st.integers(1, 5), st.integers(-5, 5).filter(bool))
def test_evaluate_scalar_stable(s, t, c):
    F = parse_form("t^3 - x t + x^2")
    a = zero_profile(evaluate_coords(F, s, t)) if evaluate_coords(F, s, t) else None
    b = zero_profile(evaluate_coords(F, c * s, c * t)) if evaluate_coords(F, c * s, c * t) else None
    assert (a is None) == (b is None)
    if a is not None:
        assert a.multiplicities == b.multiplicities


def _rf(draw_ints):
    cs = draw_ints
    return R(" + ".join(f"({c})*x^{i}" for i, c in enumerate(cs)) or "1")


polys = st.lists(st.integers(-4, 4), min_size=1, max_size=4).map(_rf).filter(lambda f: not f.is_zero)


@given(polys, polys, st.integers(2, 3))
def test_powerful_closure(f, g, k):
    if is_k_powerful(f, k) and is_k_powerful(g, k):
        assert is_k_powerful(f * g, k)
    assert is_k_powerful(f**k, k)


@given(polys, polys)
def test_profile_degree_conservation(f, g):
    h = f / g
    p = zero_profile(h)
    expected = h.num.deg + max(0, h.den.deg - h.num.deg)
    assert p.total_degree == expected


def test_lemma_clave_equivalence_random():
    rng = random.Random(5)
    for _ in range(150):
        n = rng.choice([2, 3, 4])
        if rng.random() < 0.4:
            nu = x * rng.randint(-3, 3) + rng.randint(-3, 3)
            F = BuchiForm.power_of_linear(nu, n)
        else:
            F = random_form(rng, n)
        c = classify(F)
        top = multiplicity_profile(F).max_multiplicity
        if c.kind is not ClassKind.CONSTANT_COEFFICIENTS:
            assert (c.kind is ClassKind.POWER_OF_LINEAR) == (top == n)
