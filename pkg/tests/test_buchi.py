from __future__ import annotations

import random
from fractions import Fraction
from math import factorial, isqrt

import pytest
from hypothesis import given, strategies as st

from buchifield.buchi import (
    census, exact_powerful_locus, extend_seed, nth_differences, search_integer_buchi, sequence_to_form,
    theorem_harness, trivial_shift,
)
from buchifield.errors import PreconditionViolated, TooShort
from buchifield.funcfield import ProjPoint, evaluate, is_k_powerful, lift_points
from buchifield.parser import parse_form


def test_nth_differences_examples():
    assert nth_differences([1, 4, 9, 16, 25], 2) == [2, 2, 2]
    assert nth_differences([36, 529, 1024, 1521], 2) == [2, 2]
    for n in range(1, 6):
        assert nth_differences([k**n for k in range(1, n + 2)], n) == [factorial(n)]
    with pytest.raises(TooShort):
        nth_differences([1, 2], 2)


def test_sequence_to_form_examples():
    assert sequence_to_form([1, 4, 9, 16, 25], 2) == (0, 0)
    assert sequence_to_form([36, 529, 1024, 1521], 2) == (-455, 490)
    assert sequence_to_form([1, 2, 3], 2) is None


@given(st.integers(2, 4), st.data())
def test_sequence_round_trip(n, data):
    coeffs = [data.draw(st.builds(Fraction, st.integers(-20, 20), st.integers(1, 4))) for _ in range(n)]
    u = [k**n + sum(a * k**i for i, a in enumerate(coeffs)) for k in range(1, n + 4)]
    assert nth_differences(u, n) == [factorial(n)] * 3
    assert sequence_to_form(u, n) == tuple(coeffs)


@given(st.lists(st.integers(-50, 50), min_size=5, max_size=8), st.integers(-3, 3), st.integers(-3, 3))
def test_differences_linear(u, a, b):
    v = list(reversed(u))
    w = [a * p + b * q for p, q in zip(u, v)]
    n = 2
    du, dv, dw = nth_differences(u, n), nth_differences(v, n), nth_differences(w, n)
    assert dw == [a * p + b * q for p, q in zip(du, dv)]


def test_census_examples():
    r = census(parse_form("(t+x)^2"), lift_points(range(10)), 2)
    assert len(r.powerful_points) == 10 and r.verdict == "CONSISTENT"
    r = census(parse_form("t^2+x"), lift_points(range(100)), 2)
    assert r.powerful_points == [] and r.verdict == "CONSISTENT"
    r = census(parse_form("t^2-x^2"), lift_points(range(-5, 6)), 2)
    assert [b for b, _ in r.powerful_points] == [ProjPoint.affine(0)]


def test_census_degenerate_listed_separately():
    r = census(parse_form("t^3+x t"), lift_points(range(-2, 3)), 2)
    assert r.degenerate_points == [ProjPoint.affine(0)]


@given(st.integers(1, 3))
def test_census_monotone_in_mu(mu):
    F = parse_form("(t+x)^2 (t+x^2)")
    pts = lift_points(range(-6, 7))
    hi = {b for b, _ in census(F, pts, mu + 1).powerful_points}
    lo = {b for b, _ in census(F, pts, mu).powerful_points}
    assert hi <= lo


def test_locus_examples():
    assert exact_powerful_locus(parse_form("t^2-x^2")).rational_points == [0]
    assert exact_powerful_locus(parse_form("t^2+x")).rational_points == []
    r = exact_powerful_locus(parse_form("t^3+x t"), 2)
    assert r.degenerate == [0] and r.rational_points == []
    assert exact_powerful_locus(parse_form("(t+x)^2 (t+x^2)"), 2).rational_points == [0]
    with pytest.raises(PreconditionViolated):
        exact_powerful_locus(parse_form("(t+x)^3"))
    with pytest.raises(PreconditionViolated):
        exact_powerful_locus(parse_form("t^2+1"))


@pytest.mark.parametrize("form", ["t^2-x^2", "t^2+x", "(t+x)^2 (t+x^2)", "t^2 - x^3 + x", "t^3 - x^2 t"])
def test_locus_matches_sampling(form):
    F = parse_form(form)
    report = exact_powerful_locus(F, 2)
    for lam in range(-40, 41):
        value = evaluate(F, ProjPoint.affine(lam))
        if value.is_zero:
            assert lam in report.degenerate
            continue
        assert is_k_powerful(value, 2) == (lam in report.rational_points)


def test_extend_seed_example():
    roots, capped = extend_seed(6, 23, 64)
    assert roots == [6, 23, 32, 39] and not capped
    assert 2 * 1521 - 1024 + 2 == 2020 and isqrt(2020) ** 2 != 2020
    roots, capped = extend_seed(1, 2, 10)
    assert roots == list(range(1, 11)) and capped


def test_trivial_shift_signs():
    assert trivial_shift([1, 2, 3]) == 0
    assert trivial_shift([3, 2, 1, 0, 1]) == -4
    assert trivial_shift([6, 23, 32, 39]) is None


def test_search_small():
    found = search_integer_buchi(range(1, 51), range(1, 51), 4)
    nontrivial = [s for s in found if not s.trivial]
    assert (6, 23, 32, 39) in [s.roots for s in nontrivial]
    for s in found:
        sq = s.squares
        assert all(isqrt(v) ** 2 == v for v in sq)
        assert nth_differences(list(sq), 2) == [2] * (len(sq) - 2)


def test_search_complete_against_brute_force():
    def brute(lo, hi, min_len):
        out = set()
        for a in range(lo, hi + 1):
            for b in range(lo, hi + 1):
                seq = [a * a, b * b]
                while len(seq) < 12:
                    nxt = 2 * seq[-1] - seq[-2] + 2
                    if nxt < 0 or isqrt(nxt) ** 2 != nxt:
                        break
                    seq.append(nxt)
                if len(seq) >= min_len:
                    out.add(tuple(isqrt(v) for v in seq))
        return out

    found = search_integer_buchi(range(1, 121), range(1, 121), 4, max_length=12)
    assert {s.roots for s in found} == brute(1, 120, 4)


def test_search_sharded_equals_serial():
    a = search_integer_buchi(range(1, 40), range(1, 40), 4, workers=1)
    b = search_integer_buchi(range(1, 40), range(1, 40), 4, workers=3)
    assert a == b


def test_harness_small():
    rep = theorem_harness(12, 2, seed=1)
    assert rep.power_census_rate == 1.0
    assert rep.max_locus_bound < rep.bound == 240
    assert rep.witnesses == []
    assert theorem_harness(5, 2, seed=1).to_json() == theorem_harness(5, 2, seed=1).to_json()
