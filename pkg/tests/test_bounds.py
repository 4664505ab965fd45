from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from buchifield.bounds import (
    bound_E, bound_M, bound_N, bound_disc_zeros, bound_lemma_linear, bound_table, case_bound_m_below_n,
    case_bound_n_below_mu, check_final_inequality, contradiction_replay, final_inequality_rhs,
)
from buchifield.errors import DomainError


def test_constants():
    assert bound_M(2, 0) == 240
    assert bound_M(3, 0) == 4032
    assert bound_M(2, 1) == 252
    assert [bound_lemma_linear(g) for g in range(6)] == [4, 8, 12, 16, 20, 24]
    assert bound_disc_zeros(2, 1) == 20
    assert bound_E(2, 1) == 22
    assert bound_N(3, 2) == bound_M(3, 2)


def test_domain_errors():
    for bad in [(1, 0), (2, -1)]:
        with pytest.raises(DomainError):
            bound_M(*bad)
    with pytest.raises(DomainError):
        check_final_inequality(3, 2, 2, 0, 10)
    with pytest.raises(DomainError):
        bound_disc_zeros(0, 1)


@given(st.integers(2, 9), st.integers(0, 20))
def test_M_monotone_and_formula(n, g):
    assert bound_M(n, g) == 2 * n * (n + 1) * (g + n * comb(3 * n - 1, n))
    assert bound_M(n, g + 1) > bound_M(n, g)
    assert bound_M(n + 1, g) > bound_M(n, g)


@given(st.integers(2, 7), st.integers(0, 6))
def test_case_bounds_at_most_M(n, g):
    assert case_bound_m_below_n(n, g) < bound_M(n, g)
    # equality in the n < mu branch: the final inequality is strict, so |B| = M still fails it
    assert case_bound_n_below_mu(n, g) == bound_M(n, g)


def test_final_inequality_is_exact():
    rhs = final_inequality_rhs(1, 3, 2, 0, 240)
    assert rhs == Fraction(240, 3) + 2 * 2 * 2 * 10  # C(5, 2) = 10
    assert isinstance(rhs, Fraction)
    assert not check_final_inequality(1, 3, 2, 0, 240)
    assert check_final_inequality(2, 2, 2, 0, 240)  # m = n = mu is the non-contradictory branch


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("g", range(0, 4))
def test_replay_contradicts_everywhere(n, g):
    rows = contradiction_replay(n, g)
    assert rows
    assert all(r["contradiction"] for r in rows)
    assert {(r["m"], r["mu"]) for r in rows} >= {(1, n), (n, n + 1)}


def test_table():
    rows = bound_table([2, 3], [0, 1])
    assert [r["M"] for r in rows] == [240, 252, 4032, 4056]
