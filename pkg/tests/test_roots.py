from __future__ import annotations

from fractions import Fraction

from hypothesis import given, strategies as st

from buchifield.fields import QQ
from buchifield.parser import parse_poly
from buchifield.poly import Poly, poly_from_roots
from buchifield.roots import rational_roots, split_rational_roots


def brute_roots(f: Poly) -> list[Fraction]:
    """Rational root theorem, enumerated."""
    from math import lcm

    den = lcm(*[Fraction(c).denominator for c in f.coeffs])
    cs = [int(Fraction(c) * den) for c in f.coeffs]
    while cs and cs[0] == 0:
        cs = cs[1:]
    found = {Fraction(0)} if len(cs) < len(f.coeffs) else set()
    a0, an = abs(cs[0]), abs(cs[-1])
    divs = lambda n: [d for d in range(1, n + 1) if n % d == 0]
    for p in divs(a0):
        for q in divs(an):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if f(r) == 0:
                    found.add(r)
    return sorted(found)


def test_examples():
    assert rational_roots(parse_poly("x^2 - 2")) == []
    assert rational_roots(parse_poly("4x^2 - 1")) == [Fraction(-1, 2), Fraction(1, 2)]
    assert rational_roots(parse_poly("x^3 (x - 7)^2")) == [0, 7]


@given(st.lists(st.builds(Fraction, st.integers(-30, 30), st.integers(1, 7)), min_size=1, max_size=5),
       st.lists(st.integers(-4, 4), min_size=1, max_size=4))
def test_against_brute_force(roots, extra):
    f = poly_from_roots(roots, QQ) * Poly(extra + [1], QQ)
    assert rational_roots(f) == brute_roots(f)


def test_split_residual():
    f = parse_poly("(x - 1/3)^2 (x^2 - 3) (x + 5)")
    s = split_rational_roots(f)
    assert list(s.rational) == [-5, Fraction(1, 3)]
    assert s.residual == parse_poly("x^2 - 3")


def test_large_roots():
    f = poly_from_roots([Fraction(10**12 + 39), Fraction(-(10**9), 7)], QQ) * parse_poly("x^2 + 1")
    assert rational_roots(f) == [Fraction(-(10**9), 7), Fraction(10**12 + 39)]
