"""Rational roots of polynomials over Q, without integer factorisation.

A rational root r of an integer polynomial with leading coefficient a makes
a*r an integer root of the monic polynomial a^(d-1) f(y/a). Integer roots
of a monic polynomial are found modulo a small prime at which it stays
squarefree, lifted by Newton/Hensel iteration past the Cauchy bound, and
then checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd
from math import lcm as ilcm

from .fields import QQ, is_prime
from .poly import Poly, squarefree_part


def integer_coefficients(f: Poly) -> list[int]:
    """Primitive integer multiple of a nonzero polynomial over Q, positive lc."""
    den = 1
    for c in f.coeffs:
        den = ilcm(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = igcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _eval_mod(cs: list[int], r: int, m: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = (acc * r + c) % m
    return acc


def _poly_mod_gcd_is_one(cs: list[int], p: int) -> bool:
    """gcd(g, g') == 1 over F_p for monic g given by integer coefficients."""
    a = [c % p for c in cs]
    b = [(k * c) % p for k, c in enumerate(cs)][1:]

    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            q = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, bc in enumerate(b):
                a[shift + i] = (a[shift + i] - q * bc) % p
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) == 1


def _primes(start: int = 3):
    p = start
    while True:
        if is_prime(p):
            yield p
        p += 1


def _monic_integer_roots(g: list[int]) -> list[int]:
    d = len(g) - 1
    if d == 1:
        return [-g[0]]
    bound = 1 + max(abs(c) for c in g[:-1])
    gp = [k * c for k, c in enumerate(g)][1:]
    for p in _primes(max(3, d + 1)):
        if _poly_mod_gcd_is_one(g, p):
            break
    base_roots = [r for r in range(p) if _eval_mod(g, r, p) == 0]
    modulus_target = 2 * bound + 1
    found = []
    for r in base_roots:
        m = p
        while m < modulus_target:
            m = m * m
            inv = pow(_eval_mod(gp, r, m), -1, m)
            r = (r - _eval_mod(g, r, m) * inv) % m
        if r > m // 2:
            r -= m
        if abs(r) <= bound and _exact_eval(g, r) == 0:
            found.append(r)
    return found


def _exact_eval(cs: list[int], r: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * r + c
    return acc


def rational_roots(f: Poly) -> list[Fraction]:
    """Distinct rational roots of a nonzero polynomial over Q, sorted."""
    if f.field != QQ:
        raise TypeError("rational_roots needs a polynomial over Q")
    if f.is_zero:
        raise ValueError("the zero polynomial has every rational as a root")
    if f.deg < 1:
        return []
    sf = squarefree_part(f)
    cs = integer_coefficients(sf)
    roots: list[Fraction] = []
    if cs[0] == 0:
        roots.append(Fraction(0))
        cs = cs[1:]
    d = len(cs) - 1
    if d >= 1:
        a = cs[-1]
        g = [c * a ** (d - 1 - k) for k, c in enumerate(cs[:-1])] + [1]
        roots.extend(Fraction(y, a) for y in _monic_integer_roots(g))
    return sorted(set(roots))


@dataclass(frozen=True)
class RootSplit:
    """Rational roots of f plus the squarefree cofactor carrying the rest."""

    rational: tuple[Fraction, ...]
    residual: Poly

    @property
    def residual_degree(self) -> int:
        return max(int(self.residual.deg), 0)


def split_rational_roots(f: Poly) -> RootSplit:
    """Separate distinct rational roots from the irrational remainder.

    ``residual`` is the monic squarefree part of f with every linear factor
    over Q removed, so its degree bounds the number of distinct irrational
    roots.
    """
    sf = squarefree_part(f)
    roots = rational_roots(sf)
    residual = sf
    for r in roots:
        residual = residual.exact_div(Poly([-r, 1], QQ, f.var))
    return RootSplit(tuple(roots), residual.monic())
