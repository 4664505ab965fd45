"""Ramification of rational maps P^1 -> P^1 over Q.

Branch values are found as roots of the x-discriminant of N(x) - l*D(x)
together with the roots of its leading coefficient. Rational branch values
are handled by direct fiber counting. Irrational ones are never
approximated: their ramification is measured through the critical
polynomial W = N'D - ND', restricted to the roots of the residual factor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import bound_lemma_linear
from .errors import ConstantInput, ConstantMap, TheoremViolation
from .fields import QQ
from .funcfield import FunctionField, ProjPoint, QQx, RatFunc
from .poly import Poly, discriminant, distinct_root_count, gcd, resultant, squarefree_decompose, squarefree_part
from .roots import split_rational_roots

LAMBDA = "l"
_L = FunctionField(QQ, LAMBDA)


@dataclass(frozen=True)
class RationalMap:
    u: RatFunc

    def __post_init__(self):
        if self.u.is_constant:
            raise ConstantMap(f"{self.u} is constant")

    @property
    def degree(self) -> int:
        return self.u.degree

    @property
    def num(self) -> Poly:
        return self.u.num

    @property
    def den(self) -> Poly:
        return self.u.den


def _as_map(u) -> RationalMap:
    return u if isinstance(u, RationalMap) else RationalMap(u)


def fiber_polynomial(m: RationalMap, lam) -> Poly:
    """Affine part of the fiber over ``lam`` (None for infinity)."""
    if lam is None:
        return m.den
    return m.num - m.den * QQ(lam)


def fiber_size(m: RationalMap, lam) -> int:
    P = fiber_polynomial(m, lam)
    return distinct_root_count(P) + (1 if P.deg < m.degree else 0)


def fiber_multiplicities(m: RationalMap, lam) -> list[int]:
    """Ramification indices of the points over ``lam``, infinity last."""
    P = fiber_polynomial(m, lam)
    mults = [k for g, k in squarefree_decompose(P).parts for _ in range(int(g.deg))]
    if P.deg < m.degree:
        mults.append(m.degree - int(P.deg))
    return mults


@dataclass
class BranchData:
    degree: int
    rational: dict = field(default_factory=dict)  # lam -> d - |fiber|
    infinity: int = 0
    residual: Poly | None = None
    residual_contribution: int = 0

    @property
    def total(self) -> int:
        return sum(self.rational.values()) + self.infinity + self.residual_contribution

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "rational_branch_values": {str(k): v for k, v in self.rational.items() if v},
            "infinity": self.infinity,
            "residual": str(self.residual) if self.residual is not None else "1",
            "residual_contribution": self.residual_contribution,
            "total": self.total,
        }


def _generic_fiber(m: RationalMap) -> Poly:
    """N(x) - l*D(x) with coefficients in Q(l)."""
    width = m.degree + 1
    coeffs = [
        _L(Poly([m.num.coeff(k), -m.den.coeff(k)], QQ, LAMBDA)) for k in range(width)
    ]
    return Poly(coeffs, _L, m.num.var)


def critical_polynomial(m: RationalMap) -> Poly:
    return m.num.derivative() * m.den - m.num * m.den.derivative()


def _compose_numerator(phi: Poly, m: RationalMap) -> Poly:
    """Numerator of phi(u(x)) cleared by D^deg(phi)."""
    k = int(phi.deg)
    acc = Poly.zero(QQ, m.num.var)
    for i, c in enumerate(phi.coeffs):
        acc = acc + m.num**i * m.den ** (k - i) * c
    return acc


def _support_degree(W: Poly, S: Poly) -> int:
    """Degree of the largest divisor of W whose roots are all roots of S."""
    total = 0
    h = W
    g = gcd(h, S)
    while g.deg > 0:
        total += int(g.deg)
        h = h.exact_div(g)
        g = gcd(h, g)
    return total


def branch_data(u) -> BranchData:
    m = _as_map(u)
    d = m.degree
    P = _generic_fiber(m)
    disc = discriminant(P).num if P.deg >= 2 else Poly.constant(1, QQ, LAMBDA)
    lc = P.lc.num
    cand = disc * lc if lc.deg > 0 else disc
    data = BranchData(d)
    if cand.deg > 0:
        split = split_rational_roots(cand)
        for lam in split.rational:
            data.rational[lam] = d - fiber_size(m, lam)
        residual = split.residual
    else:
        residual = Poly.constant(1, QQ, LAMBDA)
    data.infinity = d - fiber_size(m, None)
    data.residual = residual
    if residual.deg > 0:
        psi = squarefree_part(_compose_numerator(residual, m))
        data.residual_contribution = _support_degree(critical_polynomial(m), psi)
    return data


def ramification_total(u) -> int:
    """Sum over branch values of (deg u - |fiber|); equals 2 deg u - 2."""
    return branch_data(u).total


@dataclass(frozen=True)
class Correspondence:
    u: RationalMap
    v: RationalMap

    @classmethod
    def of(cls, u, v) -> "Correspondence":
        return cls(_as_map(u), _as_map(v))


@dataclass(frozen=True)
class ZeuthenResult:
    lhs: int
    rhs: int
    ram_u: int
    ram_v: int
    eps: int
    delta: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "eps": self.eps,
            "delta": self.delta,
            "ramification_u": self.ram_u,
            "ramification_v": self.ram_v,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "equal": self.equal,
        }


def zeuthen_check(c: Correspondence) -> ZeuthenResult:
    """Both projections of a rational curve computing chi = 2."""
    ru = ramification_total(c.u)
    rv = ramification_total(c.v)
    eps, delta = c.u.degree, c.v.degree
    return ZeuthenResult(2 * eps - ru, 2 * delta - rv, ru, rv, eps, delta)


@dataclass
class LinearCensus:
    """Points b where s + c*t has only multiple zeros."""

    c: RatFunc
    points: list[ProjPoint]
    irrational_count: int = 0

    @property
    def size(self) -> int:
        return len(self.points) + self.irrational_count

    def to_json(self) -> dict:
        return {
            "c": str(self.c),
            "points": [str(b) for b in self.points],
            "irrational_count": self.irrational_count,
            "size": self.size,
            "bound": bound_lemma_linear(0),
        }


def lemma_linear_census(c: RatFunc) -> LinearCensus:
    if c.is_constant:
        raise ConstantInput(f"{c} is constant")
    m = RationalMap(c)
    data = branch_data(m)
    points = []
    for v in data.rational:
        if min(fiber_multiplicities(m, v)) >= 2:
            points.append(ProjPoint.affine(-v))
    irrational = 0
    phi = data.residual
    if phi is not None and phi.deg > 0:
        W = critical_polynomial(m)
        psi = squarefree_part(_compose_numerator(phi, m))
        unramified = psi.exact_div(gcd(psi, W))
        if unramified.deg <= 0:
            irrational = int(phi.deg)
        else:
            chi = resultant(unramified.map_coeffs(_L, _L), _generic_fiber(m)).num
            irrational = int(phi.deg) - int(gcd(phi, chi).deg)
    points.sort(key=lambda b: b.s)
    census = LinearCensus(c, points, irrational)
    if census.size > bound_lemma_linear(0):
        raise TheoremViolation("too many totally multiple fibers", census.to_json())
    return census


# --------------------------------------------------------------------------
# random maps for property checks
# --------------------------------------------------------------------------


def compose(f: RatFunc, g: RatFunc) -> RatFunc:
    return f.num(g) / f.den(g)


def _mobius(rng: random.Random) -> RatFunc:
    x = QQx.gen
    while True:
        a, b, c, d = (Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4))
        if a * d - b * c:
            return (x * a + b) / (x * c + d)


def _power(rng: random.Random, k: int) -> RatFunc:
    x = QQx.gen
    if k == 2 and rng.random() < 0.3:
        return x * x * 2 - 1
    if k == 3 and rng.random() < 0.3:
        return x**3 * 4 - x * 3
    return x**k


def random_rational_branch_map(rng: random.Random, max_degree: int = 6) -> RatFunc:
    """Compositions of Mobius maps with x^k and Chebyshev maps.

    Every branch value of such a composition is rational.
    """
    while True:
        degs = rng.choice([(1,), (2,), (3,), (4,), (5,), (6,), (2, 2), (2, 3), (3, 2)])
        if all(k <= max_degree for k in degs) and _prod(degs) <= max_degree:
            break
    u = _mobius(rng)
    for k in degs:
        u = compose(_power(rng, k), u)
        u = compose(_mobius(rng), u)
    return u


def _prod(ks) -> int:
    out = 1
    for k in ks:
        out *= k
    return out


def random_map(rng: random.Random, max_degree: int = 5, bound: int = 4) -> RatFunc:
    """Generic non-constant rational map; branch values usually irrational."""
    while True:
        dn = rng.randint(0, max_degree)
        dd = rng.randint(0, max_degree)
        num = Poly([rng.randint(-bound, bound) for _ in range(dn + 1)], QQ, "x")
        den = Poly([rng.randint(-bound, bound) for _ in range(dd + 1)], QQ, "x")
        if num.is_zero or den.is_zero:
            continue
        f = RatFunc(num, den)
        if not f.is_constant:
            return f
