"""Dense univariate polynomials over an exact field.

Coefficients are stored lowest degree first and are elements of ``field``
(any parent from :mod:`buchifield.fields`, or a rational function field).
The zero polynomial has degree ``NEG_INF`` (``float('-inf')``), so
``deg(a*b) == deg(a) + deg(b)`` and ``deg(a+b) <= max(deg(a), deg(b))``
hold without special cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd
from math import lcm as ilcm
from typing import Iterable, Sequence

from .errors import (
    CharPUnsupportedShape,
    DegreeTooSmall,
    DivisionByZero,
    FieldMismatch,
    ZeroPolynomial,
)
from .fields import QQ

NEG_INF = float("-inf")


class Poly:
    __slots__ = ("coeffs", "field", "var")

    def __init__(self, coeffs: Iterable, field, var: str = "x"):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.field = field
        self.var = var

    @classmethod
    def _raw(cls, coeffs: list, field, var: str) -> "Poly":
        # coefficients are trusted to be field elements already
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        obj = object.__new__(cls)
        obj.coeffs = tuple(coeffs)
        obj.field = field
        obj.var = var
        return obj

    @classmethod
    def zero(cls, field, var: str = "x") -> "Poly":
        return cls._raw([], field, var)

    @classmethod
    def constant(cls, c, field, var: str = "x") -> "Poly":
        return cls._raw([field(c)], field, var)

    @classmethod
    def monomial(cls, k: int, field, var: str = "x", coeff=1) -> "Poly":
        return cls._raw([field.zero] * k + [field(coeff)], field, var)

    # -- basic accessors ----------------------------------------------------

    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def constant_value(self):
        if len(self.coeffs) > 1:
            raise ValueError(f"{self} is not constant")
        return self.coeff(0)

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        inv = self.field.one / self.lc
        return Poly._raw([c * inv for c in self.coeffs], self.field, self.var)

    def derivative(self) -> "Poly":
        return Poly._raw(
            [c * k for k, c in enumerate(self.coeffs) if k > 0], self.field, self.var
        )

    def __call__(self, point):
        acc = self.field.zero if not isinstance(point, Poly) else Poly.zero(point.field, point.var)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def compose(self, other: "Poly") -> "Poly":
        self._check(other)
        acc = Poly.zero(self.field, self.var)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def map_coeffs(self, fn, field, var: str | None = None) -> "Poly":
        return Poly([fn(c) for c in self.coeffs], field, var or self.var)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly"):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if other.var != self.var:
            raise FieldMismatch(f"variable {self.var} vs {other.var}")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(other, self.field, self.var)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except FieldMismatch:
            if isinstance(other, Poly):
                raise
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(out, self.field, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs], self.field, self.var)

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except FieldMismatch:
            if isinstance(other, Poly):
                raise
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                c = self.field(other)
            except FieldMismatch:
                return NotImplemented
            return Poly._raw([a * c for a in self.coeffs], self.field, self.var)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.field, self.var)
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Poly._raw(out, self.field, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Poly.constant(self.field.one, self.field, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other):
        o = self._lift(other)
        if o.is_zero:
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(o.coeffs) - 1
        if len(rem) - 1 < db:
            return Poly.zero(self.field, self.var), self
        inv = self.field.one / o.lc
        quot = [self.field.zero] * (len(rem) - db)
        bc = o.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c * inv
            quot[k - db] = q
            for j in range(db + 1):
                rem[k - db + j] = rem[k - db + j] - q * bc[j]
        return Poly._raw(quot, self.field, self.var), Poly._raw(rem[:db], self.field, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __truediv__(self, other):
        # division by a scalar only
        if isinstance(other, Poly):
            return self.exact_div(other)
        c = self.field(other)
        if not c:
            raise DivisionByZero("polynomial division by zero scalar")
        inv = self.field.one / c
        return Poly._raw([a * inv for a in self.coeffs], self.field, self.var)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        try:
            return self.coeffs == Poly.constant(other, self.field, self.var).coeffs
        except (FieldMismatch, TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- printing -----------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly('{self}', var={self.var!r})"


def _format_coeff(field, c) -> tuple[bool, str]:
    """Return (negative, text) for a coefficient; text has no leading sign."""
    fmt = getattr(field, "format", str)
    text = fmt(c)
    negative = False
    if text.startswith("-") and not _has_top_level_sum(text[1:]):
        return True, text[1:]
    if _has_top_level_sum(text):
        text = f"({text})"
    return negative, text


def _has_top_level_sum(text: str) -> bool:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return True
    return False


def format_poly(f: Poly) -> str:
    if f.is_zero:
        return "0"
    parts: list[str] = []
    for k in range(f.deg, -1, -1):
        c = f.coeffs[k]
        if not c:
            continue
        negative, text = _format_coeff(f.field, c)
        if k == 0:
            mono = ""
        elif k == 1:
            mono = f.var
        else:
            mono = f"{f.var}^{k}"
        if mono and text == "1":
            term = mono
        elif mono:
            term = f"{text}*{mono}"
        else:
            term = text
        if not parts:
            parts.append(f"-{term}" if negative else term)
        else:
            parts.append(f" - {term}" if negative else f" + {term}")
    return "".join(parts)


# --------------------------------------------------------------------------
# gcd and friends
# --------------------------------------------------------------------------


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    a._check(b)
    if a.field is QQ and not a.is_zero and not b.is_zero:
        return _gcd_qq(a, b)
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def _primitive(cs: list[int]) -> list[int]:
    g = 0
    for c in cs:
        g = igcd(g, c)
        if g == 1:
            return cs
    return [c // g for c in cs] if g else cs


def _to_int(f: Poly) -> list[int]:
    den = 1
    for c in f.coeffs:
        den = ilcm(den, c.denominator)
    return _primitive([int(c * den) for c in f.coeffs])


def _gcd_qq(a: Poly, b: Poly) -> Poly:
    # primitive pseudo-remainder sequence over Z keeps coefficients small
    x, y = _to_int(a), _to_int(b)
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = x[:]
        lb = y[-1]
        while len(r) >= len(y):
            c = r[-1]
            shift = len(r) - len(y)
            r = [v * lb for v in r]
            for i, bc in enumerate(y):
                r[shift + i] -= c * bc
            while r and r[-1] == 0:
                r.pop()
            if not r:
                break
        x, y = y, _primitive(r)
    lc = x[-1]
    return Poly._raw([Fraction(c, lc) for c in x], a.field, a.var)


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g and g monic (or zero)."""
    a._check(b)
    one = Poly.constant(a.field.one, a.field, a.var)
    zero = Poly.zero(a.field, a.var)
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    inv = a.field.one / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero or b.is_zero:
        return Poly.zero(a.field, a.var)
    return (a * b).exact_div(gcd(a, b)).monic()


def powmod(f: Poly, k: int, m: Poly) -> Poly:
    result = Poly.constant(f.field.one, f.field, f.var) % m
    base = f % m
    while k:
        if k & 1:
            result = (result * base) % m
        k >>= 1
        if k:
            base = (base * base) % m
    return result


# --------------------------------------------------------------------------
# squarefree decomposition
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """``unit * prod(factor ** mult)`` with monic, squarefree, coprime factors."""

    parts: tuple[tuple[Poly, int], ...]
    unit: object

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.parts)

    @property
    def max_multiplicity(self) -> int:
        return max(self.multiplicities, default=0)

    @property
    def min_multiplicity(self) -> int:
        return min(self.multiplicities, default=0)

    def reconstruct(self) -> Poly:
        if not self.parts:
            raise ValueError("empty decomposition has no variable; use unit directly")
        f0 = self.parts[0][0]
        acc = Poly.constant(self.unit, f0.field, f0.var)
        for g, m in self.parts:
            acc = acc * g**m
        return acc

    def degree_sum(self) -> int:
        return sum(g.deg * m for g, m in self.parts)


def _pth_root_poly(f: Poly) -> Poly:
    p = f.field.characteristic
    cs = f.coeffs
    if any(cs[k] for k in range(len(cs)) if k % p):
        raise CharPUnsupportedShape("derivative vanishes but polynomial is not a p-th power")
    return Poly._raw([f.field.pth_root(cs[k]) for k in range(0, len(cs), p)], f.field, f.var)


def _merge(parts: list[tuple[Poly, int]]) -> tuple[tuple[Poly, int], ...]:
    merged: dict[int, Poly] = {}
    for g, m in parts:
        merged[m] = merged[m] * g if m in merged else g
    return tuple((merged[m].monic(), m) for m in sorted(merged))


def _yun(f: Poly) -> list[tuple[Poly, int]]:
    fp = f.derivative()
    b = gcd(f, fp)
    c = f.exact_div(b)
    d = fp.exact_div(b) - c.derivative()
    out = []
    i = 1
    while c.deg > 0:
        a = gcd(c, d)
        if a.deg > 0:
            out.append((a, i))
        c = c.exact_div(a)
        d = d.exact_div(a) - c.derivative()
        i += 1
    return out


def _sqf_charp(f: Poly, strict: bool) -> list[tuple[Poly, int]]:
    p = f.field.characteristic
    out = []
    fp = f.derivative()
    if fp.is_zero:
        c = f
    else:
        c = gcd(f, fp)
        w = f.exact_div(c)
        i = 1
        while w.deg > 0:
            y = gcd(w, c)
            z = w.exact_div(y)
            if z.deg > 0:
                out.append((z, i))
            i += 1
            w = y
            c = c.exact_div(y)
    if c.deg > 0:
        if strict:
            raise CharPUnsupportedShape(f"{f} has a p-th power part (p = {p})")
        root = _pth_root_poly(c)
        out.extend((g, m * p) for g, m in _sqf_charp(root.monic(), strict))
    return out


def squarefree_decompose(f: Poly, strict: bool = False) -> SquarefreeDecomposition:
    """Squarefree decomposition; Yun's recursion in characteristic 0."""
    if f.is_zero:
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    unit = f.lc
    g = f.monic()
    if g.deg == 0:
        return SquarefreeDecomposition((), unit)
    if f.field.characteristic == 0:
        parts = _yun(g)
    else:
        parts = _sqf_charp(g, strict)
    return SquarefreeDecomposition(_merge(parts), unit)


def squarefree_part(f: Poly) -> Poly:
    """Product of the distinct monic irreducible factors of ``f``."""
    dec = squarefree_decompose(f)
    acc = Poly.constant(f.field.one, f.field, f.var)
    for g, _ in dec.parts:
        acc = acc * g
    return acc


def distinct_root_count(f: Poly) -> int:
    if f.is_zero:
        raise ZeroPolynomial("the zero polynomial has every point as a root")
    if f.field.characteristic == 0:
        return f.exact_div(gcd(f, f.derivative())).deg
    return sum(g.deg for g, _ in squarefree_decompose(f).parts)


# --------------------------------------------------------------------------
# resultants
# --------------------------------------------------------------------------


def prem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder of ``lc(b)^(deg a - deg b + 1) * a`` by ``b``."""
    delta = a.deg - b.deg
    if delta < 0:
        return a
    return (a * b.lc ** (delta + 1)) % b


def resultant(a: Poly, b: Poly):
    """Resultant via the subresultant pseudo-remainder sequence."""
    a._check(b)
    field = a.field
    if a.is_zero or b.is_zero:
        return field.zero
    s = field.one
    if a.deg < b.deg:
        a, b = b, a
        if a.deg % 2 and b.deg % 2:
            s = -s
    g = field.one
    h = field.one
    while b.deg > 0:
        delta = a.deg - b.deg
        if a.deg % 2 and b.deg % 2:
            s = -s
        r = prem(a, b)
        a = b
        b = r / (g * h**delta)
        g = a.lc
        if delta == 0:
            pass
        else:
            h = g**delta / h ** (delta - 1)
        if b.is_zero:
            return field.zero
    da = a.deg
    h = b.lc**da / h ** (da - 1) if da >= 1 else field.one
    return s * h


def discriminant(f: Poly):
    v = f.deg
    if v < 1:
        raise DegreeTooSmall("discriminant needs degree >= 1")
    sign = -1 if (v * (v - 1) // 2) % 2 else 1
    return resultant(f, f.derivative()) * sign / f.lc


def poly_from_roots(roots: Sequence, field, var: str = "x") -> Poly:
    acc = Poly.constant(field.one, field, var)
    for r in roots:
        acc = acc * Poly([-field(r), field.one], field, var)
    return acc
