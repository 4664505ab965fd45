"""Exact scalar fields: the rationals, prime fields F_p and extensions F_q.

Every field object is a *parent*: it coerces raw values into its elements
via ``field(value)`` and exposes ``zero``, ``one`` and ``characteristic``.
Elements are immutable and use Python operators, so the polynomial code
never needs to know which field it is working over.

Rationals are plain :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .errors import DivisionByZero, FieldMismatch, IrreducibleSearchFailed, NotPrime


def is_prime(n: int) -> bool:
    """Deterministic trial division; moduli here are small."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --------------------------------------------------------------------------
# Q
# --------------------------------------------------------------------------


class RationalField:
    """The field Q with elements represented as ``Fraction``."""

    characteristic = 0
    is_finite = False

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, str):
            return parse_rational(value)
        if isinstance(value, int):
            return Fraction(value)
        if hasattr(value, "field") and hasattr(value, "constant_value"):
            return self(value.constant_value())
        raise FieldMismatch(f"cannot coerce {value!r} into Q")

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def pth_root(self, a):
        raise FieldMismatch("p-th roots are only defined in positive characteristic")

    def random_element(self, rng: random.Random, bound: int = 5) -> Fraction:
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def format(self, a: Fraction) -> str:
        return format_rational(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __repr__(self) -> str:
        return "QQ"


QQ = RationalField()


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"``; surrounding whitespace is ignored."""
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            d = int(den)
            if d == 0:
                raise DivisionByZero("zero denominator in rational literal")
            return Fraction(int(num), d)
        return Fraction(int(num))
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None


def format_rational(a: Fraction) -> str:
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"


# --------------------------------------------------------------------------
# F_p
# --------------------------------------------------------------------------


class Fp:
    """Element of a prime field; ``value`` is the canonical residue in [0, p)."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: "PrimeField"):
        self.value = value % field.p
        self.field = field

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.field.p != self.field.p:
                raise FieldMismatch(f"F_{self.field.p} vs F_{other.field.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value + o, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value - o, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.value, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value * o, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.field)

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise DivisionByZero(f"0 has no inverse in F_{self.field.p}")
        return Fp(pow(self.value, -1, self.field.p), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Fp(o, self.field).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.field) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Fp(pow(self.value, k, self.field.p), self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, Fp):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.field.p == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"Fp({self.value}, p={self.field.p})"


class PrimeField:
    """The prime field F_p; use :func:`GF` to obtain cached instances."""

    is_finite = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p

    def __call__(self, value) -> Fp:
        if isinstance(value, Fp):
            if value.field.p != self.p:
                raise FieldMismatch(f"F_{value.field.p} element in F_{self.p}")
            return value
        if isinstance(value, int):
            return Fp(value, self)
        if isinstance(value, Fraction):
            return Fp(value.numerator, self) / value.denominator
        if isinstance(value, str):
            return self(parse_rational(value))
        raise FieldMismatch(f"cannot coerce {value!r} into F_{self.p}")

    @property
    def zero(self) -> Fp:
        return Fp(0, self)

    @property
    def one(self) -> Fp:
        return Fp(1, self)

    def elements(self) -> Iterator[Fp]:
        return (Fp(i, self) for i in range(self.p))

    def pth_root(self, a: Fp) -> Fp:
        # Frobenius is the identity on F_p.
        return self(a)

    def random_element(self, rng: random.Random) -> Fp:
        return Fp(rng.randrange(self.p), self)

    def format(self, a: Fp) -> str:
        return str(a.value)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


# --------------------------------------------------------------------------
# F_q = F_p[y]/(m)
# --------------------------------------------------------------------------


class FqElement:
    """Residue class of a polynomial in y modulo the context's modulus."""

    __slots__ = ("value", "field")

    def __init__(self, value, field: "FqField"):
        self.value = value % field.modulus
        self.field = field

    def _coerce(self, other):
        if isinstance(other, FqElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, (int, Fp)):
            return self.field.coerce_poly(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElement(self.value + o, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElement(self.value - o, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElement(o - self.value, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElement(self.value * o, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FqElement(-self.value, self.field)

    def inverse(self) -> "FqElement":
        from .poly import xgcd

        if self.value.is_zero:
            raise DivisionByZero("0 has no inverse in F_q")
        g, s, _ = xgcd(self.value, self.field.modulus)
        # g is a nonzero constant because the modulus is irreducible
        return FqElement(s * g.lc.inverse(), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FqElement(o, self.field).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElement(o, self.field) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, FqElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fp)):
            return self.value == self.field.coerce_poly(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value.coeffs))

    def __bool__(self) -> bool:
        return not self.value.is_zero

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"FqElement({self.value}, q={self.field.order})"


class FqField:
    """F_q as the quotient F_p[y]/(modulus) for a monic irreducible modulus."""

    is_finite = True

    def __init__(self, p: int, modulus):
        from .poly import Poly

        base = GF(p)
        if not isinstance(modulus, Poly):
            modulus = Poly(modulus, base, "y")
        if modulus.field != base or modulus.deg < 1 or modulus.lc != 1:
            raise ValueError("modulus must be a monic polynomial of positive degree over F_p")
        self.p = p
        self.base = base
        self.modulus = modulus
        self.degree = modulus.deg
        self.order = p**self.degree
        self.characteristic = p

    def coerce_poly(self, value):
        from .poly import Poly

        if isinstance(value, Poly):
            if value.field != self.base:
                raise FieldMismatch("F_q values must be polynomials over F_p")
            return value
        return Poly((self.base(value),), self.base, "y")

    def __call__(self, value) -> FqElement:
        from .poly import Poly

        if isinstance(value, FqElement):
            if value.field != self:
                raise FieldMismatch(f"{value.field!r} element in {self!r}")
            return value
        if isinstance(value, str):
            from .parser import parse_poly

            return FqElement(parse_poly(value, "y", field=self.base), self)
        if isinstance(value, Fraction):
            return FqElement(self.coerce_poly(self.base(value)), self)
        if isinstance(value, (int, Fp, Poly)):
            return FqElement(self.coerce_poly(value), self)
        raise FieldMismatch(f"cannot coerce {value!r} into {self!r}")

    @property
    def zero(self) -> FqElement:
        return self(0)

    @property
    def one(self) -> FqElement:
        return self(1)

    @property
    def gen(self) -> FqElement:
        from .poly import Poly

        return FqElement(Poly.monomial(1, self.base, "y"), self)

    def elements(self) -> Iterator[FqElement]:
        from .poly import Poly

        for coeffs in itertools.product(range(self.p), repeat=self.degree):
            yield FqElement(Poly(coeffs[::-1], self.base, "y"), self)

    def pth_root(self, a: FqElement) -> FqElement:
        # (a^(p^(e-1)))^p = a^q = a
        return self(a) ** (self.p ** (self.degree - 1))

    def random_element(self, rng: random.Random) -> FqElement:
        from .poly import Poly

        coeffs = [rng.randrange(self.p) for _ in range(self.degree)]
        return FqElement(Poly(coeffs, self.base, "y"), self)

    def format(self, a: FqElement) -> str:
        return str(a.value)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FqField)
            and other.p == self.p
            and other.modulus.coeffs == self.modulus.coeffs
        )

    def __hash__(self) -> int:
        return hash(("Fq", self.p, self.modulus.coeffs))

    def __repr__(self) -> str:
        return f"FqField({self.p}, {self.modulus})"


def is_irreducible(f) -> bool:
    """Irreducibility over F_p via gcd(f, y^(p^i) - y) = 1 for i <= deg/2."""
    from .poly import Poly, gcd, powmod

    p = f.field.p
    e = f.deg
    if e < 1:
        return False
    if e == 1:
        return True
    y = Poly.monomial(1, f.field, f.var)
    h = y
    for _ in range(1, e // 2 + 1):
        h = powmod(h, p, f)
        if gcd(f, h - y).deg > 0:
            return False
    return True


def make_fq(p: int, e: int) -> FqField:
    """Return F_{p^e} with the lexicographically first monic irreducible modulus."""
    from .poly import Poly

    if e < 1:
        raise ValueError("extension degree must be >= 1")
    base = GF(p)
    # lower coefficients enumerated from the highest down, smallest first
    for tail in itertools.product(range(p), repeat=e):
        m = Poly(list(tail[::-1]) + [1], base, "y")
        if is_irreducible(m):
            return FqField(p, m)
    raise IrreducibleSearchFailed(f"no irreducible polynomial of degree {e} over F_{p}")
