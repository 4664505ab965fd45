"""The rational function field K(x), monic forms over it, and powerfulness.

A function f in K(x) is *k-powerful* when every zero of f on the projective
line, the point at infinity included, has multiplicity at least k. Poles
are ignored and k need not be attained.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    CharPUnsupportedShape,
    DivisionByZero,
    FieldMismatch,
    VerificationFailed,
    ZeroFunction,
)
from .fields import QQ
from .poly import Poly, SquarefreeDecomposition, gcd, squarefree_decompose


class RatFunc:
    """Reduced fraction ``num/den`` with ``den`` monic."""

    __slots__ = ("num", "den", "field")

    def __init__(self, num: Poly, den: Poly | None = None, field: "FunctionField | None" = None):
        if den is None:
            den = Poly.constant(num.field.one, num.field, num.var)
        num._check(den)
        if den.is_zero:
            raise DivisionByZero("rational function with zero denominator")
        if den.deg > 0 and not num.is_zero:
            g = gcd(num, den)
            if g.deg > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        if num.is_zero:
            den = Poly.constant(num.field.one, num.field, num.var)
        elif den.lc != 1:
            inv = num.field.one / den.lc
            num, den = num * inv, den * inv
        self.num = num
        self.den = den
        self.field = field or FunctionField(num.field, num.var)

    @classmethod
    def _raw(cls, num: Poly, den: Poly, field: "FunctionField") -> "RatFunc":
        obj = object.__new__(cls)
        obj.num, obj.den, obj.field = num, den, field
        return obj

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.deg <= 0 and self.den.deg == 0

    @property
    def is_polynomial(self) -> bool:
        return self.den.deg == 0

    def constant_value(self):
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self.num.coeff(0)

    @property
    def degree(self) -> int:
        """Degree of the map x -> f(x) on the projective line."""
        return max(self.num.deg, self.den.deg, 0)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        try:
            return self.field(other)
        except FieldMismatch:
            return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den.deg == 0 and o.den.deg == 0:
            return RatFunc._raw(self.num + o.num, self.den, self.field)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den, self.field)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, self.field)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den.deg == 0 and o.den.deg == 0:
            return RatFunc._raw(self.num * o.num, self.den, self.field)
        return RatFunc(self.num * o.num, self.den * o.den, self.field)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero:
            raise DivisionByZero("zero function has no inverse")
        return RatFunc(self.den, self.num, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.num**k, self.den**k, self.field)

    def __call__(self, point):
        d = self.den(point)
        if not d:
            raise DivisionByZero(f"{self} has a pole at {point}")
        return self.num(point) / d

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        try:
            o = self.field(other)
        except (FieldMismatch, TypeError, ValueError):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num.coeffs, self.den.coeffs))

    def __bool__(self) -> bool:
        return not self.num.is_zero

    def __str__(self) -> str:
        if self.den.deg == 0:
            return str(self.num)
        num = str(self.num)
        if len(self.num.coeffs) - sum(1 for c in self.num.coeffs if not c) > 1:
            num = f"({num})"
        den = str(self.den)
        if self.den.deg == 1 and self.den.coeff(0) == 0:
            return f"{num}/{den}"
        return f"{num}/({den})"

    def __repr__(self) -> str:
        return f"RatFunc('{self}')"


class FunctionField:
    """K(var) as a field parent; elements are :class:`RatFunc`."""

    def __init__(self, base=QQ, var: str = "x"):
        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        self.is_finite = False

    def __call__(self, value) -> RatFunc:
        if isinstance(value, RatFunc):
            if value.field != self:
                raise FieldMismatch(f"{value.field!r} element in {self!r}")
            return value
        if isinstance(value, Poly):
            if value.field != self.base or value.var != self.var:
                raise FieldMismatch(f"polynomial over {value.field!r} in {value.var}")
            return RatFunc._raw(value, self._one_poly(), self)
        if isinstance(value, str):
            from .parser import parse_ratfunc

            return parse_ratfunc(value, self.var, field=self.base)
        return RatFunc._raw(Poly.constant(value, self.base, self.var), self._one_poly(), self)

    def _one_poly(self) -> Poly:
        return Poly._raw([self.base.one], self.base, self.var)

    @property
    def zero(self) -> RatFunc:
        return RatFunc._raw(Poly.zero(self.base, self.var), self._one_poly(), self)

    @property
    def one(self) -> RatFunc:
        return RatFunc._raw(self._one_poly(), self._one_poly(), self)

    @property
    def gen(self) -> RatFunc:
        return self(Poly.monomial(1, self.base, self.var))

    def pth_root(self, a: RatFunc) -> RatFunc:
        from .poly import _pth_root_poly

        if self.characteristic == 0:
            raise FieldMismatch("p-th roots need positive characteristic")
        try:
            return RatFunc(_pth_root_poly(a.num), _pth_root_poly(a.den), self)
        except CharPUnsupportedShape:
            raise CharPUnsupportedShape(f"{a} is not a p-th power in {self!r}") from None

    def random_element(self, rng: random.Random, degree: int = 2, bound: int = 3) -> RatFunc:
        coeffs = [rng.randint(-bound, bound) for _ in range(rng.randint(0, degree) + 1)]
        return self(Poly(coeffs, self.base, self.var))

    def format(self, a: RatFunc) -> str:
        return str(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, FunctionField) and other.base == self.base and other.var == self.var

    def __hash__(self) -> int:
        return hash(("FunctionField", self.base, self.var))

    def __repr__(self) -> str:
        return f"FunctionField({self.base!r}, {self.var!r})"


QQx = FunctionField(QQ, "x")


# --------------------------------------------------------------------------
# zeros and powerfulness
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroProfile:
    """Zeros of a nonzero rational function on P^1 with multiplicities."""

    finite_part: SquarefreeDecomposition
    order_at_infinity: int

    @property
    def multiplicities(self) -> list[int]:
        ms = list(self.finite_part.multiplicities)
        if self.order_at_infinity > 0:
            ms.append(self.order_at_infinity)
        return ms

    @property
    def has_zeros(self) -> bool:
        return bool(self.multiplicities)

    @property
    def min_multiplicity(self) -> int | None:
        """Largest k for which the function is k-powerful; None means every k."""
        return min(self.multiplicities, default=None)

    @property
    def total_degree(self) -> int:
        return self.finite_part.degree_sum() + max(0, self.order_at_infinity)

    def to_json(self) -> dict:
        return {
            "profile": [[str(g), m] for g, m in self.finite_part.parts],
            "order_at_infinity": self.order_at_infinity,
        }


def zero_profile(f: RatFunc) -> ZeroProfile:
    if f.is_zero:
        raise ZeroFunction("the zero function has no zero profile")
    finite = squarefree_decompose(f.num)
    return ZeroProfile(finite, max(0, f.den.deg - f.num.deg))


def is_k_powerful(f: RatFunc, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be a positive integer")
    return all(m >= k for m in zero_profile(f).multiplicities)


def max_powerfulness(f: RatFunc) -> int | None:
    """The largest k with ``f`` k-powerful, or None if ``f`` has no zeros."""
    return zero_profile(f).min_multiplicity


# --------------------------------------------------------------------------
# forms and points
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^1(K) normalised to [lam : 1] or to [1 : 0]."""

    s: object
    t: object

    @classmethod
    def affine(cls, lam) -> "ProjPoint":
        return cls(lam, 1)

    @classmethod
    def infinity(cls) -> "ProjPoint":
        return cls(1, 0)

    @classmethod
    def from_coords(cls, s0, t0) -> "ProjPoint":
        if not s0 and not t0:
            raise ValueError("[0:0] is not a projective point")
        if not t0:
            return cls.infinity()
        if isinstance(s0, int) and isinstance(t0, int):
            return cls(Fraction(s0, t0), 1)
        return cls(s0 / t0, 1)

    @property
    def is_infinity(self) -> bool:
        return not self.t

    @property
    def lam(self):
        if self.is_infinity:
            raise ValueError("the point at infinity has no affine coordinate")
        return self.s

    def __str__(self) -> str:
        return "[1:0]" if self.is_infinity else f"[{self.s}:1]"


@dataclass(frozen=True)
class BuchiForm:
    """Monic ``t^n + a_{n-1} t^{n-1} + ... + a_0`` with coefficients in K(x)."""

    n: int
    coeffs: tuple
    field: FunctionField = QQx

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("forms need degree n >= 2")
        if len(self.coeffs) != self.n:
            raise ValueError(f"expected {self.n} coefficients a_0..a_{self.n - 1}")
        object.__setattr__(self, "coeffs", tuple(self.field(a) for a in self.coeffs))

    @classmethod
    def from_poly(cls, f: Poly) -> "BuchiForm":
        if f.lc != 1:
            raise ValueError("form must be monic in t")
        return cls(int(f.deg), f.coeffs[:-1], f.field)

    @classmethod
    def power_of_linear(cls, nu, n: int, field: FunctionField = QQx) -> "BuchiForm":
        t = Poly.monomial(1, field, "t")
        return cls.from_poly((t + field(nu)) ** n)

    def as_poly(self, var: str = "t") -> Poly:
        return Poly._raw(list(self.coeffs) + [self.field.one], self.field, var)

    @property
    def has_constant_coefficients(self) -> bool:
        return all(a.is_constant for a in self.coeffs)

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [str(a) for a in self.coeffs]}

    def __str__(self) -> str:
        return str(self.as_poly())


def evaluate(F: BuchiForm, b: ProjPoint) -> RatFunc:
    """F(s0, t0) = s0^n + a_{n-1} s0^{n-1} t0 + ... + a_0 t0^n."""
    return evaluate_coords(F, b.s, b.t)


def evaluate_coords(F: BuchiForm, s0, t0) -> RatFunc:
    K = F.field.base
    s0, t0 = K(s0), K(t0)
    if not t0:
        return F.field(s0**F.n)
    acc = F.field(s0**F.n)
    for i, a in enumerate(F.coeffs):
        acc = acc + a * (s0**i * t0 ** (F.n - i))
    return acc


def multiplicity_profile(F: BuchiForm) -> SquarefreeDecomposition:
    """Squarefree decomposition of F in t over K(x)."""
    return squarefree_decompose(F.as_poly())


class ClassKind(enum.Enum):
    CONSTANT_COEFFICIENTS = "ConstantCoefficients"
    POWER_OF_LINEAR = "PowerOfLinear"
    OTHER = "Other"


@dataclass(frozen=True)
class Classification:
    kind: ClassKind
    nu: RatFunc | None = None
    max_multiplicity: int | None = None

    def to_json(self) -> dict:
        out = {"class": self.kind.value}
        if self.nu is not None:
            out["nu"] = str(self.nu)
        if self.max_multiplicity is not None:
            out["max_multiplicity"] = self.max_multiplicity
        return out


def power_of_linear_root(F: BuchiForm) -> RatFunc | None:
    """Return nu with F = (t + nu)^n, or None."""
    if F.field.characteristic and F.n % F.field.characteristic == 0:
        return None
    nu = F.coeffs[-1] / F.n
    target = BuchiForm.power_of_linear(nu, F.n, F.field)
    return nu if target.coeffs == F.coeffs else None


def classify(F: BuchiForm) -> Classification:
    nu = power_of_linear_root(F)
    max_mult = None
    if F.field.characteristic == 0:
        max_mult = multiplicity_profile(F).max_multiplicity
        if (nu is not None) != (max_mult == F.n):
            raise VerificationFailed(
                "coefficient test and multiplicity profile disagree",
                {"form": F.to_json(), "nu": str(nu), "max_multiplicity": max_mult},
            )
    if F.has_constant_coefficients:
        return Classification(ClassKind.CONSTANT_COEFFICIENTS, None, max_mult)
    if nu is not None:
        return Classification(ClassKind.POWER_OF_LINEAR, nu, max_mult)
    return Classification(ClassKind.OTHER, None, max_mult)


def form_from_coeffs(coeffs: Sequence, field: FunctionField = QQx) -> BuchiForm:
    return BuchiForm(len(coeffs), tuple(coeffs), field)


def random_form(rng: random.Random, n: int, degree: int = 2, bound: int = 3,
                field: FunctionField = QQx) -> BuchiForm:
    return BuchiForm(n, tuple(field.random_element(rng, degree, bound) for _ in range(n)), field)


def lift_points(values: Iterable) -> list[ProjPoint]:
    return [ProjPoint.affine(QQ(v)) for v in values]
