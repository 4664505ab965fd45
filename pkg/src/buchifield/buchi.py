"""Büchi sequences, powerful-value censuses and the exact powerful locus."""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bounds import bound_M, bound_N
from .errors import PreconditionViolated, TheoremViolation, TooShort, VerificationFailed
from .fields import QQ
from .funcfield import (
    BuchiForm,
    ClassKind,
    Classification,
    FunctionField,
    ProjPoint,
    QQx,
    RatFunc,
    classify,
    evaluate,
    is_k_powerful,
    max_powerfulness,
)
from .poly import Poly, discriminant, lcm, resultant, squarefree_decompose
from .roots import split_rational_roots

# --------------------------------------------------------------------------
# difference operators
# --------------------------------------------------------------------------


def nth_differences(u: Sequence, n: int) -> list:
    if n < 0:
        raise ValueError("order must be non-negative")
    if len(u) < n + 1:
        raise TooShort(f"need at least {n + 1} terms for order-{n} differences, got {len(u)}")
    out = list(u)
    for _ in range(n):
        out = [b - a for a, b in zip(out, out[1:])]
    return out


def _binomial_poly(j: int) -> list[Fraction]:
    """Coefficients (lowest first) of C(k - 1, j) as a polynomial in k."""
    coeffs = [Fraction(1)]
    for i in range(j):
        # multiply by (k - 1 - i)
        shifted = [Fraction(0)] + coeffs
        for idx, c in enumerate(coeffs):
            shifted[idx] -= (1 + i) * c
        coeffs = shifted
    fact = math.factorial(j)
    return [c / fact for c in coeffs]


def sequence_to_form(u: Sequence, n: int):
    """Coefficients (a_0, ..., a_{n-1}) with u_k = k^n + sum a_i k^i, or None.

    None means the sequence is not Büchi: its n-th differences are not all n!.
    Coefficients live in the fraction field of the terms' ring.
    """
    diffs = nth_differences(u, n)
    if any(d != math.factorial(n) for d in diffs):
        return None
    newton = [nth_differences(u[: j + 1], j)[0] for j in range(n + 1)]
    coeffs = [0] * (n + 1)
    for j, dj in enumerate(newton):
        for i, b in enumerate(_binomial_poly(j)):
            if b:
                coeffs[i] = coeffs[i] + dj * b
    if coeffs[n] != 1:
        raise VerificationFailed("interpolant is not monic", {"sequence": [str(v) for v in u]})
    a = tuple(coeffs[:n])
    for k, uk in enumerate(u, start=1):
        value = k**n + sum(ai * k**i for i, ai in enumerate(a))
        if value != uk:
            raise VerificationFailed("interpolant misses a term", {"k": k, "term": str(uk)})
    return a


# --------------------------------------------------------------------------
# census
# --------------------------------------------------------------------------


@dataclass
class CensusReport:
    """Powerfulness of F at each tested point.

    ``max_k[point]`` is the largest k with F(point) k-powerful; ``None``
    means F(point) has no zeros at all and is k-powerful for every k.
    """

    form: BuchiForm
    mu: int
    g: int
    tested: list[ProjPoint]
    max_k: dict
    powerful_points: list[tuple[ProjPoint, int | None]]
    degenerate_points: list[ProjPoint]
    classification: Classification
    bound: int
    verdict: str

    def to_json(self) -> dict:
        return {
            "form": self.form.to_json(),
            "mu": self.mu,
            "tested_count": len(self.tested),
            "powerful": [[str(b), k] for b, k in self.powerful_points],
            "powerful_count": len(self.powerful_points),
            "degenerate": [str(b) for b in self.degenerate_points],
            "class": self.classification.kind.value,
            "bound_M": self.bound,
            "verdict": self.verdict,
        }


def census(F: BuchiForm, points: Sequence[ProjPoint], mu: int, g: int = 0) -> CensusReport:
    max_k: dict = {}
    powerful: list = []
    degenerate: list = []
    for b in points:
        value = evaluate(F, b)
        if value.is_zero:
            degenerate.append(b)
            continue
        k = max_powerfulness(value)
        max_k[b] = k
        if k is None or k >= mu:
            powerful.append((b, k))
    cls = classify(F)
    bound = bound_M(F.n, g)
    trivial_branch = cls.kind in (ClassKind.CONSTANT_COEFFICIENTS, ClassKind.POWER_OF_LINEAR)
    verdict = "CONSISTENT" if trivial_branch or len(powerful) < bound else "VIOLATION"
    return CensusReport(F, mu, g, list(points), max_k, powerful, degenerate, cls, bound, verdict)


# --------------------------------------------------------------------------
# exact locus
# --------------------------------------------------------------------------

LAMBDA = "l"


@dataclass
class LocusReport:
    """Affine lambda with F(lambda) k-powerful, for a form outside both theorem branches.

    ``rational_points`` is exact. Irrational candidates are never tested;
    ``residual_degrees`` bounds how many of them there can be.
    """

    form: BuchiForm
    threshold: int
    rational_points: list[Fraction]
    degenerate: list[Fraction]
    candidates: list[Fraction]
    residual: Poly
    residual_degrees: list[int] = field(default_factory=list)

    @property
    def size_bound(self) -> int:
        return len(self.rational_points) + sum(self.residual_degrees)

    def to_json(self) -> dict:
        return {
            "form": self.form.to_json(),
            "threshold": self.threshold,
            "rational_points": [str(r) for r in self.rational_points],
            "degenerate": [str(r) for r in self.degenerate],
            "candidates_checked": len(self.candidates),
            "residual": str(self.residual),
            "residual_degrees": self.residual_degrees,
            "size_bound": self.size_bound,
        }


def _generic_numerator(F: BuchiForm) -> tuple[Poly, Poly, FunctionField]:
    """Return (G, D, Q(l)) with F(l) = G(l, x) / D(x) and G in Q(l)[x]."""
    x = F.field.var
    D = Poly.constant(1, QQ, x)
    for a in F.coeffs:
        D = lcm(D, a.den)
    cs = [(a * D).num for a in F.coeffs] + [D]
    L = FunctionField(QQ, LAMBDA)
    width = max(int(c.deg) for c in cs if not c.is_zero) + 1
    G = Poly(
        [L(Poly([c.coeff(k) for c in cs], QQ, LAMBDA)) for k in range(width)],
        L,
        x,
    )
    return G, D, L


def _numerator_in_lambda(value: RatFunc) -> Poly:
    return value.num


def exact_powerful_locus(F: BuchiForm, threshold: int | None = None) -> LocusReport:
    """All rational lambda with F(lambda) threshold-powerful, plus an irrational bound.

    Outside a finite set of lambda the zero profile of F(lambda) equals the
    generic profile of G(l, x) = D(x) F(l) over Q(l), which is not powerful.
    That finite set is cut out by the leading x-coefficient of G, the
    denominators of its squarefree factors, the x-discriminant of its
    squarefree part Q and Res_x(Q, D).
    """
    k = threshold or F.n
    cls = classify(F)
    if cls.kind is not ClassKind.OTHER:
        raise PreconditionViolated(f"form is {cls.kind.value}; its powerful locus is not finite")
    G, D, L = _generic_numerator(F)
    dec = squarefree_decompose(G)
    inf_order = int(D.deg) - int(G.deg)
    generic = list(dec.multiplicities) + ([inf_order] if inf_order > 0 else [])
    if all(m >= k for m in generic):
        raise TheoremViolation(
            "generic value of the form is powerful, so the locus is infinite",
            {"form": F.to_json(), "generic_multiplicities": generic},
        )

    pieces: list[Poly] = [_numerator_in_lambda(G.lc)]
    Q = Poly.constant(L.one, L, G.var)
    for P, _ in dec.parts:
        Q = Q * P
        for c in P.coeffs:
            pieces.append(c.den)
    if Q.deg >= 2:
        pieces.append(_numerator_in_lambda(discriminant(Q)))
    if D.deg >= 1 and Q.deg >= 1:
        DL = D.map_coeffs(L, L)
        pieces.append(_numerator_in_lambda(resultant(Q, DL)))

    cand = Poly.constant(1, QQ, LAMBDA)
    for piece in pieces:
        if piece.is_zero:
            raise VerificationFailed("candidate polynomial vanished identically", {"form": F.to_json()})
        if piece.deg > 0:
            cand = cand * piece.monic()
    split = split_rational_roots(cand) if cand.deg > 0 else None
    candidates = list(split.rational) if split else []
    residual = split.residual if split else Poly.constant(1, QQ, LAMBDA)

    points, degenerate = [], []
    for lam in candidates:
        value = evaluate(F, ProjPoint.affine(lam))
        if value.is_zero:
            degenerate.append(lam)
        elif is_k_powerful(value, k):
            points.append(lam)
    degrees = [int(residual.deg)] if residual.deg > 0 else []
    return LocusReport(F, k, points, degenerate, candidates, residual, degrees)


# --------------------------------------------------------------------------
# integer search
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class IntegerBuchiSequence:
    roots: tuple[int, ...]
    trivial: bool
    nu: int | None
    capped: bool

    @property
    def squares(self) -> tuple[int, ...]:
        return tuple(r * r for r in self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def to_json(self) -> dict:
        return {
            "roots": list(self.roots),
            "squares": list(self.squares),
            "length": len(self.roots),
            "trivial": self.trivial,
            "nu": self.nu,
            "capped": self.capped,
        }


def trivial_shift(roots: Sequence[int]) -> int | None:
    """Integer nu with roots[i-1]^2 = (i + nu)^2 for every i, else None."""
    x1 = roots[0]
    for nu in sorted({x1 - 1, -x1 - 1}):
        if all(r * r == (i + nu) ** 2 for i, r in enumerate(roots, start=1)):
            return nu
    return None


def extend_seed(x1: int, x2: int, max_length: int) -> tuple[list[int], bool]:
    """Follow u_{i+2} = 2u_{i+1} - u_i + 2 while the terms stay squares."""
    roots = [x1, x2]
    u_prev, u_cur = x1 * x1, x2 * x2
    while len(roots) < max_length:
        u_next = 2 * u_cur - u_prev + 2
        if u_next < 0:
            return roots, False
        r = math.isqrt(u_next)
        if r * r != u_next:
            return roots, False
        roots.append(r)
        u_prev, u_cur = u_cur, u_next
    return roots, True


def _search_shard(args) -> list[IntegerBuchiSequence]:
    x1s, x2_range, min_length, max_length = args
    out = []
    for x1 in x1s:
        u1 = x1 * x1
        for x2 in x2_range:
            u3 = 2 * x2 * x2 - u1 + 2
            if min_length >= 3:
                if u3 < 0:
                    continue
                r = math.isqrt(u3)
                if r * r != u3:
                    continue
            roots, capped = extend_seed(x1, x2, max_length)
            if len(roots) >= min_length:
                nu = trivial_shift(roots)
                out.append(IntegerBuchiSequence(tuple(roots), nu is not None, nu, capped))
    return out


def search_integer_buchi(
    x1_range: range,
    x2_range: range,
    min_length: int,
    max_length: int = 64,
    workers: int = 1,
) -> list[IntegerBuchiSequence]:
    """Every seed (x1, x2) whose forward extension reaches ``min_length`` squares."""
    x1s = list(x1_range)
    if workers <= 1 or len(x1s) < 2:
        found = _search_shard((x1s, x2_range, min_length, max_length))
    else:
        shards = [(x1s[i::workers], x2_range, min_length, max_length) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = [s for part in pool.map(_search_shard, shards) for s in part]
    return sorted(found, key=lambda s: s.roots)


# --------------------------------------------------------------------------
# theorem harness
# --------------------------------------------------------------------------


@dataclass
class HarnessReport:
    n: int
    trials: int
    seed: int
    power_forms: int = 0
    constant_forms: int = 0
    other_forms: int = 0
    power_census_rate: float = 1.0
    max_locus_bound: int = 0
    bound: int = 0
    nonempty_loci: int = 0
    infinity_point_powerful: bool | None = None
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _random_coeff(rng: random.Random, pool: Sequence[RatFunc] | None, nonconstant: bool = False) -> RatFunc:
    while True:
        if pool:
            c = rng.choice(pool)
        else:
            deg = rng.randint(0, 2)
            c = QQx(Poly([rng.randint(-3, 3) for _ in range(deg + 1)], QQ, "x"))
        if not nonconstant or not c.is_constant:
            return c


def _other_form(rng: random.Random, n: int, pool) -> BuchiForm:
    t = Poly.monomial(1, QQx, "t")
    while True:
        style = rng.randrange(3)
        if style == 0:
            F = BuchiForm(n, tuple(_random_coeff(rng, pool) for _ in range(n)))
        elif style == 1:
            # near-power: (t + nu)^(n-1) (t + rho)
            nu = _random_coeff(rng, pool, nonconstant=True)
            rho = _random_coeff(rng, pool)
            F = BuchiForm.from_poly((t + nu) ** (n - 1) * (t + rho))
        else:
            # product of distinct linear forms with polynomial roots
            roots = [_random_coeff(rng, pool) for _ in range(n)]
            f = Poly.constant(1, QQx, "t")
            for r in roots:
                f = f * (t + r)
            F = BuchiForm.from_poly(f)
        if classify(F).kind is ClassKind.OTHER:
            return F


def theorem_harness(
    trials: int,
    n: int,
    seed: int = 0,
    coefficient_pool: Sequence[RatFunc] | None = None,
    lambdas: Sequence = range(-50, 50),
    g: int = 0,
) -> HarnessReport:
    """Generate power, constant and other forms and check each against the theorem."""
    rng = random.Random(seed)
    points = [ProjPoint.affine(Fraction(v)) for v in lambdas]
    bound = bound_N(n, g)
    report = HarnessReport(n=n, trials=trials, seed=seed, bound=bound)
    hits = tested = 0
    for _ in range(trials):
        nu = _random_coeff(rng, coefficient_pool, nonconstant=True)
        F = BuchiForm.power_of_linear(nu, n)
        c = census(F, points, n, g)
        hits += len(c.powerful_points)
        tested += len(points)
        report.power_forms += 1
        if len(c.powerful_points) != len(points):
            raise TheoremViolation("power form not powerful everywhere", {"form": F.to_json()})
        if report.infinity_point_powerful is None:
            report.infinity_point_powerful = bool(census(F, [ProjPoint.infinity()], n, g).powerful_points)

        const = BuchiForm(n, tuple(QQx(rng.randint(-5, 5)) for _ in range(n)))
        if classify(const).kind is not ClassKind.CONSTANT_COEFFICIENTS:
            raise VerificationFailed("constant family misclassified", {"form": const.to_json()})
        report.constant_forms += 1

        other = _other_form(rng, n, coefficient_pool)
        locus = exact_powerful_locus(other)
        report.other_forms += 1
        report.max_locus_bound = max(report.max_locus_bound, locus.size_bound)
        if locus.rational_points:
            report.nonempty_loci += 1
        if locus.size_bound >= bound:
            witness = locus.to_json()
            raise TheoremViolation(f"powerful locus may reach N = {bound}", witness)
        sampled = census(other, points, n, g)
        exact = set(locus.rational_points)
        missing = [b for b, _ in sampled.powerful_points if b.lam not in exact]
        if missing:
            raise VerificationFailed(
                "sampled powerful point missing from the exact locus",
                {"form": other.to_json(), "missing": [str(b) for b in missing]},
            )
    report.power_census_rate = hits / tested if tested else 1.0
    return report
