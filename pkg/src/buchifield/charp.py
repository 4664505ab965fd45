"""The characteristic-p family that only takes square values on F_q.

Over F_p(x) with p odd and q = p^e, let A = (x^q + x)/2 and B = (x^q - x)/2.
Then F(t) = (t + A)^2 - B^2 = (t + x^q)(t + x), and for lam in F_q the
Frobenius identity lam^q = lam gives F(lam) = (lam + x)^(q + 1), a square
because q + 1 is even. F is not (t + nu)^2, so the characteristic-zero
theorem has no analogue here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import EvenCharacteristic, NotPrime, VerificationFailed
from .fields import GF, FqField, is_prime, make_fq
from .funcfield import BuchiForm, FunctionField, power_of_linear_root, zero_profile
from .poly import Poly, discriminant, squarefree_decompose


@dataclass(frozen=True)
class CharPWitness:
    p: int
    e: int
    q: int
    form: BuchiForm
    half_sum: object  # (x^q + x)/2 in F_p(x)
    half_diff: object  # (x^q - x)/2 in F_p(x)

    @property
    def factors(self) -> tuple[str, str]:
        return (f"t + x^{self.q}", "t + x")

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "q": self.q,
            "form": self.form.to_json(),
            "completed_square": f"(t + {self.half_sum})^2 - ({self.half_diff})^2",
            "factors": list(self.factors),
        }


def build_witness(p: int, e: int = 1) -> CharPWitness:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristic("the construction divides by 2")
    if e < 1:
        raise ValueError("e must be >= 1")
    q = p**e
    Fp = GF(p)
    K = FunctionField(Fp, "x")
    x = K.gen
    half = Fp(2).inverse()
    A = (x**q + x) * half
    B = (x**q - x) * half
    t = Poly.monomial(1, K, "t")
    F = (t + A) ** 2 - Poly.constant(B * B, K, "t")
    factored = (t + x**q) * (t + x)
    if F != factored:
        raise VerificationFailed("completed square does not factor", {"p": p, "e": e})
    return CharPWitness(p, e, q, BuchiForm.from_poly(F), A, B)


def _value_over(w: CharPWitness, lam, Fq: FqField) -> Poly:
    """F(lam) as a polynomial in x over the field containing lam."""
    coeffs = []
    for a in w.form.coeffs:
        if not a.is_polynomial:
            raise VerificationFailed("witness coefficients must be polynomials", w.to_json())
        coeffs.append(a.num.map_coeffs(lambda c: Fq(int(c)), Fq, "x"))
    acc = Poly.monomial(0, Fq, "x", coeff=lam * lam)
    for i, a in enumerate(coeffs):
        acc = acc + a * (lam**i)
    return acc


@dataclass
class VerificationReport:
    p: int
    q: int
    checked: int = 0
    witnesses: list = field(default_factory=list)
    passed: bool = True

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "checked": self.checked, "passed": self.passed,
                "witnesses": self.witnesses}


def verify_all_squares(w: CharPWitness) -> VerificationReport:
    """Check F(lam) = (lam + x)^(q+1) = ((lam + x)^((q+1)/2))^2 for every lam in F_q."""
    Fq = make_fq(w.p, w.e)
    q = Fq.order
    if (q + 1) % 2:
        raise VerificationFailed("q + 1 is odd", {"q": q})
    report = VerificationReport(w.p, q)
    for lam in Fq.elements():
        if lam**q != lam:
            raise VerificationFailed("Frobenius identity fails", {"lambda": str(lam)})
        value = _value_over(w, lam, Fq)
        linear = Poly([lam, Fq.one], Fq, "x")
        root = linear ** ((q + 1) // 2)
        if value != linear ** (q + 1) or root * root != value:
            raise VerificationFailed(
                "value is not the expected square", {"lambda": str(lam), "value": str(value)}
            )
        report.checked += 1
        report.witnesses.append({"lambda": str(lam), "value": str(value), "square_root": str(root)})
    return report


def verify_nondegenerate(form) -> bool:
    """True iff disc_t(F) != 0 and some coefficient of F is non-constant."""
    F = form.form if isinstance(form, CharPWitness) else form
    disc = discriminant(F.as_poly())
    return (not disc.is_zero) and not F.has_constant_coefficients


def not_power_of_linear(form) -> bool:
    F = form.form if isinstance(form, CharPWitness) else form
    return power_of_linear_root(F) is None


def probe_outside(w: CharPWitness, samples: int = 8, seed: int = 0) -> list[dict]:
    """Sample lam in F_{p^(2e)} outside F_q and record the zero multiplicities of F(lam).

    Each such value is (lam + x)(x^q + lam); the first factor is a simple
    zero, so F(lam) is not 2-powerful.
    """
    big = make_fq(w.p, 2 * w.e)
    rng = random.Random(seed)
    q = w.q
    out = []
    seen = set()
    tries = 0
    while len(out) < samples and tries < 50 * samples:
        tries += 1
        lam = big.random_element(rng)
        if lam**q == lam or lam in seen:
            continue
        seen.add(lam)
        value = _value_over(w, lam, big)
        dec = squarefree_decompose(value, strict=False)
        mults = list(dec.multiplicities)
        out.append(
            {
                "lambda": str(lam),
                "multiplicities": mults,
                "two_powerful": min(mults) >= 2,
            }
        )
    return out
