"""Closed-form constants from the function-field Büchi theorem.

All functions are exact; the only non-integer quantity (|B| * m / mu) is
handled with ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import DomainError


def _central(n: int) -> int:
    return comb(3 * n - 1, n)


def bound_M(n: int, g: int = 0) -> int:
    """Minimum size of the point set B: 2n(n+1)(g + n*C(3n-1, n))."""
    if n < 2 or g < 0:
        raise DomainError(f"need n >= 2 and g >= 0, got n={n}, g={g}")
    return 2 * n * (n + 1) * (g + n * _central(n))


def bound_N(n: int, g: int = 0) -> int:
    """Threshold for the affine form of the theorem; taken equal to ``bound_M``."""
    return bound_M(n, g)


def bound_lemma_linear(g: int = 0) -> int:
    """Points b where s + c*t has only multiple zeros: at most 4 + 4g."""
    if g < 0:
        raise DomainError("genus must be >= 0")
    return 4 + 4 * g


def bound_disc_zeros(v: int, d: int) -> int:
    if v < 1 or d < 1:
        raise DomainError(f"need v >= 1 and d >= 1, got v={v}, d={d}")
    return _central(v) * (2 * v - 2) * d


def bound_E(n: int, d: int) -> int:
    if n < 2 or d < 1:
        raise DomainError(f"need n >= 2 and d >= 1, got n={n}, d={d}")
    return bound_disc_zeros(n, d) + 2 * d


def final_inequality_rhs(m: int, mu: int, n: int, g: int, B_size: int) -> Fraction:
    return Fraction(B_size * m, mu) + 2 * n * g + 2 * n * n * _central(n)


def check_final_inequality(m: int, mu: int, n: int, g: int, B_size: int) -> bool:
    """Evaluate |B| < |B| m/mu + 2ng + 2n^2 C(3n-1, n) exactly."""
    if not (1 <= m <= n <= mu) or g < 0 or B_size < 0:
        raise DomainError(f"need 1 <= m <= n <= mu, g >= 0, |B| >= 0; got {m}, {n}, {mu}, {g}, {B_size}")
    return B_size < final_inequality_rhs(m, mu, n, g, B_size)


def case_bound_m_below_n(n: int, g: int) -> int:
    """Upper bound on |B| forced when max multiplicity m < n."""
    return 2 * n * n * g + 2 * n**3 * _central(n)


def case_bound_n_below_mu(n: int, g: int) -> int:
    """Upper bound on |B| forced when n < mu."""
    return 2 * n * (n + 1) * g + 2 * n * n * (n + 1) * _central(n)


def contradiction_replay(n: int, g: int, mu_max: int | None = None) -> list[dict]:
    """Run every (m, mu) branch with m < n <= mu or m <= n < mu at |B| = M(n, g).

    Each row records whether the final inequality fails (the contradiction)
    and whether the case bound on |B| is at most M.
    """
    M = bound_M(n, g)
    mu_max = mu_max or 2 * n + 2
    rows = []
    for mu in range(n, mu_max + 1):
        for m in range(1, n + 1):
            if not (m < n or n < mu):
                continue
            case = "m<n" if m < n else "n<mu"
            case_bound = case_bound_m_below_n(n, g) if m < n else case_bound_n_below_mu(n, g)
            holds = check_final_inequality(m, mu, n, g, M)
            rows.append(
                {
                    "n": n,
                    "g": g,
                    "m": m,
                    "mu": mu,
                    "case": case,
                    "B_size": M,
                    "inequality_holds": holds,
                    "case_bound": case_bound,
                    "contradiction": (not holds) and case_bound <= M,
                }
            )
    return rows


def bound_table(ns, gs) -> list[dict]:
    return [
        {
            "n": n,
            "g": g,
            "M": bound_M(n, g),
            "N": bound_N(n, g),
            "lemma_linear": bound_lemma_linear(g),
            "disc_zeros_d1": bound_disc_zeros(n, 1),
            "E_d1": bound_E(n, 1),
        }
        for n in ns
        for g in gs
    ]
