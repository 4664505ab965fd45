from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from buchifield.fields import QQ
from buchifield.poly import Poly

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_int = st.integers(-6, 6)
rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


def qq_polys(max_deg: int = 5, var: str = "x", elements=rationals):
    return st.lists(elements, min_size=0, max_size=max_deg + 1).map(lambda cs: Poly(cs, QQ, var))


def nonzero_qq_polys(max_deg: int = 5, var: str = "x"):
    return qq_polys(max_deg, var).filter(lambda f: not f.is_zero)
