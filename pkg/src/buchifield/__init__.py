"""Exact computations around Büchi's n-th power problem over function fields."""

from __future__ import annotations

__version__ = "0.1.0"

from .bounds import bound_E, bound_M, bound_N, bound_disc_zeros, bound_lemma_linear, check_final_inequality
from .buchi import census, exact_powerful_locus, nth_differences, search_integer_buchi, sequence_to_form, theorem_harness
from .fields import GF, QQ, FqField, PrimeField, make_fq
from .funcfield import BuchiForm, ClassKind, FunctionField, ProjPoint, QQx, RatFunc, classify, is_k_powerful, zero_profile
from .geometry import Correspondence, lemma_linear_census, ramification_total, zeuthen_check
from .parser import parse_form, parse_poly, parse_ratfunc
from .poly import Poly, discriminant, gcd, resultant, squarefree_decompose

__all__ = [name for name in dir() if not name.startswith("_")]
