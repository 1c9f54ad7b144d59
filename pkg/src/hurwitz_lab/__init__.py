"""Verifiable finite-field toolkit for Hurwitz-type plane curves.

Closed-form constructions (inflection point sets, automorphism groups,
quotient genera, Lucas-polynomial maximal curves) are computed over
explicit fields GF(p^k) and cross-checked against brute-force scans.
"""

from ._backend import BACKEND as backend_name
from .gf import FieldCtx, Fe, embed, make_field, nth_roots_of_unity, roots_of
from .hurwitz import HurwitzSpec, verify_weierstrass, weierstrass_closed_form

__version__ = "0.1.0"

__all__ = [
    "backend_name", "__version__",
    "FieldCtx", "Fe", "make_field", "embed", "nth_roots_of_unity", "roots_of",
    "HurwitzSpec", "weierstrass_closed_form", "verify_weierstrass",
]
