"""Backend selection: compiled core when available, pure Python otherwise.

Set ``HURWITZ_LAB_PURE=1`` to force the pure backend (used by the
benchmark and the parity tests).
"""

import os

if os.environ.get("HURWITZ_LAB_PURE"):
    from . import purecore as core
else:
    try:
        from . import fastcore as core  # type: ignore[attr-defined]
    except ImportError:
        from . import purecore as core

BACKEND = core.BACKEND
vec_add = core.vec_add
vec_sub = core.vec_sub
vec_neg = core.vec_neg
vec_mul = core.vec_mul
vec_pow = core.vec_pow
vec_inv = core.vec_inv
build_tables = core.build_tables
scan_form = core.scan_form
