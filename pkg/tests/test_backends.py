"""Parity between the compiled core and the pure-Python fallback.

The two implement the same interface with independent code paths (the
pure inverse is an extended Euclid, the compiled one a Fermat power), so
agreement on random inputs is a real cross-check, not a tautology.
"""

import random

import pytest

from hurwitz_lab._backend import purecore

try:
    from hurwitz_lab._backend import fastcore
except ImportError:
    fastcore = None

needs_fast = pytest.mark.skipif(fastcore is None,
                                reason="compiled core not built")

CASES = [
    (2, 3, (1, 1, 0, 1)),
    (3, 2, (1, 0, 1)),
    (5, 4, (2, 0, 0, 0, 1)),
    (3, 30, None),   # modulus resolved below
    (19, 15, None),
]


def modulus_for(p, k):
    from hurwitz_lab.gf import _canonical_modulus
    return _canonical_modulus(p, k)


@needs_fast
@pytest.mark.parametrize("p,k,mod", CASES)
def test_vector_ops_agree(p, k, mod):
    mod = mod or modulus_for(p, k)
    rng = random.Random(99)
    for _ in range(40):
        a = tuple(rng.randrange(p) for _ in range(k))
        b = tuple(rng.randrange(p) for _ in range(k))
        assert purecore.vec_mul(a, b, mod, p) == fastcore.vec_mul(a, b, mod, p)
        e = rng.randrange(0, p ** k)
        assert purecore.vec_pow(a, e, mod, p) == fastcore.vec_pow(a, e, mod, p)
        if any(a):
            assert purecore.vec_inv(a, mod, p) == fastcore.vec_inv(a, mod, p)


@needs_fast
@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (5, 2), (7, 1), (2, 1)])
def test_tables_agree(p, k):
    from sympy import factorint
    mod = modulus_for(p, k)
    facs = tuple(sorted(factorint(p ** k - 1)))
    e1, l1 = purecore.build_tables(p, k, mod, facs)
    e2, l2 = fastcore.build_tables(p, k, mod, facs)
    assert list(e1) == list(e2)
    assert list(l1) == list(l2)


@needs_fast
@pytest.mark.parametrize("p,k,n", [(2, 3, 3), (3, 2, 4), (5, 2, 4), (7, 1, 5)])
def test_scan_agree(p, k, n):
    from sympy import factorint
    mod = modulus_for(p, k)
    facs = tuple(sorted(factorint(p ** k - 1)))
    exp, log = purecore.build_tables(p, k, mod, facs)
    one = 1
    terms = [(1, n, 0, one), (0, 1, n, one), (n, 0, 1, one)]
    got1 = sorted(purecore.scan_form(p, k, exp, log, terms))
    got2 = sorted(fastcore.scan_form(p, k, exp, log, terms))
    assert got1 == got2


@needs_fast
def test_inverse_roundtrip_both_backends():
    mod = modulus_for(3, 30)
    rng = random.Random(7)
    one = (1,) + (0,) * 29
    for core in (purecore, fastcore):
        for _ in range(10):
            a = tuple(rng.randrange(3) for _ in range(30))
            if not any(a):
                continue
            inv = core.vec_inv(a, mod, 3)
            assert core.vec_mul(a, inv, mod, 3) == one


@needs_fast
def test_reports_identical_across_backends():
    # end to end: the same run must emit byte-identical JSON on both cores
    import os
    import subprocess
    import sys
    cmd = [sys.executable, "-m", "hurwitz_lab.cli", "weierstrass",
           "--n", "4", "--p", "5", "--scan-k", "4", "--json"]
    compiled = subprocess.run(cmd, capture_output=True, check=True).stdout
    env = dict(os.environ, HURWITZ_LAB_PURE="1")
    pure = subprocess.run(cmd, capture_output=True, check=True,
                          env=env).stdout
    assert compiled == pure and compiled
