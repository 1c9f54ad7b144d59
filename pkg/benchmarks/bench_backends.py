#!/usr/bin/env python3
"""Benchmark: compiled core vs pure-Python fallback on the hot kernels.

Run from the repository root:

    python benchmarks/bench_backends.py

The hot paths are (a) coefficient-vector multiplication and inversion in
big extension fields such as GF(3^30), used when materializing inflection
sets, and (b) the full projective plane scan over small fields, used by
every brute-force cross-check.
"""

import time

from sympy import factorint

from hurwitz_lab._backend import purecore

try:
    from hurwitz_lab._backend import fastcore
except ImportError:
    fastcore = None


def canonical_modulus(p, k):
    from hurwitz_lab.gf import _canonical_modulus
    return _canonical_modulus(p, k)


def bench_vec_ops(core, p, k, mod, reps):
    import random
    rng = random.Random(5)
    pairs = [(tuple(rng.randrange(p) for _ in range(k)),
              tuple(rng.randrange(p) for _ in range(k)))
             for _ in range(64)]
    t0 = time.perf_counter()
    for i in range(reps):
        a, b = pairs[i % 64]
        core.vec_mul(a, b, mod, p)
    t_mul = (time.perf_counter() - t0) / reps
    t0 = time.perf_counter()
    inv_reps = max(reps // 8, 1)
    for i in range(inv_reps):
        a, _ = pairs[i % 64]
        if any(a):
            core.vec_inv(a, mod, p)
    t_inv = (time.perf_counter() - t0) / inv_reps
    return t_mul, t_inv


def bench_scan(core, p, k, n):
    mod = canonical_modulus(p, k)
    facs = tuple(sorted(factorint(p ** k - 1)))
    exp, log = core.build_tables(p, k, mod, facs)
    terms = [(1, n, 0, 1), (0, 1, n, 1), (n, 0, 1, 1)]
    t0 = time.perf_counter()
    pts = core.scan_form(p, k, exp, log, terms)
    return time.perf_counter() - t0, len(pts)


def fmt(seconds):
    if seconds < 1e-3:
        return f"{seconds * 1e6:8.1f} us"
    return f"{seconds * 1e3:8.2f} ms"


def main():
    cores = [("pure", purecore)]
    if fastcore is not None:
        cores.append(("compiled", fastcore))
    else:
        print("compiled core not built; showing the pure backend only\n")

    print("== field arithmetic (per operation) ==")
    for p, k, reps in [(5, 4, 20000), (3, 30, 3000), (19, 15, 3000),
                       (2, 42, 3000)]:
        mod = canonical_modulus(p, k)
        row = [f"GF({p}^{k})"]
        for name, core in cores:
            t_mul, t_inv = bench_vec_ops(core, p, k, mod, reps)
            row.append(f"{name}: mul {fmt(t_mul)}  inv {fmt(t_inv)}")
        print("  " + "   ".join(row))

    print("\n== projective plane scan (whole plane) ==")
    for p, k, n in [(5, 4, 4), (3, 6, 6), (2, 8, 5), (19, 3, 6)]:
        row = [f"GF({p}^{k}), degree {n + 1} curve"]
        for name, core in cores:
            dt, npts = bench_scan(core, p, k, n)
            row.append(f"{name}: {fmt(dt)} ({npts} pts)")
        print("  " + "   ".join(row))

    if fastcore is not None:
        print("\nspeedups are what make the desk-scale verification matrix "
              "run in seconds; the pure fallback stays correct, just slower")


if __name__ == "__main__":
    main()
