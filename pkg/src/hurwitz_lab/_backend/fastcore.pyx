# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled arithmetic core.

Mirrors the interface of ``purecore``: dense coefficient vectors over
GF(p) reduced modulo a monic polynomial, exp/log table construction, and
the projective plane scan.  Vectors stay small (degree <= 64), so the
kernels work on stack buffers.  Coefficients must fit comfortably in
int64; that holds for every field the package constructs (p is capped by
the arithmetic size cap well below 2^20 whenever k >= 2).
"""

import numpy as np

from libc.stdlib cimport free, malloc
from libc.string cimport memset

BACKEND = "compiled"

DEF MAXK = 64
DEF MAXP = 1048576  # guard for int64 products


def vec_add(a, b, int p):
    return tuple((x + y) % p for x, y in zip(a, b))


def vec_sub(a, b, int p):
    return tuple((x - y) % p for x, y in zip(a, b))


def vec_neg(a, int p):
    return tuple((-x) % p for x in a)


cdef void _mul_into(long long *out, long long *a, long long *b,
                    long long *mod, int k, long long p) nogil:
    cdef long long prod[2 * MAXK]
    cdef int i, j
    cdef long long c
    memset(prod, 0, sizeof(long long) * (2 * k))
    for i in range(k):
        if a[i]:
            for j in range(k):
                if b[j]:
                    prod[i + j] = (prod[i + j] + a[i] * b[j]) % p
    for i in range(2 * k - 2, k - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(k):
                if mod[j]:
                    prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
                    if prod[i - k + j] < 0:
                        prod[i - k + j] += p
    for i in range(k):
        out[i] = prod[i]


cdef void _load(long long *buf, seq, int k):
    cdef int i = 0
    for v in seq:
        buf[i] = v
        i += 1


cdef tuple _dump(long long *buf, int k):
    return tuple(buf[i] for i in range(k))


cdef int _check_dims(int k, p) except -1:
    if k > MAXK:
        raise ValueError("extension degree above compiled-core limit")
    if p > MAXP:
        raise ValueError("characteristic above compiled-core limit")
    return 0


def vec_mul(a, b, modulus, p):
    cdef int k = len(modulus) - 1
    if k == 1:
        return ((a[0] * b[0]) % p,)
    _check_dims(k, p)
    cdef long long av[MAXK]
    cdef long long bv[MAXK]
    cdef long long mv[MAXK + 1]
    cdef long long ov[MAXK]
    cdef long long pp = p
    _load(av, a, k)
    _load(bv, b, k)
    _load(mv, modulus, k + 1)
    _mul_into(ov, av, bv, mv, k, pp)
    return _dump(ov, k)


def vec_pow(a, e, modulus, p):
    cdef int k = len(modulus) - 1
    if k == 1:
        return (pow(a[0], e, p),)
    _check_dims(k, p)
    if e < 0:
        raise ValueError("negative exponent handled by the caller")
    cdef long long bv[MAXK]
    cdef long long rv[MAXK]
    cdef long long tv[MAXK]
    cdef long long mv[MAXK + 1]
    cdef long long pp = p
    cdef int i
    _load(bv, a, k)
    _load(mv, modulus, k + 1)
    memset(rv, 0, sizeof(long long) * k)
    rv[0] = 1
    # python-int exponent: peel bits in python to allow arbitrary size
    while e:
        if e & 1:
            _mul_into(tv, rv, bv, mv, k, pp)
            for i in range(k):
                rv[i] = tv[i]
        e >>= 1
        if e:
            _mul_into(tv, bv, bv, mv, k, pp)
            for i in range(k):
                bv[i] = tv[i]
    return _dump(rv, k)


def vec_inv(a, modulus, p):
    if not any(a):
        raise ZeroDivisionError("inverse of zero field element")
    cdef int k = len(modulus) - 1
    if k == 1:
        return (pow(a[0], p - 2, p),)
    q = 1
    for _ in range(k):
        q *= p
    return vec_pow(a, q - 2, modulus, p)


def build_tables(p, k, modulus, qm1_factors):
    """exp/log tables for GF(p^k); see purecore.build_tables."""
    _check_dims(k, p)
    cdef long long q = 1
    cdef int i
    for i in range(k):
        q *= p
    cdef long long qm1 = q - 1
    if qm1 == 1:
        return (np.array([1], dtype=np.int64),
                np.array([-1, 0], dtype=np.int64))
    one = (1,) + (0,) * (k - 1)
    gen = None
    for cand in range(2, q):
        vec = _unpack_py(cand, p, k)
        ok = True
        for ell in qm1_factors:
            if vec_pow(vec, qm1 // ell, modulus, p) == one:
                ok = False
                break
        if ok:
            gen = vec
            break
    assert gen is not None, "no multiplicative generator found"

    exp_arr = np.empty(qm1, dtype=np.int64)
    log_arr = np.full(q, -1, dtype=np.int64)
    cdef long long[::1] exp = exp_arr
    cdef long long[::1] log = log_arr
    cdef long long gv[MAXK]
    cdef long long cur[MAXK]
    cdef long long nxt[MAXK]
    cdef long long mv[MAXK + 1]
    cdef long long pp = p
    cdef long long idx, step
    cdef int kk = k
    _load(gv, gen, k)
    _load(mv, modulus, k + 1)
    memset(cur, 0, sizeof(long long) * k)
    cur[0] = 1
    with nogil:
        for step in range(qm1):
            idx = 0
            for i in range(kk - 1, -1, -1):
                idx = idx * pp + cur[i]
            exp[step] = idx
            log[idx] = step
            _mul_into(nxt, cur, gv, mv, kk, pp)
            for i in range(kk):
                cur[i] = nxt[i]
    return exp_arr, log_arr


def _unpack_py(idx, p, k):
    digs = []
    for _ in range(k):
        digs.append(idx % p)
        idx //= p
    return tuple(digs)


def scan_form(p, k, exp, log, terms):
    """All projective zeros of a form; see purecore.scan_form."""
    _check_dims(k, p)
    cdef long long q = 1
    cdef int d
    for d in range(k):
        q *= p
    cdef long long qm1 = q - 1
    cdef long long[::1] expv = np.ascontiguousarray(exp, dtype=np.int64)
    cdef long long[::1] logv = np.ascontiguousarray(log, dtype=np.int64)
    cdef int nt = len(terms)
    cdef long long *ti = <long long *> malloc(sizeof(long long) * nt)
    cdef long long *tj = <long long *> malloc(sizeof(long long) * nt)
    cdef long long *tl = <long long *> malloc(sizeof(long long) * nt)
    cdef long long *tc = <long long *> malloc(sizeof(long long) * nt)
    cdef long long *xpart = <long long *> malloc(sizeof(long long) * nt)
    cdef int t
    for t in range(nt):
        ti[t] = terms[t][0]
        tj[t] = terms[t][1]
        tl[t] = terms[t][2]
        tc[t] = terms[t][3]
    cdef long long pp = p
    cdef int kk = k
    cdef long long xi, yi, lx, ly, val, ok, v
    cdef long long dig[MAXK]
    cdef int dd
    found = []
    # chart z = 1
    for xi in range(q):
        lx = logv[xi]
        for t in range(nt):
            if ti[t] == 0:
                xpart[t] = logv[tc[t]]
            elif lx < 0:
                xpart[t] = -1
            else:
                xpart[t] = (logv[tc[t]] + ti[t] * lx) % qm1
        for yi in range(q):
            ly = logv[yi]
            for dd in range(kk):
                dig[dd] = 0
            for t in range(nt):
                if xpart[t] < 0:
                    continue
                if tj[t] == 0:
                    val = expv[xpart[t]]
                elif ly < 0:
                    continue
                else:
                    val = expv[(xpart[t] + tj[t] * ly) % qm1]
                v = val
                for dd in range(kk):
                    dig[dd] += v % pp
                    v //= pp
            ok = 1
            for dd in range(kk):
                if dig[dd] % pp != 0:
                    ok = 0
                    break
            if ok:
                found.append((int(xi), int(yi), 1))
    # chart y = 1, z = 0
    for xi in range(q):
        lx = logv[xi]
        for dd in range(kk):
            dig[dd] = 0
        for t in range(nt):
            if tl[t] != 0:
                continue
            if ti[t] == 0:
                val = tc[t]
            elif lx < 0:
                continue
            else:
                val = expv[(logv[tc[t]] + ti[t] * lx) % qm1]
            v = val
            for dd in range(kk):
                dig[dd] += v % pp
                v //= pp
        ok = 1
        for dd in range(kk):
            if dig[dd] % pp != 0:
                ok = 0
                break
        if ok:
            found.append((int(xi), 1, 0))
    # the point (1:0:0)
    has_xd = False
    for t in range(nt):
        if tj[t] == 0 and tl[t] == 0:
            has_xd = True
    if not has_xd:
        found.append((1, 0, 0))
    free(ti)
    free(tj)
    free(tl)
    free(tc)
    free(xpart)
    return found
