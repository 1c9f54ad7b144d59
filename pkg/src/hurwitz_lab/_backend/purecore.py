"""Pure-Python arithmetic core.

Same interface as the compiled core (``fastcore``): dense coefficient
vectors over GF(p) reduced modulo a monic polynomial, exp/log tables for
small fields, and the projective plane scan.  Coefficient vectors are
tuples of ints in ``[0, p)``, constant term first.  Packed element
indices are ``sum(c_i * p**i)``.

The plane scan is vectorised with numpy; everything else is plain loops.
"""

import numpy as np

BACKEND = "pure"


def vec_add(a, b, p):
    return tuple((x + y) % p for x, y in zip(a, b))


def vec_sub(a, b, p):
    return tuple((x - y) % p for x, y in zip(a, b))


def vec_neg(a, p):
    return tuple((-x) % p for x in a)


def vec_mul(a, b, modulus, p):
    k = len(modulus) - 1
    if k == 1:
        return ((a[0] * b[0]) % p,)
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = (prod[i + j] + ai * bj) % p
    for i in range(2 * k - 2, k - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            off = i - k
            for j in range(k):
                mj = modulus[j]
                if mj:
                    prod[off + j] = (prod[off + j] - c * mj) % p
    return tuple(prod[:k])


def vec_pow(a, e, modulus, p):
    k = len(modulus) - 1
    one = (1,) + (0,) * (k - 1)
    if e == 0:
        return one
    result = one
    base = tuple(a)
    while e:
        if e & 1:
            result = vec_mul(result, base, modulus, p)
        base = vec_mul(base, base, modulus, p)
        e >>= 1
    return result


def _poly_trim(c):
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a, b, p):
    # univariate over GF(p), int lists ascending, b nonzero
    a = _poly_trim(list(a))
    db = len(b) - 1
    if len(a) - 1 < db or a == [0]:
        return [0], a
    inv = pow(b[-1], p - 2, p)
    quo = [0] * (len(a) - db)
    for da in range(len(a) - 1, db - 1, -1):
        c = (a[da] * inv) % p
        if c:
            quo[da - db] = c
            for j in range(db + 1):
                a[da - db + j] = (a[da - db + j] - c * b[j]) % p
    return _poly_trim(quo), _poly_trim(a)


def vec_inv(a, modulus, p):
    if not any(a):
        raise ZeroDivisionError("inverse of zero field element")
    k = len(modulus) - 1
    if k == 1:
        return (pow(a[0], p - 2, p),)
    # extended Euclid on (modulus, a); only the t-cofactor is tracked
    r0, r1 = list(modulus), _poly_trim(list(a))
    t0, t1 = [0], [1]
    while r1 != [0]:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        qt = [0] * (len(q) + len(t1) - 1)
        for i, qi in enumerate(q):
            if qi:
                for j, tj in enumerate(t1):
                    qt[i + j] = (qt[i + j] + qi * tj) % p
        nt = [0] * max(len(t0), len(qt))
        for i, x in enumerate(t0):
            nt[i] = x
        for i, x in enumerate(qt):
            nt[i] = (nt[i] - x) % p
        t0, t1 = t1, _poly_trim(nt)
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible (modulus not irreducible?)")
    lead_inv = pow(r0[0], p - 2, p)
    out = [(x * lead_inv) % p for x in t0]
    out += [0] * (k - len(out))
    return tuple(out[:k])


def _pack(vec, p):
    idx = 0
    for c in reversed(vec):
        idx = idx * p + c
    return idx


def _unpack(idx, p, k):
    digs = []
    for _ in range(k):
        digs.append(idx % p)
        idx //= p
    return tuple(digs)


def build_tables(p, k, modulus, qm1_factors):
    """exp/log tables for GF(p^k).

    ``qm1_factors``: distinct prime factors of p^k - 1, used to certify a
    generator.  Returns (exp, log) as numpy int64 arrays; exp has length
    q - 1, log has length q with log[0] = -1.
    """
    q = p ** k
    qm1 = q - 1
    one = (1,) + (0,) * (k - 1)
    if qm1 == 1:  # GF(2): trivial multiplicative group
        return (np.array([1], dtype=np.int64),
                np.array([-1, 0], dtype=np.int64))
    gen = None
    for cand in range(2, q):
        vec = _unpack(cand, p, k)
        if all(vec_pow(vec, qm1 // ell, modulus, p) != one for ell in qm1_factors):
            gen = vec
            break
    assert gen is not None, "no multiplicative generator found"
    exp = np.empty(qm1, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    cur = one
    for i in range(qm1):
        idx = _pack(cur, p)
        exp[i] = idx
        log[idx] = i
        cur = vec_mul(cur, gen, modulus, p)
    assert cur == one
    return exp, log


def scan_form(p, k, exp, log, terms):
    """All projective zeros over GF(p^k) of a trivariate form.

    ``terms``: list of (i, j, l, coeff_idx) with coeff_idx a nonzero packed
    element.  Points come back as packed normalized triples, charts in the
    order z=1, then (x:1:0), then (1:0:0).
    """
    q = p ** k
    qm1 = q - 1
    pts = []
    exp = np.asarray(exp)
    log = np.asarray(log)
    ys = np.arange(q, dtype=np.int64)
    ylog = log[ys]
    ppow = [p ** d for d in range(k)]

    # per-term log-profile over y: log(c * y^j), -1 where the monomial is 0
    profs = []
    for (i, j, l, cidx) in terms:
        base = int(log[cidx])
        if j == 0:
            tlog = np.full(q, base, dtype=np.int64)
        else:
            tlog = np.full(q, -1, dtype=np.int64)
            nz = ys != 0
            tlog[nz] = (base + j * ylog[nz]) % qm1
        profs.append((i, tlog, tlog >= 0))

    # chart z = 1: F(x, y, 1) over all (x, y)
    acc = [np.empty(q, dtype=np.int64) for _ in range(k)]
    mono = np.empty(q, dtype=np.int64)
    for xi in range(q):
        for d in range(k):
            acc[d].fill(0)
        lx = int(log[xi])
        for i, tlog, valid in profs:
            if i == 0:
                np.copyto(mono, 0)
                mono[valid] = exp[tlog[valid]]
            elif xi == 0:
                continue
            else:
                np.copyto(mono, 0)
                mono[valid] = exp[(tlog[valid] + i * lx) % qm1]
            for d in range(k):
                acc[d] += (mono // ppow[d]) % p
        zero = (acc[0] % p) == 0
        for d in range(1, k):
            zero &= (acc[d] % p) == 0
        for yi in np.nonzero(zero)[0]:
            pts.append((xi, int(yi), 1))

    # chart y = 1, z = 0: F(x, 1, 0)
    for xi in range(q):
        dig = [0] * k
        lx = int(log[xi])
        for (i, j, l, cidx) in terms:
            if l != 0:
                continue
            if i == 0:
                val = cidx
            elif xi == 0:
                continue
            else:
                val = int(exp[(int(log[cidx]) + i * lx) % qm1])
            for d in range(k):
                dig[d] += (val // ppow[d]) % p
        if all(x % p == 0 for x in dig):
            pts.append((xi, 1, 0))

    # the point (1:0:0): F there is the X^d coefficient
    if not any(j == 0 and l == 0 for (i, j, l, cidx) in terms):
        pts.append((1, 0, 0))
    return pts
