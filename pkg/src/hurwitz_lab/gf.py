"""Explicit finite fields GF(p^k) with deterministic construction.

Conventions, fixed once and used by every other module:

* Elements are coefficient vectors of length k over GF(p) in the power
  basis of the field modulus, constant term first.
* The *index* of an element is ``sum(c_i * p**i)``; indices order the
  field totally and all "least element" choices refer to that order.
* The canonical modulus of GF(p^k) is the monic irreducible of degree k
  whose coefficient vector has the least index.  Two constructions of
  GF(p^k) are therefore bit-identical, with no Conway-polynomial tables.
* Cross-field comparisons always go through an explicit :class:`Embedding`;
  there is no implicit coercion between different field contexts.

Fields above the arithmetic size cap are refused at construction; full
enumerations (element scans, root scans) are additionally bounded by the
enumeration cap, overridable through ``HURWITZ_LAB_CAP``.
"""

import os
from math import lcm

from sympy import factorint, isprime

from . import _backend as be
from .errors import NoRoot, NotPrime, OrderNotDividing, SizeCapExceeded

DEFAULT_ARITH_CAP = 2 ** 40
DEFAULT_ENUM_CAP = 2 ** 24
DEFAULT_TABLE_CAP = 2 ** 20


def enum_cap(override=None):
    """Effective enumeration cap: explicit override, else env, else default."""
    if override is not None:
        return override
    env = os.environ.get("HURWITZ_LAB_CAP")
    return int(env) if env else DEFAULT_ENUM_CAP


# ---------------------------------------------------------------------------
# univariate polynomials over the prime field, as plain int lists
# (used for modulus search, splitting degrees and other GF(p)-level work)

def _pf_trim(c):
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _pf_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pf_trim(out)


def _pf_divmod(a, b, p):
    a = _pf_trim(list(a))
    b = _pf_trim(list(b))
    db = len(b) - 1
    if a == [0] or len(a) - 1 < db:
        return [0], a
    inv = pow(b[-1], p - 2, p)
    quo = [0] * (len(a) - db)
    for da in range(len(a) - 1, db - 1, -1):
        c = (a[da] * inv) % p
        if c:
            quo[da - db] = c
            for j in range(db + 1):
                a[da - db + j] = (a[da - db + j] - c * b[j]) % p
    return _pf_trim(quo), _pf_trim(a)


def _pf_gcd(a, b, p):
    a = _pf_trim(list(a))
    b = _pf_trim(list(b))
    while b != [0]:
        _, r = _pf_divmod(a, b, p)
        a, b = b, r
    if a != [0]:
        inv = pow(a[-1], p - 2, p)
        a = [(x * inv) % p for x in a]
    return a


def _pf_mulmod(a, b, f, p):
    _, r = _pf_divmod(_pf_mul(a, b, p), f, p)
    return r


def _pf_pow_xp(z, f, p):
    """z^p mod f by square and multiply."""
    result = [1]
    base = z
    e = p
    while e:
        if e & 1:
            result = _pf_mulmod(result, base, f, p)
        base = _pf_mulmod(base, base, f, p)
        e >>= 1
    return result


def _pf_is_irreducible(f, p):
    """Monic f irreducible over GF(p): gcd(f, x^{p^i} - x) = 1 for i <= deg/2."""
    k = len(f) - 1
    if k == 1:
        return True
    if f[0] == 0:
        return False
    for c in range(p):  # linear-root pretest
        acc = 0
        for co in reversed(f):
            acc = (acc * c + co) % p
        if acc == 0:
            return False
    z = [0, 1]
    for i in range(1, k // 2 + 1):
        z = _pf_pow_xp(z, f, p)
        diff = list(z) + [0] * (2 - len(z))
        diff[1] = (diff[1] - 1) % p
        if len(_pf_gcd(f, diff, p)) > 1:
            return False
    return True


def _canonical_modulus(p, k):
    if k == 1:
        return (0, 1)
    for v in range(1, p ** k):
        digs = []
        t = v
        for _ in range(k):
            digs.append(t % p)
            t //= p
        if digs[0] == 0:
            continue
        f = digs + [1]
        if _pf_is_irreducible(f, p):
            return tuple(f)
    raise NoRoot(f"no irreducible of degree {k} over GF({p})")  # unreachable


# ---------------------------------------------------------------------------

class FieldCtx:
    """An explicit finite field GF(p^k).  Construct through :func:`make_field`."""

    __slots__ = ("p", "k", "q", "modulus", "_tables", "_tables_built",
                 "_qm1_factors")

    def __init__(self, p, k, modulus):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus
        self._tables = None
        self._tables_built = False
        self._qm1_factors = None

    # -- basic element constructors

    def zero(self):
        return Fe(self, (0,) * self.k)

    def one(self):
        return Fe(self, (1,) + (0,) * (self.k - 1))

    def element(self, value):
        """Constant from an int (mod p), or an element from a digit list."""
        if isinstance(value, Fe):
            if value.ctx is not self:
                raise ValueError("element belongs to a different field; use embed()")
            return value
        if isinstance(value, int):
            return Fe(self, (value % self.p,) + (0,) * (self.k - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.k:
            raise ValueError(f"expected {self.k} digits, got {len(coeffs)}")
        return Fe(self, coeffs)

    def generator(self):
        """The power-basis generator (the class of x), or 0 when k = 1."""
        if self.k == 1:
            return self.zero()
        return Fe(self, (0, 1) + (0,) * (self.k - 2))

    def _unpack(self, idx):
        digs = []
        for _ in range(self.k):
            digs.append(idx % self.p)
            idx //= self.p
        return tuple(digs)

    def from_index(self, idx):
        if not 0 <= idx < self.q:
            raise ValueError("index out of range")
        return Fe(self, self._unpack(idx))

    def elements(self, cap=None):
        """Iterate over the whole field in index order (enumeration-capped)."""
        if self.q > enum_cap(cap):
            raise SizeCapExceeded(f"enumeration of {self!r} above cap")
        for idx in range(self.q):
            yield self.from_index(idx)

    # -- arithmetic on raw coefficient tuples (Fe delegates here)

    def tables(self):
        """(exp, log) arrays when the field is small enough, else None."""
        if not self._tables_built:
            self._tables_built = True
            if self.q <= DEFAULT_TABLE_CAP:
                self._tables = be.build_tables(
                    self.p, self.k, self.modulus, self.qm1_factors())
        return self._tables

    def qm1_factors(self):
        if self._qm1_factors is None:
            self._qm1_factors = tuple(sorted(factorint(self.q - 1)))
        return self._qm1_factors

    def _pack(self, coeffs):
        idx = 0
        for c in reversed(coeffs):
            idx = idx * self.p + c
        return idx

    def _mul(self, a, b):
        t = self.tables()
        if t is not None:
            exp, log = t
            ia, ib = self._pack(a), self._pack(b)
            if ia == 0 or ib == 0:
                return (0,) * self.k
            return self._unpack(int(exp[(int(log[ia]) + int(log[ib])) % (self.q - 1)]))
        return be.vec_mul(a, b, self.modulus, self.p)

    def _inv(self, a):
        t = self.tables()
        if t is not None:
            exp, log = t
            ia = self._pack(a)
            if ia == 0:
                raise ZeroDivisionError("inverse of zero field element")
            return self._unpack(int(exp[(-int(log[ia])) % (self.q - 1)]))
        return be.vec_inv(a, self.modulus, self.p)

    def _pow(self, a, e):
        if e < 0:
            return self._pow(self._inv(a), -e)
        t = self.tables()
        if t is not None:
            exp, log = t
            ia = self._pack(a)
            if ia == 0:
                if e == 0:
                    return (1,) + (0,) * (self.k - 1)
                return (0,) * self.k
            return self._unpack(int(exp[(int(log[ia]) * e) % (self.q - 1)]))
        return be.vec_pow(a, e, self.modulus, self.p)

    # -- misc

    def frobenius(self, a, times=1):
        """a^(p^times) for an Fe a."""
        out = a
        for _ in range(times):
            out = out ** self.p
        return out

    def to_json(self):
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __reduce__(self):  # pickling resolves to the canonical instance
        return (make_field, (self.p, self.k))


class Fe:
    """An element of a :class:`FieldCtx`, immutable and hashable."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    @property
    def index(self):
        return self.ctx._pack(self.coeffs)

    def digits(self):
        return list(self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, Fe):
            if other.ctx is not self.ctx:
                raise ValueError("mixed field contexts; use embed()")
            return other
        if isinstance(other, int):
            return self.ctx.element(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fe(self.ctx, be.vec_add(self.coeffs, o.coeffs, self.ctx.p))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fe(self.ctx, be.vec_sub(self.coeffs, o.coeffs, self.ctx.p))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Fe(self.ctx, be.vec_neg(self.coeffs, self.ctx.p))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fe(self.ctx, self.ctx._mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fe(self.ctx, self.ctx._mul(self.coeffs, self.ctx._inv(o.coeffs)))

    def __rtruediv__(self, other):
        return self.ctx.element(other) / self

    def __pow__(self, e):
        return Fe(self.ctx, self.ctx._pow(self.coeffs, e))

    def inv(self):
        return Fe(self.ctx, self.ctx._inv(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, Fe):
            return self.ctx is other.ctx and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == self.ctx.element(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __reduce__(self):
        return (Fe, (self.ctx, self.coeffs))

    def __repr__(self):
        return f"Fe{list(self.coeffs)}"


# ---------------------------------------------------------------------------

_FIELD_CACHE = {}


def make_field(p, k, arith_cap=None):
    """The canonical GF(p^k).  Deterministic: repeated calls are identical."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    cap = DEFAULT_ARITH_CAP if arith_cap is None else arith_cap
    if p ** k > cap:
        raise SizeCapExceeded(
            f"GF({p}^{k}) has {p ** k} elements, above the arithmetic cap {cap}")
    key = (p, k)
    ctx = _FIELD_CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(p, k, _canonical_modulus(p, k))
        _FIELD_CACHE[key] = ctx
    return ctx


def multiplicative_order(a):
    """Order of a in the multiplicative group of its field."""
    if a.is_zero():
        raise ZeroDivisionError("zero has no multiplicative order")
    ctx = a.ctx
    order = ctx.q - 1
    for ell, mult in factorint(order).items():
        for _ in range(mult):
            if a ** (order // ell) == 1:
                order //= ell
            else:
                break
    return order


class RootsOfUnity:
    """The m-th roots of unity in a field, with one primitive root exposed."""

    __slots__ = ("m", "elements", "primitive")

    def __init__(self, m, elements, primitive):
        self.m = m
        self.elements = elements  # tuple sorted by element index
        self.primitive = primitive

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def nth_roots_of_unity(ctx, m):
    """All m-th roots of unity in ctx; requires m | q - 1."""
    if m < 1:
        raise ValueError("m must be positive")
    if (ctx.q - 1) % m:
        raise OrderNotDividing(f"{m} does not divide {ctx.q - 1} = |{ctx!r}*|")
    if m == 1:
        return RootsOfUnity(1, (ctx.one(),), ctx.one())
    prim = _primitive_root_of_unity(ctx, m)
    roots = [ctx.one()]
    cur = prim
    for _ in range(m - 1):
        roots.append(cur)
        cur = cur * prim
    assert cur == 1
    return RootsOfUnity(m, tuple(sorted(roots, key=lambda r: r.index)), prim)


def _primitive_root_of_unity(ctx, m):
    """Deterministic search for an element of exact order m (m | q-1)."""
    cofactor = (ctx.q - 1) // m
    primes = sorted(factorint(m))

    def try_index(idx):
        cand = ctx.from_index(idx)
        if cand.is_zero():
            return None
        y = cand ** cofactor
        if any(y ** (m // ell) == 1 for ell in primes):
            return None
        return y

    for idx in range(2, min(ctx.q, 2 ** 14)):
        y = try_index(idx)
        if y is not None:
            return y
    # deterministic fallback walk for oddly structured small prefixes
    import random
    rng = random.Random(0xC0FFEE ^ ctx.q ^ m)
    for _ in range(10 ** 5):
        y = try_index(rng.randrange(1, ctx.q))
        if y is not None:
            return y
    raise NoRoot(f"no primitive {m}-th root of unity found in {ctx!r}")


def splitting_degree(coeffs, p=None):
    """Least k with all roots of the GF(p) polynomial in GF(p^k).

    ``coeffs``: int list/tuple, ascending degree (or any object with Fe
    ``.coeffs`` over a prime field).  Works on the squarefree part; the
    answer is the lcm of the irreducible factor degrees, found by
    distinct-degree sieving with x^{p^i} mod f.
    """
    if hasattr(coeffs, "coeffs"):
        obj = coeffs
        if obj.ctx.k != 1:
            raise ValueError("splitting_degree expects a prime-field polynomial")
        p = obj.ctx.p
        coeffs = [c.coeffs[0] for c in obj.coeffs]
    f = _pf_trim([c % p for c in coeffs])
    if f == [0]:
        raise ValueError("zero polynomial")
    if len(f) == 1:
        return 1
    # squarefree part; in char p a vanishing derivative means f = g(x^p) = h^p
    while True:
        deriv = _pf_trim([(i * f[i]) % p for i in range(1, len(f))] or [0])
        if deriv != [0]:
            break
        f = _pf_trim(f[::p])  # p-th root: GF(p) coefficients are Frobenius-fixed
        if len(f) == 1:
            return 1
    f, _ = _pf_divmod(f, _pf_gcd(f, deriv, p), p)
    inv = pow(f[-1], p - 2, p)
    f = [(c * inv) % p for c in f]
    result = 1
    z = [0, 1]
    i = 0
    while len(f) > 1:
        i += 1
        if len(f) - 1 < 2 * i:
            # what is left is a single irreducible factor
            result = lcm(result, len(f) - 1)
            break
        z = _pf_pow_xp(z, f, p)
        diff = list(z) + [0] * (2 - len(z))
        diff[1] = (diff[1] - 1) % p
        g = _pf_gcd(f, diff, p)
        if len(g) > 1:
            result = lcm(result, i)
            f, _ = _pf_divmod(f, g, p)
            if len(f) == 1:
                break
            _, z = _pf_divmod(z, f, p)
    return result


# ---------------------------------------------------------------------------

class Embedding:
    """Field homomorphism GF(p^s) -> GF(p^K) with s | K, canonically chosen.

    ``image_of_generator`` is the least root (by element index) of the
    source modulus in the destination field.
    """

    __slots__ = ("src", "dst", "image_of_generator", "_powers")

    def __init__(self, src, dst, image_of_generator):
        self.src = src
        self.dst = dst
        self.image_of_generator = image_of_generator
        g = image_of_generator
        pows = [dst.one()]
        for _ in range(src.k - 1):
            pows.append(pows[-1] * g)
        self._powers = pows

    def __call__(self, a):
        if a.ctx is not self.src:
            raise ValueError("element not in the embedding source field")
        out = self.dst.zero()
        for c, gp in zip(a.coeffs, self._powers):
            if c:
                out = out + gp * c
        return out

    def __repr__(self):
        return f"Embedding({self.src!r} -> {self.dst!r})"


def _subfield_elements(dst, s, cap=None):
    """All elements of the degree-s subfield of dst (s | dst.k)."""
    p, K = dst.p, dst.k
    if p ** s > enum_cap(cap):
        raise SizeCapExceeded(f"subfield GF({p}^{s}) enumeration above cap")
    if s == K:
        yield from dst.elements(cap)
        return
    # kernel of Frobenius^s - id as a GF(p)-linear map on dst
    gen = dst.generator()
    w = dst.frobenius(gen, s)
    cols = []
    cur = dst.one()
    for _ in range(K):
        cols.append(cur.coeffs)
        cur = cur * w
    mat = [[(cols[j][i] - (1 if i == j else 0)) % p for j in range(K)]
           for i in range(K)]
    basis = _nullspace(mat, p)
    assert len(basis) == s, "subfield dimension mismatch"
    basis_fes = [dst.element(b) for b in basis]
    idxs = [0] * s
    while True:
        acc = dst.zero()
        for c, b in zip(idxs, basis_fes):
            if c:
                acc = acc + b * c
        yield acc
        i = 0
        while i < s:
            idxs[i] += 1
            if idxs[i] < p:
                break
            idxs[i] = 0
            i += 1
        if i == s:
            return


def _nullspace(mat, p):
    """Basis of the right nullspace of a square matrix over GF(p)."""
    n = len(mat)
    a = [row[:] for row in mat]
    pivots = {}
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(n):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots[c] = r
        r += 1
    basis = []
    for c in range(n):
        if c in pivots:
            continue
        v = [0] * n
        v[c] = 1
        for pc, pr in pivots.items():
            v[pc] = (-a[pr][c]) % p
        basis.append(v)
    return basis


def embed(src, dst):
    """Canonical embedding src -> dst (same p, src.k | dst.k)."""
    if src.p != dst.p:
        raise ValueError("different characteristics cannot be embedded")
    if dst.k % src.k:
        raise ValueError(f"{src!r} does not embed into {dst!r}")
    if src is dst:
        return Embedding(src, dst, dst.generator())
    if src.k == 1:
        return Embedding(src, dst, dst.zero())
    roots = []
    for cand in _subfield_elements(dst, src.k):
        acc = dst.zero()
        for co in reversed(src.modulus):
            acc = acc * cand + co
        if acc.is_zero():
            roots.append(cand)
    if not roots:
        raise NoRoot("source modulus has no root in destination (internal error)")
    image = min(roots, key=lambda r: r.index)
    emb = Embedding(src, dst, image)
    assert dst.frobenius(image, src.k) == image
    return emb


def roots_of(poly, ctx=None, cap=None):
    """All roots in ctx of a univariate polynomial, with multiplicities.

    ``poly`` is anything with ``.coeffs`` (tuple of Fe) and ``.ctx``; the
    target ctx may be an extension of the coefficient field.  Splitting is
    located by gcd with x^q - x, then roots are collected by scanning the
    field (or its subfields when the field itself is above the cap).
    """
    src_ctx = poly.ctx
    coeffs = list(poly.coeffs)
    if not any(c for c in coeffs):
        raise ValueError("zero polynomial")
    if ctx is None:
        ctx = src_ctx
    if ctx is not src_ctx:
        phi = embed(src_ctx, ctx)
        coeffs = [phi(c) for c in coeffs]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if len(coeffs) == 1:
        return []

    # fully split part: g = gcd(f, x^q - x)
    g = _fe_gcd(coeffs, _fe_xq_minus_x(coeffs, ctx), ctx)
    if len(g) == 1:
        return []
    distinct = []
    target = len(g) - 1
    if ctx.q <= enum_cap(cap):
        for e in ctx.elements(cap):
            if _fe_eval(g, e).is_zero():
                distinct.append(e)
                if len(distinct) == target:
                    break
    else:
        for s in sorted(d for d in range(1, ctx.k + 1) if ctx.k % d == 0):
            if ctx.p ** s > enum_cap(cap):
                break
            for e in _subfield_elements(ctx, s, cap):
                if _fe_eval(g, e).is_zero() and e not in distinct:
                    distinct.append(e)
            if len(distinct) == target:
                break
        if len(distinct) < target:
            raise SizeCapExceeded(
                "roots lie in subfields above the enumeration cap")
    out = []
    for r in distinct:
        rem = coeffs
        while True:
            quo, rest = _fe_div_linear(rem, r, ctx)
            if rest.is_zero():
                out.append(r)
                rem = quo
                if len(rem) == 1:
                    break
            else:
                break
    return sorted(out, key=lambda e: e.index)


def _fe_eval(coeffs, x):
    acc = x.ctx.zero()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _fe_div_linear(coeffs, r, ctx):
    """Divide by (x - r): returns (quotient coeffs, remainder Fe)."""
    acc = ctx.zero()
    quo = [ctx.zero()] * (len(coeffs) - 1)
    for i in range(len(coeffs) - 1, 0, -1):
        acc = acc * r + coeffs[i]
        quo[i - 1] = acc
    rem = acc * r + coeffs[0]
    return quo, rem


def _fe_mulmod(a, b, f, ctx):
    out = [ctx.zero()] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai.is_zero():
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
    return _fe_mod(out, f, ctx)


def _fe_mod(a, f, ctx):
    a = list(a)
    df = len(f) - 1
    inv = f[-1].inv()
    for da in range(len(a) - 1, df - 1, -1):
        c = a[da] * inv
        if not c.is_zero():
            for j in range(df + 1):
                a[da - df + j] = a[da - df + j] - c * f[j]
    while len(a) > 1 and a[-1].is_zero():
        a.pop()
    return a


def _fe_gcd(a, b, ctx):
    a = [c for c in a]
    b = [c for c in b]
    while len(b) > 1 or not b[0].is_zero():
        r = _fe_mod(a, b, ctx)
        a, b = b, r
    if not a[-1].is_zero():
        inv = a[-1].inv()
        a = [c * inv for c in a]
    return a


def _fe_xq_minus_x(f, ctx):
    """x^q - x reduced mod f, computed by repeated p-powering."""
    z = [ctx.zero(), ctx.one()]
    if len(f) - 1 <= 1:
        return [ctx.zero()]
    z = _fe_mod(z, f, ctx)
    for _ in range(ctx.k):
        w = z
        e = ctx.p
        result = [ctx.one()]
        while e:
            if e & 1:
                result = _fe_mulmod(result, w, f, ctx)
            w = _fe_mulmod(w, w, f, ctx)
            e >>= 1
        z = result
    out = list(z) + [ctx.zero()] * (2 - len(z))
    out[1] = out[1] - ctx.one()
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return out
