"""Polynomial layer: univariate arithmetic, Hasse derivatives, sparse
homogeneous trivariate forms, line restriction, and truncated power-series
solving of implicit plane-curve equations.

Univariate polynomials are ascending coefficient tuples with a nonzero
leading coefficient; the zero polynomial is the empty tuple.  Trivariate
forms are sparse maps from exponent triples (i, j, l), i+j+l = degree, to
nonzero field elements.
"""

from .errors import DegeneratePair, PreconditionViolated, SingularBranch
from .gf import Fe


def lucas_binom(m, r, p):
    """C(m, r) mod p via the base-p digit product."""
    out = 1
    while r:
        md, rd = m % p, r % p
        if rd > md:
            return 0
        num = den = 1
        for t in range(rd):
            num = num * (md - t) % p
            den = den * (t + 1) % p
        out = out * num * pow(den, p - 2, p) % p
        m //= p
        r //= p
    return out


class UniPoly:
    """Univariate polynomial over a FieldCtx."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, ctx, ints):
        return cls(ctx, [ctx.element(c) for c in ints])

    @classmethod
    def x(cls, ctx):
        return cls(ctx, [ctx.zero(), ctx.one()])

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else self.ctx.zero()

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.ctx is other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.ctx, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.ctx, [self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return UniPoly(self.ctx, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Fe):
            return UniPoly(self.ctx, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly(self.ctx, [])
        out = [self.ctx.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return UniPoly(self.ctx, out)

    __rmul__ = __mul__

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        if self.degree < dd:
            return UniPoly(self.ctx, []), self
        inv = other.coeffs[-1].inv()
        quo = [self.ctx.zero()] * (self.degree - dd + 1)
        for da in range(self.degree, dd - 1, -1):
            c = rem[da] * inv
            if not c.is_zero():
                quo[da - dd] = c
                for j in range(dd + 1):
                    rem[da - dd + j] = rem[da - dd + j] - c * other.coeffs[j]
        return UniPoly(self.ctx, quo), UniPoly(self.ctx, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if not a.is_zero():
            a = a * a.coeffs[-1].inv()
        return a

    def __call__(self, x):
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return UniPoly(self.ctx,
                       [c * i for i, c in enumerate(self.coeffs)][1:] or [])

    def valuation(self):
        """Order of vanishing at 0; None for the zero polynomial."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return None

    def monic(self):
        if self.is_zero():
            return self
        return self * self.coeffs[-1].inv()

    def __repr__(self):
        if self.is_zero():
            return "UniPoly(0)"
        parts = [f"{list(c.coeffs)}*t^{i}" for i, c in enumerate(self.coeffs)
                 if not c.is_zero()]
        return "UniPoly(" + " + ".join(parts) + ")"


def hasse_derivative(f, r):
    """r-th Hasse derivative: sum of C(m, r) c_m x^(m-r)."""
    if r < 0:
        raise ValueError("derivative order must be >= 0")
    if r == 0:
        return f
    p = f.ctx.p
    out = []
    for m in range(r, len(f.coeffs)):
        out.append(f.coeffs[m] * lucas_binom(m, r, p))
    return UniPoly(f.ctx, out)


# ---------------------------------------------------------------------------

class TriForm:
    """Homogeneous trivariate form, sparse in the exponent triples."""

    __slots__ = ("ctx", "d", "terms")

    def __init__(self, ctx, d, terms):
        clean = {}
        for (i, j, l), c in terms.items():
            if not isinstance(c, Fe):
                c = ctx.element(c)
            if i + j + l != d:
                raise ValueError(f"term {(i, j, l)} does not have degree {d}")
            if not c.is_zero():
                clean[(i, j, l)] = c
        self.ctx = ctx
        self.d = d
        self.terms = clean

    def __eq__(self, other):
        return (isinstance(other, TriForm) and self.ctx is other.ctx
                and self.d == other.d and self.terms == other.terms)

    def __call__(self, coords):
        x, y, z = coords
        acc = self.ctx.zero()
        for (i, j, l), c in self.terms.items():
            acc = acc + c * x ** i * y ** j * z ** l
        return acc

    def is_zero(self):
        return not self.terms

    def scaled(self, s):
        return TriForm(self.ctx, self.d,
                       {e: c * s for e, c in self.terms.items()})

    def partial(self, axis):
        """Formal partial derivative along axis 0, 1 or 2."""
        out = {}
        for (i, j, l), c in self.terms.items():
            e = (i, j, l)[axis]
            if e == 0:
                continue
            ne = list((i, j, l))
            ne[axis] -= 1
            coeff = c * e
            if not coeff.is_zero():
                out[tuple(ne)] = coeff
        return TriForm(self.ctx, self.d - 1, out) if out else \
            TriForm(self.ctx, max(self.d - 1, 0), {})

    def gradient(self, coords):
        return tuple(self.partial(a)(coords) for a in range(3))

    def multiplied(self, other):
        out = {}
        for (i1, j1, l1), c1 in self.terms.items():
            for (i2, j2, l2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2, l1 + l2)
                cur = out.get(key)
                out[key] = c1 * c2 if cur is None else cur + c1 * c2
        return TriForm(self.ctx, self.d + other.d, out)

    def composed_with_matrix(self, rows):
        """The form F(M * (X,Y,Z)) for a 3x3 matrix given as row tuples."""
        ctx = self.ctx
        lin = [TriForm(ctx, 1, {(1, 0, 0): rows[r][0], (0, 1, 0): rows[r][1],
                                (0, 0, 1): rows[r][2]}) for r in range(3)]
        pow_cache = [{0: TriForm(ctx, 0, {(0, 0, 0): ctx.one()})}
                     for _ in range(3)]

        def lp(axis, e):
            cache = pow_cache[axis]
            if e not in cache:
                cache[e] = lp(axis, e - 1).multiplied(lin[axis])
            return cache[e]

        total = {}
        for (i, j, l), c in self.terms.items():
            part = lp(0, i).multiplied(lp(1, j)).multiplied(lp(2, l))
            for key, cc in part.terms.items():
                cur = total.get(key)
                v = c * cc
                total[key] = v if cur is None else cur + v
        return TriForm(ctx, self.d, {k: v for k, v in total.items()
                                     if not v.is_zero()})

    def dehomogenized(self, chart_axis):
        """Bivar in the two remaining coordinates, chart coordinate set to 1."""
        out = {}
        for (i, j, l), c in self.terms.items():
            exps = [i, j, l]
            del exps[chart_axis]
            key = tuple(exps)
            cur = out.get(key)
            out[key] = c if cur is None else cur + c
        return Bivar(self.ctx, out)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        parts = [f"{list(c.coeffs)}*X^{i}Y^{j}Z^{l}"
                 for (i, j, l), c in self.sorted_terms()]
        return f"TriForm(d={self.d}: " + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------

class Bivar:
    """Sparse bivariate polynomial, exponent pairs (i, j) -> Fe."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    def __call__(self, x, y):
        acc = self.ctx.zero()
        for (i, j), c in self.terms.items():
            acc = acc + c * x ** i * y ** j
        return acc

    def partial(self, axis):
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[axis]
            if e == 0:
                continue
            key = (i - 1, j) if axis == 0 else (i, j - 1)
            coeff = c * e
            if not coeff.is_zero():
                cur = out.get(key)
                out[key] = coeff if cur is None else cur + coeff
        return Bivar(self.ctx, out)

    def swapped(self):
        return Bivar(self.ctx, {(j, i): c for (i, j), c in self.terms.items()})

    def __repr__(self):
        parts = [f"{list(c.coeffs)}*x^{i}y^{j}"
                 for (i, j), c in sorted(self.terms.items())]
        return "Bivar(" + " + ".join(parts) + ")"


# -- truncated power series helpers (coefficient lists of fixed length N+1)

def _ser_mul(a, b, ctx, n):
    out = [ctx.zero()] * (n + 1)
    for i, ai in enumerate(a):
        if not ai.is_zero():
            top = min(len(b), n + 1 - i)
            for j in range(top):
                if not b[j].is_zero():
                    out[i + j] = out[i + j] + ai * b[j]
    return out


def _ser_pow(a, e, ctx, n):
    out = [ctx.one()] + [ctx.zero()] * n
    base = list(a)
    while e:
        if e & 1:
            out = _ser_mul(out, base, ctx, n)
        e >>= 1
        if e:
            base = _ser_mul(base, base, ctx, n)
    return out


def _ser_eval_bivar(f, xs, ys, ctx, n):
    out = [ctx.zero()] * (n + 1)
    powx = {0: [ctx.one()] + [ctx.zero()] * n}
    powy = {0: [ctx.one()] + [ctx.zero()] * n}

    def pw(cache, base, e):
        if e not in cache:
            cache[e] = _ser_mul(pw(cache, base, e - 1), base, ctx, n)
        return cache[e]

    for (i, j), c in sorted(f.terms.items()):
        term = _ser_mul(pw(powx, xs, i), pw(powy, ys, j), ctx, n)
        for m in range(n + 1):
            if not term[m].is_zero():
                out[m] = out[m] + c * term[m]
    return out


def _ser_inv(a, ctx, n):
    if a[0].is_zero():
        raise ZeroDivisionError("series with zero constant term")
    inv0 = a[0].inv()
    out = [inv0] + [ctx.zero()] * n
    for m in range(1, n + 1):
        acc = ctx.zero()
        for i in range(1, min(m, len(a) - 1) + 1):
            acc = acc + a[i] * out[m - i]
        out[m] = -acc * inv0
    return out


class Series:
    """Truncated expansion of one affine coordinate in a local parameter.

    ``param`` names the independent coordinate; coeffs[i] multiplies t^i
    where t = (param) - (its center value).
    """

    __slots__ = ("ctx", "center", "param", "coeffs", "truncation")

    def __init__(self, ctx, center, param, coeffs, truncation):
        self.ctx = ctx
        self.center = center        # (x0, y0)
        self.param = param          # "x" or "y"
        self.coeffs = tuple(coeffs)  # a_0 .. a_N of the dependent coordinate
        self.truncation = truncation

    def __getitem__(self, i):
        return self.coeffs[i]

    def dependent_series(self):
        return list(self.coeffs)

    def parameter_series(self):
        c0 = self.center[0] if self.param == "x" else self.center[1]
        out = [self.ctx.zero()] * (self.truncation + 1)
        out[0] = c0
        if self.truncation >= 1:
            out[1] = self.ctx.one()
        return out

    def __repr__(self):
        return (f"Series(param={self.param}, N={self.truncation}, "
                f"coeffs={[list(c.coeffs) for c in self.coeffs]})")


def solve_series(f, x0, y0, param="x", truncation=None):
    """Expand the implicit solution of f(x, y) = 0 at a simple branch.

    With param="x": y = y(t), t = x - x0, requiring f_y(x0, y0) != 0.
    The result satisfies f(x(t), y(t)) = 0 mod t^(truncation+1), asserted.
    The default truncation is twice the total degree of the relation.
    """
    ctx = f.ctx
    if truncation is None:
        truncation = 2 * max((i + j for (i, j) in f.terms), default=1)
    n = truncation
    if param == "y":
        inner = solve_series(f.swapped(), y0, x0, "x", n)
        return Series(ctx, (x0, y0), "y", inner.coeffs, n)
    if param != "x":
        raise ValueError("param must be 'x' or 'y'")
    if not f(x0, y0).is_zero():
        raise PreconditionViolated("center is not on the curve")
    fy = f.partial(1)(x0, y0)
    if fy.is_zero():
        raise SingularBranch("f_y vanishes at the center")
    fy_inv = fy.inv()
    xs = [x0] + [ctx.one()] + [ctx.zero()] * (n - 1) if n >= 1 else [x0]
    ys = [y0] + [ctx.zero()] * n
    for k in range(1, n + 1):
        residual = _ser_eval_bivar(f, xs, ys, ctx, k)
        ys[k] = -residual[k] * fy_inv
    final = _ser_eval_bivar(f, xs, ys, ctx, n)
    assert all(c.is_zero() for c in final), "series does not satisfy the relation"
    return Series(ctx, (x0, y0), "x", ys, n)


def restrict_to_line(form, a, b):
    """The univariate t -> F(A + t B) for projective points A != B.

    When F(A) = 0, the vanishing order at t = 0 is the intersection
    multiplicity at A of the curve with the line AB.  Accepts point
    objects (anything with ``.coords``) or plain coordinate triples.
    """
    ctx = form.ctx
    ax, ay, az = getattr(a, "coords", a)
    bx, by, bz = getattr(b, "coords", b)
    # projective inequality: cross product nonzero
    cross = (ay * bz - az * by, az * bx - ax * bz, ax * by - ay * bx)
    if all(c.is_zero() for c in cross):
        raise DegeneratePair("line through a point and itself")
    pairs = ((ax, bx), (ay, by), (az, bz))
    pow_cache = [{} for _ in range(3)]

    def linear_power(axis, e):
        cache = pow_cache[axis]
        got = cache.get(e)
        if got is not None:
            return got
        av, bv = pairs[axis]
        p = ctx.p
        apow = [ctx.one()]
        bpow = [ctx.one()]
        for _ in range(e):
            apow.append(apow[-1] * av)
            bpow.append(bpow[-1] * bv)
        out = [apow[e - r] * bpow[r] * lucas_binom(e, r, p) for r in range(e + 1)]
        cache[e] = out
        return out

    res = [ctx.zero()] * (form.d + 1)
    for (i, j, l), c in form.terms.items():
        px = linear_power(0, i)
        py = linear_power(1, j)
        pz = linear_power(2, l)
        pxy = [ctx.zero()] * (i + j + 1)
        for r, xr in enumerate(px):
            if not xr.is_zero():
                for s, yv in enumerate(py):
                    if not yv.is_zero():
                        pxy[r + s] = pxy[r + s] + xr * yv
        for r, xy in enumerate(pxy):
            if not xy.is_zero():
                for s, zv in enumerate(pz):
                    if not zv.is_zero():
                        res[r + s] = res[r + s] + c * xy * zv
    return UniPoly(ctx, res)
