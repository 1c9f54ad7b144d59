"""Automorphisms of XY^n + YZ^n + X^nZ away from the exceptional cases.

The group is C_m semidirect C_3 (m = n^2 - n + 1), generated by a diagonal
map of order m and the coordinate 3-cycle.  Group theory is done on the
abstract encoding sigma^i mu^s = (i, s); matrices enter only where the
geometry does (fixed points, ramification filtrations, genus tables).

The excluded parameter ranges (n = 3, n a power of p) have different,
larger automorphism groups and are refused explicitly.
"""

from dataclasses import dataclass
from math import lcm

from sympy import n_order

from .curve import ProjPoint, enumerate_points, vertex_points
from .errors import (
    ExcludedCase, FieldLacksRoot, SeriesTruncationTooShort, SingularPoint,
)
from .gf import make_field
from .hurwitz import P_DIVIDES_N, epsilon
from .poly import _ser_mul, solve_series


class ProjMap:
    """An invertible 3x3 matrix up to scalars, canonically normalized so
    the first nonzero entry in row-major order is 1."""

    __slots__ = ("ctx", "rows")

    def __init__(self, ctx, rows):
        flat = [c for row in rows for c in row]
        pivot = next((c for c in flat if not c.is_zero()), None)
        if pivot is None:
            raise ValueError("zero matrix")
        if pivot != 1:
            inv = pivot.inv()
            rows = tuple(tuple(c * inv for c in row) for row in rows)
        else:
            rows = tuple(tuple(row) for row in rows)
        self.ctx = ctx
        self.rows = rows

    @classmethod
    def identity(cls, ctx):
        o, z = ctx.one(), ctx.zero()
        return cls(ctx, ((o, z, z), (z, o, z), (z, z, o)))

    @classmethod
    def diagonal(cls, ctx, a, b, c):
        z = ctx.zero()
        return cls(ctx, ((a, z, z), (z, b, z), (z, z, c)))

    def __mul__(self, other):
        a, b = self.rows, other.rows
        rows = tuple(
            tuple(sum((a[i][t] * b[t][j] for t in range(3)),
                      self.ctx.zero()) for j in range(3))
            for i in range(3))
        return ProjMap(self.ctx, rows)

    def det(self):
        ((a, b, c), (d, e, f), (g, h, i)) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def inverse(self):
        ((a, b, c), (d, e, f), (g, h, i)) = self.rows
        adj = ((e * i - f * h, c * h - b * i, b * f - c * e),
               (f * g - d * i, a * i - c * g, c * d - a * f),
               (d * h - e * g, b * g - a * h, a * e - b * d))
        if self.det().is_zero():
            raise ValueError("singular matrix")
        return ProjMap(self.ctx, adj)

    def apply(self, point):
        x, y, z = point.coords
        coords = tuple(r[0] * x + r[1] * y + r[2] * z for r in self.rows)
        return ProjPoint(self.ctx, coords)

    def is_identity(self):
        return self == ProjMap.identity(self.ctx)

    def order(self):
        cur = self
        for k in range(1, 10000):
            if cur.is_identity():
                return k
            cur = cur * self
        raise RuntimeError("order search exhausted")

    def __eq__(self, other):
        return (isinstance(other, ProjMap) and self.ctx is other.ctx
                and self.rows == other.rows)

    def __hash__(self):
        return hash((id(self.ctx), self.rows))

    def __repr__(self):
        return "ProjMap" + repr([[list(c.coeffs) for c in r] for r in self.rows])


def is_automorphism(form, mapping):
    """The scalar gamma with F(M x) = gamma F(x), or None."""
    composed = form.composed_with_matrix(mapping.rows)
    if set(composed.terms) != set(form.terms):
        return None
    gamma = None
    for key, c in form.terms.items():
        ratio = composed.terms[key] / c
        if gamma is None:
            gamma = ratio
        elif gamma != ratio:
            return None
    return gamma


# ---------------------------------------------------------------------------
# abstract group C_m x| C_3, elements (i, s) = sigma^i mu^s

class AbstractGroup:
    """Multiplication table-free model of the automorphism group."""

    def __init__(self, n):
        m = n * n - n + 1
        tw = (n - 1) % m
        self.n = n
        self.m = m
        self.twist = tw
        self.twist_pows = (1, tw, tw * tw % m)
        assert tw ** 3 % m == 1, "twist must be a cube root of 1 mod m"

    def mul(self, a, b):
        (i, s), (j, t) = a, b
        return ((i + j * self.twist_pows[s]) % self.m, (s + t) % 3)

    def inv(self, a):
        i, s = a
        t = (-s) % 3
        return ((-i * self.twist_pows[t]) % self.m, t)

    def conj(self, g, h):
        """g h g^-1."""
        return self.mul(self.mul(g, h), self.inv(g))

    def elements(self):
        return [(i, s) for s in range(3) for i in range(self.m)]

    def closure(self, gens):
        seen = {(0, 0)}
        frontier = [(0, 0)]
        gens = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(a, g)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(seen)

    def conjugate_subgroup(self, g, sub):
        return frozenset(self.conj(g, h) for h in sub)


@dataclass(frozen=True)
class SubgroupClass:
    """A conjugacy class of subgroups: structural kind, parameters, and a
    representative element set in the abstract encoding."""

    kind: str          # "S", "T0", "T", "TS"
    order: int
    class_size: int
    d: int             # cyclic part order (S and TS kinds), else 0
    tau_power: int     # 0 for the mu-type representative, 1 or 2 for tau^j mu
    rep: frozenset     # elements (i, s)

    def label(self):
        if self.kind == "S":
            return f"S_{self.d}"
        if self.kind == "T0":
            return "T0"
        if self.kind == "T":
            return f"T(tau^{self.tau_power})" if self.tau_power else "T(mu)"
        base = f"TS(d={self.d}"
        return base + (f", tau^{self.tau_power})" if self.tau_power else ")")

    def to_json(self):
        return {"kind": self.kind, "order": self.order,
                "class_size": self.class_size,
                "params": {"d": self.d, "tau_power": self.tau_power},
                "label": self.label()}


def _divisors(m):
    out = [d for d in range(1, m + 1) if m % d == 0]
    return out


def subgroup_classes(n):
    """Every subgroup of the order-3m group, up to conjugacy.

    Cyclic parts S_d are normal and each forms its own class.  The order-3
    complements split by n mod 3 (one class of size m, or a central one
    plus three classes of size m/3); composites T*S_d follow the same
    pattern with sizes scaled down by d.
    """
    grp = AbstractGroup(n)
    m = grp.m
    mod3 = n % 3 == 2
    classes = []
    for d in _divisors(m):
        rep = grp.closure([(m // d, 0)]) if d > 1 else frozenset([(0, 0)])
        if mod3 and d == 3:
            classes.append(SubgroupClass("T0", 3, 1, 3, 0, rep))
        else:
            classes.append(SubgroupClass("S", d, 1, d, 0, rep))
    if not mod3:
        classes.append(SubgroupClass("T", 3, m, 0, 0,
                                     grp.closure([(0, 1)])))
    else:
        for j in (0, 1, 2):
            rep = grp.closure([((j * m // 3) % m, 1)])
            classes.append(SubgroupClass("T", 3, m // 3, 0, j, rep))
    for d in _divisors(m):
        if d == 1:
            continue
        if not mod3 or d % 3 == 0:
            rep = grp.closure([(0, 1), (m // d, 0)])
            classes.append(SubgroupClass("TS", 3 * d, m // d, d, 0, rep))
        else:
            for j in (0, 1, 2):
                rep = grp.closure([((j * m // 3) % m, 1), (m // d, 0)])
                classes.append(SubgroupClass("TS", 3 * d, m // (3 * d), d, j, rep))
    for cls in classes:
        assert len(cls.rep) == cls.order, f"bad representative for {cls.label()}"
    return classes


def brute_force_subgroup_classes(n):
    """Oracle: enumerate all subgroups by 2-generator closures (the group
    is metacyclic, so two generators suffice), then bucket by conjugacy.

    Returns a list of frozensets of subgroups, one per conjugacy class.
    """
    grp = AbstractGroup(n)
    elems = grp.elements()
    cyclic = {grp.closure([g]) for g in elems}
    subs = set(cyclic)
    cyc = sorted(cyclic, key=len)
    for i, a in enumerate(cyc):
        for b in cyc[i:]:
            subs.add(grp.closure(list(a) + list(b)))
    buckets = []
    remaining = set(subs)
    while remaining:
        h = remaining.pop()
        cls = {h}
        for g in elems:
            cls.add(grp.conjugate_subgroup(g, h))
        remaining -= cls
        buckets.append(frozenset(cls))
    return buckets


def verify_subgroup_classification(n):
    """Check the closed-form class list against the brute-force oracle."""
    closed = subgroup_classes(n)
    oracle = brute_force_subgroup_classes(n)
    assert len(closed) == len(oracle), (
        f"{len(closed)} closed-form classes vs {len(oracle)} enumerated")
    matched = set()
    for cls in closed:
        bucket = next(b for b in oracle if cls.rep in b)
        assert len(bucket) == cls.class_size, (
            f"{cls.label()}: class size {len(bucket)} != {cls.class_size}")
        assert bucket not in matched, f"{cls.label()} duplicates a class"
        matched.add(bucket)
    assert len(matched) == len(oracle)
    return closed


# ---------------------------------------------------------------------------

def group_field(spec):
    """Smallest field with the needed root of unity of order m."""
    return make_field(spec.p, n_order(spec.p, spec.m))


def fixed_point_field(spec):
    """Smallest field that also contains the cubic roots of unity (where
    the fixed points of the order-3 elements live)."""
    k = n_order(spec.p, spec.m)
    if spec.p != 3:
        k = lcm(k, n_order(spec.p, 3))
    return make_field(spec.p, k)


def generators(spec, ctx):
    """The diagonal order-m map and the coordinate 3-cycle, with their
    defining relations checked."""
    from .gf import nth_roots_of_unity
    m, n = spec.m, spec.n
    if (ctx.q - 1) % m:
        raise FieldLacksRoot(f"{ctx!r} has no element of order {m}")
    xi = nth_roots_of_unity(ctx, m).primitive
    one, zero = ctx.one(), ctx.zero()
    sigma = ProjMap.diagonal(ctx, xi ** (1 - n), xi, one)
    mu = ProjMap(ctx, ((zero, one, zero), (zero, zero, one), (one, zero, zero)))
    assert sigma.order() == m and mu.order() == 3
    assert mu * sigma * mu.inverse() == _pow(sigma, n - 1, ctx)
    p1, p2, p3 = vertex_points(ctx)
    assert all(sigma.apply(v) == v for v in (p1, p2, p3))
    assert (mu.apply(p1), mu.apply(p3), mu.apply(p2)) == (p3, p2, p1)
    form = spec.form(ctx)
    assert is_automorphism(form, sigma) is not None
    assert is_automorphism(form, mu) is not None
    return sigma, mu


def _pow(mp, e, ctx):
    out = ProjMap.identity(ctx)
    base = mp
    while e:
        if e & 1:
            out = out * base
        base = base * base
        e >>= 1
    return out


@dataclass
class MatrixGroup:
    spec: object
    ctx: object
    sigma: ProjMap
    mu: ProjMap
    abstract: AbstractGroup
    by_abstract: dict       # (i, s) -> ProjMap

    @property
    def order(self):
        return len(self.by_abstract)

    def maps(self):
        return list(self.by_abstract.values())


def generate_group(spec, ctx=None):
    """The full matrix group, with the bijection to the abstract model.

    Refused for n = 3 and for n a power of p, where the automorphism
    group is larger and out of range of this construction.
    """
    if spec.n == 3:
        raise ExcludedCase("n = 3 has a 168-element group; not built here")
    eps_case = epsilon(spec)
    if eps_case.tag == P_DIVIDES_N and eps_case.m_prime == 1:
        raise ExcludedCase(
            "n a power of p is the unitary-group case; not built here")
    if ctx is None:
        ctx = group_field(spec)
    sigma, mu = generators(spec, ctx)
    grp = AbstractGroup(spec.n)
    m = grp.m
    by_abstract = {}
    spow = ProjMap.identity(ctx)
    for i in range(m):
        mpow = spow
        for s in range(3):
            by_abstract[(i, s)] = mpow
            if s < 2:
                mpow = mpow * mu
        spow = spow * sigma
    assert len(set(by_abstract.values())) == 3 * m, "group collapse"
    # closure under the generators matches the abstract law
    for (i, s), mat in by_abstract.items():
        assert mat * sigma == by_abstract[grp.mul((i, s), (1, 0))]
        assert mat * mu == by_abstract[grp.mul((i, s), (0, 1))]
    form = spec.form(ctx)
    for mat in (sigma, mu, by_abstract[(1, 1)], by_abstract[(m - 1, 2)]):
        assert is_automorphism(form, mat) is not None
    return MatrixGroup(spec, ctx, sigma, mu, grp, by_abstract)


def check_all_automorphisms(group):
    """Every element fixes the curve form up to scalar (full sweep)."""
    form = group.spec.form(group.ctx)
    for mat in group.maps():
        if is_automorphism(form, mat) is None:
            return False
    return True


# ---------------------------------------------------------------------------
# fixed points

def _closed_form_fixed_points(spec, ctx, tau_alpha, kind):
    """Fixed curve points of mu, tau*mu, tau^2*mu per the closed forms.

    ``tau_alpha``: the cubic root of unity appearing in tau's matrix (None
    when n is not 2 mod 3).  ``kind``: "mu", "tau_mu", "tau2_mu".
    """
    one = ctx.one()
    n, p = spec.n, spec.p
    if n % 3 == 2:
        if kind == "mu":
            return set()
        a = tau_alpha if kind == "tau_mu" else tau_alpha * tau_alpha
        return {ProjPoint(ctx, (a, one, one)), ProjPoint(ctx, (one, a, one)),
                ProjPoint(ctx, (one, one, a))}
    if kind != "mu":
        raise ValueError("tau exists only for n = 2 mod 3")
    if p == 3:
        return {ProjPoint(ctx, (one, one, one))}
    alpha = next(e for e in _cubic_roots(ctx) if e != 1)
    a2 = alpha * alpha
    return {ProjPoint(ctx, (alpha, a2, one)), ProjPoint(ctx, (a2, alpha, one))}


def _cubic_roots(ctx):
    from .gf import nth_roots_of_unity
    return nth_roots_of_unity(ctx, 3).elements


def fixed_points(mapping, spec, ctx, cap=None):
    """All ctx-rational curve points fixed by the map, canonically sorted.

    When the map is one of mu, tau*mu, tau^2*mu (for a group constructible
    over ctx), the scan is cross-checked against the closed-form fixed
    sets.
    """
    form = spec.form(ctx)
    pts = [pt for pt in enumerate_points(form, ctx, cap)
           if mapping.apply(pt) == pt]
    if (ctx.q - 1) % spec.m == 0:
        sigma, mu = generators(spec, ctx)
        expected = None
        if spec.n % 3 == 2:
            tau = _pow(sigma, spec.m // 3, ctx)
            tau_alpha = tau.rows[1][1] / tau.rows[2][2]
            for kind, mat in (("mu", mu), ("tau_mu", tau * mu),
                              ("tau2_mu", tau * tau * mu)):
                if mapping == mat:
                    expected = _closed_form_fixed_points(spec, ctx, tau_alpha, kind)
        else:
            if mapping == mu and (spec.p == 3 or (ctx.q - 1) % 3 == 0):
                expected = _closed_form_fixed_points(spec, ctx, None, "mu")
        if mapping == sigma:
            expected = set(vertex_points(ctx))
        if expected is not None:
            assert set(pts) == expected, "scan disagrees with the closed form"
    return sorted(pts, key=lambda pt: pt.key)


# ---------------------------------------------------------------------------
# ramification filtrations and the genus table

def _local_series(spec, ctx, point, truncation):
    """Chart data and the branch series at a smooth point."""
    coords = point.coords
    chart = max(i for i in range(3) if not coords[i].is_zero())
    others = [i for i in range(3) if i != chart]
    biv = spec.form(ctx).dehomogenized(chart)
    u0, v0 = coords[others[0]], coords[others[1]]
    fu = biv.partial(0)(u0, v0)
    fv = biv.partial(1)(u0, v0)
    if not fv.is_zero():
        ser = solve_series(biv, u0, v0, "x", truncation)
        param_idx, dep_idx = others[0], others[1]
        param0 = u0
    elif not fu.is_zero():
        ser = solve_series(biv, u0, v0, "y", truncation)
        param_idx, dep_idx = others[1], others[0]
        param0 = v0
    else:
        raise SingularPoint(f"no local parameter at {point!r}")
    chi = [None, None, None]
    none_pad = [ctx.zero()] * (truncation + 1)
    chi[chart] = [ctx.one()] + none_pad[1:]
    par = list(none_pad)
    par[0] = param0
    if truncation >= 1:
        par[1] = ctx.one()
    chi[param_idx] = par
    chi[dep_idx] = list(ser.coeffs)
    return chi, param_idx, chart


def _pullback_valuation(ctx, chi, param_idx, chart, mapping, truncation):
    """v_P(g(t) - t) for an automorphism g fixing the series center."""
    rows = mapping.rows
    num = [ctx.zero()] * (truncation + 1)
    den = [ctx.zero()] * (truncation + 1)
    for c in range(3):
        rn, rd = rows[param_idx][c], rows[chart][c]
        for k in range(truncation + 1):
            if not rn.is_zero():
                num[k] = num[k] + rn * chi[c][k]
            if not rd.is_zero():
                den[k] = den[k] + rd * chi[c][k]
    assert not den[0].is_zero(), "map does not fix the chart at the center"
    diff = _ser_mul(chi[param_idx], den, ctx, truncation)
    diff = [a - b for a, b in zip(num, diff)]
    for i, c in enumerate(diff):
        if not c.is_zero():
            return i
    raise SeriesTruncationTooShort(
        f"g(t) - t vanishes to order > {truncation}")


def ramification_filtration(spec, ctx, point, stab, truncation=None):
    """Orders |G_P^(i)| of the higher ramification groups at a fixed point.

    ``stab``: maps fixing the point (the identity may be included).  The
    series truncation is doubled on demand.
    """
    maps = [g for g in stab if not g.is_identity()]
    for g in maps:
        assert g.apply(point) == point, "stabilizer element moves the point"
    n = spec.n
    trunc = truncation if truncation is not None else 2 * (n + 1)
    while True:
        try:
            chi, param_idx, chart = _local_series(spec, ctx, point, trunc)
            vals = [_pullback_valuation(ctx, chi, param_idx, chart, g, trunc)
                    for g in maps]
            break
        except SeriesTruncationTooShort:
            trunc *= 2
            if trunc > 64 * (n + 1):
                raise
    orders = []
    i = 0
    while True:
        cnt = 1 + sum(1 for v in vals if v >= i + 1)
        orders.append(cnt)
        if cnt == 1:
            break
        i += 1
    return orders


@dataclass
class GenusRow:
    cls: SubgroupClass
    genus_closed: int
    genus_rh: int
    ram_contribution: int

    def to_json(self):
        out = self.cls.to_json()
        out["genus_closed"] = self.genus_closed
        out["genus_rh"] = self.genus_rh
        return out


def genus_closed_form(n, cls):
    """Quotient genus from the closed-form table, by class kind."""
    m = n * n - n + 1
    mod3 = n % 3 == 2

    def exact(num, den):
        assert num % den == 0, f"non-integral genus {num}/{den}"
        return num // den

    if cls.kind == "S":
        return exact(m - cls.d, 2 * cls.d)
    if cls.kind == "T0":
        return exact(n * n - n - 2, 6)
    if cls.kind == "T":
        if not mod3:
            return exact(n * n - n, 6)
        if cls.tau_power == 0:
            return exact(n * n - n + 4, 6)
        return exact(n * n - n - 2, 6)
    # composite TS
    d = cls.d
    if not mod3:
        return exact(m - d, 6 * d)
    if d % 3 == 0:
        return exact(m - d, 6 * d)
    if cls.tau_power == 0:
        return exact(m + 3 * d, 6 * d)
    return exact(m - 3 * d, 6 * d)


def genus_table(spec, ctx=None):
    """Quotient genera for every subgroup class, via the closed forms and
    independently via Riemann-Hurwitz on brute-force orbit data; the two
    must agree row by row."""
    if ctx is None:
        ctx = fixed_point_field(spec)
    group = generate_group(spec, ctx)
    grp = group.abstract
    form = spec.form(ctx)
    pts = enumerate_points(form, ctx)
    verts = set(vertex_points(ctx))

    stabs = {}
    for pt in pts:
        fix = [g for g, mat in group.by_abstract.items()
               if g != (0, 0) and mat.apply(pt) == pt]
        if fix:
            stabs[pt] = fix
    # stabilizer structure: full sigma-part at the triangle, order 3 elsewhere
    for pt, fix in stabs.items():
        if pt in verts:
            assert set(fix) == {(i, 0) for i in range(1, grp.m)}, \
                "triangle stabilizer is not exactly the diagonal part"
        else:
            assert len(fix) == 2 and all(s != 0 for _, s in fix), \
                "outside the triangle only order-3 stabilizers may appear"

    wild_expected = spec.p == 3 and spec.n % 3 != 2
    vals = {}
    for pt, fix in stabs.items():
        trunc = 2 * (spec.n + 1)
        chi, param_idx, chart = _local_series(spec, ctx, pt, trunc)
        for g in fix:
            v = _pullback_valuation(ctx, chi, param_idx, chart,
                                    group.by_abstract[g], trunc)
            if pt in verts or not wild_expected:
                assert v == 1, f"unexpected wild ramification at {pt!r}"
            else:
                assert v == 2, "wild second ramification group should vanish"
            vals[(pt, g)] = v

    two_g_minus_2 = (spec.n + 1) * (spec.n - 2)
    assert two_g_minus_2 == 2 * spec.genus - 2

    rows = []
    for cls in subgroup_classes(spec.n):
        total = 0
        for pt, fix in stabs.items():
            total += sum(vals[(pt, g)] for g in fix if g in cls.rep)
        rest = two_g_minus_2 - total
        assert rest % cls.order == 0, "Riemann-Hurwitz contribution mismatch"
        twog2 = rest // cls.order
        assert twog2 % 2 == 0
        g_rh = twog2 // 2 + 1
        g_closed = genus_closed_form(spec.n, cls)
        assert g_rh == g_closed >= 0, (
            f"{cls.label()}: closed form {g_closed} vs Riemann-Hurwitz {g_rh}")
        rows.append(GenusRow(cls, g_closed, g_rh, total))
    return rows
