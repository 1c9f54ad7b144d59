"""Lucas-type polynomials and the plane curves y^n = L_n(x).

L_0 = 2, L_1 = x, L_n = x L_{n-1} - L_{n-2} over GF(p), p odd.  For
n dividing (p^r + 1)/2 the projective curve attains the Hasse-Weil upper
bound over GF(p^(2r)); its total inflection count is n or 3n, with 3n
exactly in the Fermat-equivalent case n = (p^r + 1)/2.  Both facts are
checked here by exhaustive scans.
"""

from dataclasses import dataclass

from .curve import flex_scan
from .errors import CharDividesN, CharTwo, PreconditionViolated
from .gf import make_field
from .poly import TriForm, UniPoly


def lucas_poly(n, p):
    """The n-th polynomial of the recurrence, over GF(p) (p odd)."""
    if p == 2:
        raise CharTwo("the Lucas family needs odd characteristic")
    ctx = make_field(p, 1)
    prev = UniPoly.from_ints(ctx, [2])
    if n == 0:
        return prev
    cur = UniPoly.x(ctx)
    for _ in range(n - 1):
        prev, cur = cur, UniPoly.x(ctx) * cur - prev
    if n % p:
        sep = cur.gcd(cur.derivative())
        assert sep.degree == 0, "recurrence polynomial is not separable"
    return cur


def verify_fundamental_identity(n, p):
    """x^n L_n((x^2+1)/x) == x^(2n) + 1, checked term by term.

    The substitution is evaluated with denominators cleared: coefficient
    c_k contributes c_k (x^2+1)^k x^(n-k).
    """
    cs = [c.coeffs[0] for c in lucas_poly(n, p).coeffs]

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % p
        return out

    total = [0] * (2 * n + 1)
    power = [1]                      # (x^2 + 1)^k, incrementally
    for k, ck in enumerate(cs):
        if ck:
            for i, coeff in enumerate(power):
                total[i + n - k] = (total[i + n - k] + ck * coeff) % p
        power = mul(power, [1, 0, 1])
    expected = [0] * (2 * n + 1)
    expected[0] = 1
    expected[2 * n] = 1
    return total == expected


def cn_curve(n, p, ctx=None):
    """Homogeneous degree-n form Y^n - Z^n L_n(X/Z) over GF(p) (or ctx)."""
    if p % 2 == 0:
        raise CharTwo("the Lucas family needs odd characteristic")
    if n % p == 0:
        raise CharDividesN(f"{p} divides n = {n}: the curve degenerates")
    if ctx is None:
        ctx = make_field(p, 1)
    ln = lucas_poly(n, p)
    terms = {(0, n, 0): ctx.one()}
    for k, c in enumerate(ln.coeffs):
        if not c.is_zero():
            terms[(k, 0, n - k)] = ctx.element(-c.coeffs[0])
    return TriForm(ctx, n, terms)


@dataclass
class MaximalityReport:
    p: int
    r: int
    n: int
    q: int
    genus: int
    point_count: int
    hw_bound: int
    is_maximal: bool

    def to_json(self):
        return {"p": self.p, "r": self.r, "n": self.n, "q": self.q,
                "genus": self.genus, "point_count": self.point_count,
                "hw_bound": self.hw_bound, "is_maximal": self.is_maximal}


def check_maximality(n, p, r, cap=None):
    """Exhaustive projective point count vs the Hasse-Weil upper bound."""
    if ((p ** r + 1) // 2) % n or (p ** r + 1) % 2:
        raise PreconditionViolated(f"n = {n} does not divide (p^r + 1)/2")
    ctx = make_field(p, 2 * r)
    form = cn_curve(n, p, ctx)
    from .curve import enumerate_points
    pts = enumerate_points(form, ctx, cap)
    for pt in pts:  # smoothness spot check at every scanned point
        gx, gy, gz = form.gradient(pt.coords)
        assert not (gx.is_zero() and gy.is_zero() and gz.is_zero()), \
            f"singular point {pt!r}"
    genus = (n - 1) * (n - 2) // 2
    q = p ** (2 * r)
    bound = q + 1 + 2 * genus * p ** r
    count = len(pts)
    assert count <= bound, "Hasse-Weil bound violated: scan or bound is wrong"
    return MaximalityReport(p, r, n, q, genus, count, bound, count == bound)


@dataclass
class FlexCensus:
    curve_id: str
    field: object
    total_flex_count: int
    dichotomy: str      # "n", "3n", or "other"

    def to_json(self):
        return {"curve": self.curve_id,
                "field": {"p": self.field.p, "k": self.field.k},
                "total_flex_count": self.total_flex_count,
                "dichotomy": self.dichotomy}


def total_flex_census(form, ctx, curve_id="curve", cap=None):
    """Count the ctx-rational points whose tangent meets the curve only
    there (contact order equal to the degree)."""
    records = flex_scan(form, ctx, form.d - 1, cap)
    count = len(records)
    d = form.d
    if count == d:
        verdict = "n"
    elif count == 3 * d:
        verdict = "3n"
    else:
        verdict = "other"
    return FlexCensus(curve_id, ctx, count, verdict)


def cn_flex_census(n, p, r, cap=None):
    """Census for the Lucas curve over its maximality field GF(p^(2r)),
    with the n-versus-3n dichotomy asserted (for n > 3)."""
    if ((p ** r + 1) // 2) % n:
        raise PreconditionViolated(f"n = {n} does not divide (p^r + 1)/2")
    ctx = make_field(p, 2 * r)
    form = cn_curve(n, p, ctx)
    census = total_flex_census(form, ctx, f"C_{n}/GF({p}^{2 * r})", cap)
    if n > 3:
        fermat_case = n == (p ** r + 1) // 2
        expected = 3 * n if fermat_case else n
        assert census.total_flex_count == expected, (
            f"dichotomy: counted {census.total_flex_count}, expected {expected}")
    return census
