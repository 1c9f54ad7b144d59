"""Acceptance suite: every criterion at its stated (exact) tolerance.

Each test prints one line so a -s run reads as a checklist.  The one
deliberately red row is the (n=5, p=3) automorphism-group entry, kept
faithful to its statement even though the parameters contradict the
smoothness requirement; see notes in that test.
"""

import random
import time
import pytest

from hurwitz_lab.autgroup import (
    _pow, check_all_automorphisms, fixed_point_field, fixed_points,
    generate_group, genus_table, ramification_filtration,
    verify_subgroup_classification,
)
from hurwitz_lab.curve import flex_scan, least_points_on_line, tangent_line
from hurwitz_lab.gf import make_field
from hurwitz_lab.hurwitz import (
    HurwitzSpec, cubic_g, div_dx, epsilon, fundamental_divisors,
    verify_weierstrass,
)
from hurwitz_lab.lucas import (
    check_maximality, cn_flex_census, total_flex_census,
    verify_fundamental_identity,
)
from hurwitz_lab.poly import Bivar, UniPoly, hasse_derivative, lucas_binom, solve_series


def _report(cid, started, detail=""):
    print(f"ACCEPTANCE {cid}: PASS ({time.time() - started:.1f}s) {detail}")


WEIERSTRASS_ROWS = [
    # (n, p, k0, cap, eps, |W|, j, degR)
    (6, 3, 6, 2 ** 50, 3, 124, 4, 133),
    (4, 5, 4, None, 2, 39, 3, 45),
    (6, 19, 3, 2 ** 65, 2, 31, 5, 105),
    (7, 2, 6, 2 ** 44, 2, 129, 3, 144),
]


@pytest.mark.parametrize("n,p,k0,cap,eps,wsize,jval,degr", WEIERSTRASS_ROWS)
def test_criterion_1_nonempty_rows(n, p, k0, cap, eps, wsize, jval, degr):
    t0 = time.time()
    rep = verify_weierstrass(HurwitzSpec(n, p), k0=k0, arith_cap=cap)
    ws = rep.wset
    assert ws.eps_case.eps == eps
    assert len(ws.w) == wsize
    assert all(r.j == jval for r in ws.w)
    assert ws.degR == degr
    assert sum(r.j - eps for r in ws.records) == degr
    assert rep.soundness and rep.completeness
    _report(f"1 (n={n}, p={p})", t0,
            f"|W|={wsize}, j={jval}, degR={degr}, scan GF({p}^{k0})")


@pytest.mark.parametrize("n,p,k0", [(5, 2, 8), (4, 3, 6)])
def test_criterion_1_empty_rows(n, p, k0):
    t0 = time.time()
    rep = verify_weierstrass(HurwitzSpec(n, p), k0=k0)
    assert rep.wset.w == []
    assert {r.j for r in rep.scan_records} == {n}
    assert len(rep.scan_records) == 3        # nothing beyond the triangle
    _report(f"1 (n={n}, p={p}, empty)", t0, f"scan GF({p}^{k0}) clean")


def test_criterion_2_discriminant_identity():
    t0 = time.time()
    checked = 0
    for p in [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]:
        for n in range(3, 61):
            if (n * n - n) % p == 0 or (n * n - n + 1) % p == 0:
                continue
            cubic_g(HurwitzSpec(n, p))   # asserts disc = m^4 (n^2-4n+7)^2
            checked += 1
    assert checked == 737
    _report("2", t0, f"{checked} (n, p) pairs")


def test_criterion_3_fundamental_divisors():
    t0 = time.time()
    branch_primes = {4: (2, 3, 5), 5: (5, 2, 11), 6: (3, 5, 47), 7: (7, 2, 37)}
    for n, ps in branch_primes.items():
        for p in ps:
            spec = HurwitzSpec(n, p)
            fundamental_divisors(spec)   # asserts the three line cuts exactly
            d = div_dx(spec)
            assert d.degree() == (n + 1) * (n - 2)
    _report("3", t0, "line cuts and div(dx) degrees for n = 4..7")


@pytest.mark.parametrize("n,p,order", [(4, 5, 39), (5, 2, 63), (6, 5, 93)])
def test_criterion_4_group_orders(n, p, order):
    t0 = time.time()
    group = generate_group(HurwitzSpec(n, p))
    assert group.order == order
    assert check_all_automorphisms(group)
    sigma, mu = group.sigma, group.mu
    assert mu * sigma * mu.inverse() == _pow(sigma, n - 1, group.ctx)
    _report(f"4 (n={n}, p={p})", t0, f"order {order}")


def test_criterion_4_row_n5_p3_as_stated():
    """The criterion lists (n=5, p=3) with order 63.  As stated this is
    unsatisfiable: 3 divides 5^2-5+1 = 21, so the curve is singular, and no
    characteristic-3 field has an element of multiplicative order 21
    (x^21 - 1 = (x^7 - 1)^3), so the diagonal generator cannot exist.  The
    row is kept faithful and red; the decisions ledger has the analysis,
    and the (5, 13) row below covers order 63 at a second prime.
    """
    group = generate_group(HurwitzSpec(5, 3))
    assert group.order == 63


def test_criterion_4_supplementary_row_n5_p13():
    t0 = time.time()
    group = generate_group(HurwitzSpec(5, 13))
    assert group.order == 63
    assert check_all_automorphisms(group)
    _report("4 (n=5, p=13, supplementary)", t0, "order 63")


def test_criterion_5_subgroup_classification():
    t0 = time.time()
    for n, m in [(4, 13), (5, 21), (6, 31)]:
        classes = verify_subgroup_classification(n)
        if n == 5:
            by_label = {c.label(): c for c in classes}
            assert by_label["T0"].class_size == 1
            assert all(by_label[f"T(tau^{j})"].class_size == 7 for j in (1, 2))
            assert by_label["T(mu)"].class_size == 7
    _report("5", t0, "oracle match for m = 13, 21, 31")


def test_criterion_6_fixed_points_and_wild_ramification():
    t0 = time.time()
    # (n=4, p=3): mu fixes exactly (1:1:1)
    spec = HurwitzSpec(4, 3)
    ctx = fixed_point_field(spec)
    group = generate_group(spec, ctx)
    one = ctx.one()
    pts = fixed_points(group.mu, spec, ctx)
    assert [pt.coords for pt in pts] == [(one, one, one)]
    # filtration (3, 3, 1) via a2 = n/(n+1) = 2 != 1 in GF(3)
    f3 = make_field(3, 1)
    f = Bivar(f3, {(1, 4): f3.one(), (0, 1): f3.one(), (4, 0): f3.one()})
    ser = solve_series(f, f3.one(), f3.one(), "x", truncation=4)
    assert ser.coeffs[2] == f3.element(4) / f3.element(5) == 2 != f3.one()
    stab = [group.by_abstract[(0, s)] for s in range(3)]
    assert ramification_filtration(spec, ctx, pts[0], stab) == [3, 3, 1]
    # (n=5, p=2): mu free; tau mu and tau^2 mu fix the listed triples
    spec = HurwitzSpec(5, 2)
    ctx = fixed_point_field(spec)
    group = generate_group(spec, ctx)
    assert fixed_points(group.mu, spec, ctx) == []
    tau = _pow(group.sigma, spec.m // 3, ctx)
    alpha = tau.rows[1][1] / tau.rows[2][2]
    one = ctx.one()
    from hurwitz_lab.curve import ProjPoint
    for mat, a in ((tau * group.mu, alpha), (tau * tau * group.mu, alpha ** 2)):
        got = set(fixed_points(mat, spec, ctx))
        expected = {ProjPoint(ctx, (a, one, one)), ProjPoint(ctx, (one, a, one)),
                    ProjPoint(ctx, (one, one, a))}
        assert got == expected
    _report("6", t0, "fixed sets and filtration (3,3,1)")


def test_criterion_7_genus_tables():
    t0 = time.time()
    rows4 = genus_table(HurwitzSpec(4, 3))
    got4 = {r.cls.label(): r.genus_rh for r in rows4}
    assert got4["S_13"] == 0
    rows5 = genus_table(HurwitzSpec(5, 2))
    got5 = {r.cls.label(): r.genus_rh for r in rows5}
    assert got5["T0"] == 3
    assert got5["T(mu)"] == 4
    assert got5["TS(d=7)"] == 1
    assert got5["TS(d=7, tau^1)"] == 0 and got5["TS(d=7, tau^2)"] == 0
    for rows in (rows4, rows5):
        for row in rows:
            assert row.genus_rh == row.genus_closed >= 0
    _report("7", t0, f"{len(rows4)} + {len(rows5)} rows, closed form == RH")


def test_criterion_8_lucas_family():
    t0 = time.time()
    for p in (3, 5, 7, 13, 19):
        for n in range(2, 51):
            assert verify_fundamental_identity(n, p)
    for n, p, r, count in [(3, 5, 1, 36), (4, 7, 1, 92), (5, 3, 2, 190)]:
        rep = check_maximality(n, p, r)
        assert rep.point_count == count == rep.hw_bound and rep.is_maximal
    assert cn_flex_census(4, 7, 1).total_flex_count == 12
    assert cn_flex_census(5, 19, 1).total_flex_count == 5
    spec = HurwitzSpec(4, 5)
    ctx = make_field(5, 4)
    assert total_flex_census(spec.form(ctx), ctx).total_flex_count == 0
    _report("8", t0, "identities, maximality 36/92/190, censuses 12/5/0")


ACCEPTANCE_FIELDS = [(2, 8), (3, 6), (5, 4), (19, 3), (13, 1), (7, 2)]


@pytest.mark.parametrize("p,k", ACCEPTANCE_FIELDS)
def test_criterion_9_field_axioms(p, k):
    t0 = time.time()
    ctx = make_field(p, k)
    rng = random.Random(1000 * p + k)
    one = ctx.one()
    qk = p ** k
    for _ in range(10 ** 4):
        a = ctx.from_index(rng.randrange(ctx.q))
        b = ctx.from_index(rng.randrange(ctx.q))
        assert (a + b) ** p == a ** p + b ** p
        assert a ** qk == a
        if not a.is_zero():
            assert a * a.inv() == one
    _report(f"9 (GF({p}^{k}))", t0, "10^4 samples")


def test_criterion_9_field_axioms_big_field():
    t0 = time.time()
    ctx = make_field(3, 30, arith_cap=2 ** 50)
    rng = random.Random(330)
    one = ctx.one()
    q = ctx.q
    for _ in range(10 ** 4):
        a = ctx.from_index(rng.randrange(q))
        b = ctx.from_index(rng.randrange(q))
        assert (a + b) ** 3 == a ** 3 + b ** 3
        assert a ** q == a
        if not a.is_zero():
            assert a * a.inv() == one
    _report("9 (GF(3^30))", t0, "10^4 samples, vector path")


def test_criterion_9_hasse_composition():
    t0 = time.time()
    rng = random.Random(424242)
    fields = [make_field(5, 1), make_field(2, 3), make_field(3, 2)]
    for trial in range(10 ** 3):
        ctx = fields[trial % 3]
        deg = rng.randrange(0, 14)
        f = UniPoly(ctx, [ctx.from_index(rng.randrange(ctx.q))
                          for _ in range(deg + 1)])
        r, s = rng.randrange(0, 6), rng.randrange(0, 6)
        lhs = hasse_derivative(hasse_derivative(f, s), r)
        rhs = hasse_derivative(f, r + s) * ctx.element(lucas_binom(r + s, r, ctx.p))
        assert lhs == rhs
    _report("9 (Hasse composition)", t0, "10^3 random polynomials")


def test_criterion_9_b_independence_on_flex_records():
    t0 = time.time()
    checked = 0
    for n, p, k in [(4, 5, 4), (6, 3, 6), (7, 2, 6)]:
        spec = HurwitzSpec(n, p)
        ctx = make_field(p, k)
        form = spec.form(ctx)
        eps = epsilon(spec).eps
        for rec in flex_scan(form, ctx, eps):
            tl = tangent_line(form, rec.point)
            from hurwitz_lab.poly import restrict_to_line
            bs = least_points_on_line(tl, rec.point, 3)
            vals = {restrict_to_line(form, rec.point.coords, b.coords).valuation()
                    for b in bs}
            assert vals == {rec.j}
            checked += 1
    # triangle + rational W points of the three scans: 3 + (3+4) + (3+3)
    assert checked == 16
    _report("9 (B-independence)", t0, f"{checked} flex records, 3 choices each")
