import pytest

from hurwitz_lab.errors import CharDividesN, CharTwo, PreconditionViolated
from hurwitz_lab.gf import make_field, roots_of
from hurwitz_lab.hurwitz import HurwitzSpec
from hurwitz_lab.lucas import (
    check_maximality, cn_curve, cn_flex_census, lucas_poly,
    total_flex_census, verify_fundamental_identity,
)


def ints(poly):
    return [c.index for c in poly.coeffs]


def test_recurrence_small():
    assert ints(lucas_poly(0, 5)) == [2]
    assert ints(lucas_poly(1, 5)) == [0, 1]
    assert ints(lucas_poly(2, 5)) == [(-2) % 5, 0, 1]          # x^2 - 2
    assert ints(lucas_poly(3, 5)) == [0, (-3) % 5, 0, 1]       # x^3 - 3x
    assert ints(lucas_poly(4, 7)) == [2, 0, (-4) % 7, 0, 1]    # x^4 - 4x^2 + 2
    with pytest.raises(CharTwo):
        lucas_poly(4, 2)


@pytest.mark.parametrize("p", [3, 5, 7, 13, 19])
def test_fundamental_identity_sweep(p):
    for n in range(2, 51):
        assert verify_fundamental_identity(n, p)


def test_cn_curve_form():
    f5 = make_field(5, 1)
    F = cn_curve(3, 5)
    # Y^3 - X^3 + 3 X Z^2
    assert F.terms[(0, 3, 0)] == 1
    assert F.terms[(3, 0, 0)] == f5.element(-1)
    assert F.terms[(1, 0, 2)] == 3
    assert F.d == 3
    with pytest.raises(CharDividesN):
        cn_curve(5, 5)
    # the roots of the defining polynomial give curve points (x_i : 0 : 1)
    ctx = make_field(7, 2)
    G = cn_curve(4, 7, ctx)
    for root in roots_of(lucas_poly(4, 7), ctx=ctx):
        assert G((root, ctx.zero(), ctx.one())).is_zero()


@pytest.mark.parametrize("n,p,r,count", [(3, 5, 1, 36), (4, 7, 1, 92),
                                         (5, 3, 2, 190)])
def test_maximality(n, p, r, count):
    rep = check_maximality(n, p, r)
    assert rep.point_count == count
    assert rep.hw_bound == count
    assert rep.is_maximal
    assert rep.genus == (n - 1) * (n - 2) // 2


def test_maximality_precondition():
    with pytest.raises(PreconditionViolated):
        check_maximality(4, 5, 1)   # 4 does not divide (5+1)/2 = 3


def test_lucas_roots_simple_and_rational():
    # the roots of the defining polynomial are simple and live in GF(p^2r)
    for n, p, r in [(4, 7, 1), (5, 19, 1), (5, 3, 2)]:
        ctx = make_field(p, 2 * r)
        roots = roots_of(lucas_poly(n, p), ctx=ctx)
        assert len(roots) == n
        assert len(set(e.index for e in roots)) == n


def test_census_dichotomy():
    c = cn_flex_census(4, 7, 1)           # n = (p+1)/2: Fermat-equivalent
    assert c.total_flex_count == 12 and c.dichotomy == "3n"
    c = cn_flex_census(5, 19, 1)          # n < (p+1)/2 = 10
    assert c.total_flex_count == 5 and c.dichotomy == "n"


def test_census_total_flexes_are_lucas_roots():
    # in the "n" case the total inflections are exactly (x_i : 0 : 1)
    ctx = make_field(19, 2)
    form = cn_curve(5, 19, ctx)
    from hurwitz_lab.curve import flex_scan
    recs = flex_scan(form, ctx, form.d - 1)
    assert len(recs) == 5
    for rec in recs:
        x, y, z = rec.point.coords
        assert y.is_zero() and z == 1
        assert rec.j == 5


def test_hurwitz_has_no_total_inflections():
    spec = HurwitzSpec(4, 5)
    ctx = make_field(5, 4)
    census = total_flex_census(spec.form(ctx), ctx, "H4")
    assert census.total_flex_count == 0
