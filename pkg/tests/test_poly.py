import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitz_lab.errors import DegeneratePair, SingularBranch
from hurwitz_lab.gf import make_field
from hurwitz_lab.poly import (
    Bivar, TriForm, UniPoly, hasse_derivative, lucas_binom, restrict_to_line,
    solve_series,
)


def up(ctx, *ints):
    return UniPoly.from_ints(ctx, ints)


def test_unipoly_arithmetic():
    f7 = make_field(7, 1)
    a = up(f7, 1, 2, 3)
    b = up(f7, 5, 1)
    assert (a * b).coeffs == up(f7, 5, 11, 17, 3).coeffs
    q, r = (a * b + up(f7, 2)).divmod(a)
    assert q == b and r == up(f7, 2)
    assert a.gcd(a * b) == a.monic()
    assert up(f7, 0).is_zero() and up(f7, 0).degree == -1


def test_lucas_binomials():
    assert lucas_binom(5, 2, 7) == 10 % 7
    assert lucas_binom(7, 2, 7) == 0       # C(7,2) = 21
    assert lucas_binom(10, 5, 2) == 0      # C(10,5) = 252
    for m in range(20):
        for r in range(m + 1):
            from math import comb
            assert lucas_binom(m, r, 5) == comb(m, r) % 5


def test_hasse_derivative_basic():
    f5 = make_field(5, 1)
    x2 = up(f5, 0, 0, 1)
    assert hasse_derivative(x2, 1) == up(f5, 0, 2)
    # D^2 (x^p) = C(p, 2) x^(p-2) = 0 for p > 2
    xp = UniPoly(f5, [f5.zero()] * 5 + [f5.one()])
    assert hasse_derivative(xp, 2).is_zero()
    assert hasse_derivative(xp, 1).is_zero()  # C(5,1) = 5
    assert hasse_derivative(x2, 0) == x2


@pytest.mark.parametrize("p,k", [(5, 1), (2, 3), (3, 2)])
def test_hasse_composition_law(p, k, rng):
    ctx = make_field(p, k)
    for _ in range(60):
        deg = rng.randrange(0, 12)
        f = UniPoly(ctx, [ctx.from_index(rng.randrange(ctx.q))
                          for _ in range(deg + 1)])
        r = rng.randrange(0, 5)
        s = rng.randrange(0, 5)
        lhs = hasse_derivative(hasse_derivative(f, s), r)
        rhs = hasse_derivative(f, r + s) * ctx.element(lucas_binom(r + s, r, p))
        assert lhs == rhs


def hurwitz_form(ctx, n):
    one = ctx.one()
    return TriForm(ctx, n + 1, {(1, n, 0): one, (0, 1, n): one, (n, 0, 1): one})


def test_triform_eval_and_partials():
    f5 = make_field(5, 1)
    F = hurwitz_form(f5, 4)
    one, zero = f5.one(), f5.zero()
    assert F((one, zero, zero)).is_zero()
    assert F((one, one, one)) == 3
    # partial against the monomial derivative rule, monomial by monomial
    for axis in range(3):
        G = F.partial(axis)
        for (i, j, l), c in F.terms.items():
            e = (i, j, l)[axis]
            ne = list((i, j, l))
            ne[axis] -= 1
            if e % 5 == 0:
                assert tuple(ne) not in G.terms
            else:
                assert G.terms[tuple(ne)] == c * e


def test_restrict_to_line_hurwitz_vertex():
    # line Z = 0 through (1:0:0) and (0:1:0) meets H_4 with order 4 then 1
    f5 = make_field(5, 1)
    F = hurwitz_form(f5, 4)
    one, zero = f5.one(), f5.zero()
    p1 = (one, zero, zero)
    p2 = (zero, one, zero)
    r = restrict_to_line(F, p1, p2)
    assert r.valuation() == 4
    assert restrict_to_line(F, p2, p1).valuation() == 1
    # off-curve point: order 0
    r2 = restrict_to_line(F, (one, one, one), p2)
    assert r2.valuation() == 0
    # t = 0 recovers F(A)
    assert r2.coeffs[0] == F((one, one, one))
    with pytest.raises(DegeneratePair):
        restrict_to_line(F, p1, (f5.element(2), zero, zero))


def test_restrict_order_independent_of_b(rng):
    f5 = make_field(5, 2)
    F = hurwitz_form(f5, 4)
    one, zero = f5.one(), f5.zero()
    a = (one, zero, zero)
    # every point B on the line Z=0 off A gives the same vanishing order
    orders = set()
    for i in range(1, f5.q):
        b = (f5.from_index(rng.randrange(f5.q)), f5.from_index(i), zero)
        orders.add(restrict_to_line(F, a, b).valuation())
    assert orders == {4}


def test_solve_series_hurwitz_origin():
    # x y^4 + y + x^4 = 0 at (0,0): y = -x^4 + O(x^5)
    f5 = make_field(5, 1)
    zero, one = f5.zero(), f5.one()
    f = Bivar(f5, {(1, 4): one, (0, 1): one, (4, 0): one})
    s = solve_series(f, zero, zero, "x", truncation=5)
    assert [c.index for c in s.coeffs[:5]] == [0, 0, 0, 0, (-1) % 5]


def test_solve_series_wild_center():
    # p=3, n=4 at (1,1): a1 = -1, a2 = n/(n+1) = 2 in GF(3)
    f3 = make_field(3, 1)
    one = f3.one()
    f = Bivar(f3, {(1, 4): one, (0, 1): one, (4, 0): one})
    s = solve_series(f, one, one, "x", truncation=6)
    assert s.coeffs[0] == 1
    assert s.coeffs[1] == f3.element(-1)
    assert s.coeffs[2] == f3.element(4) / f3.element(5)
    assert s.coeffs[2] == 2


def test_solve_series_tangent_slope():
    # truncation 1: the slope is -f_x/f_y
    f7 = make_field(7, 1)
    one = f7.one()
    f = Bivar(f7, {(1, 4): one, (0, 1): one, (4, 0): one})
    x0, y0 = f7.element(0), f7.element(0)
    s = solve_series(f, x0, y0, "x", truncation=1)
    fx = f.partial(0)(x0, y0)
    fy = f.partial(1)(x0, y0)
    assert s.coeffs[1] == -fx / fy


def test_solve_series_singular_branch():
    f5 = make_field(5, 1)
    one, zero = f5.one(), f5.zero()
    f = Bivar(f5, {(0, 2): one, (3, 0): -one})  # y^2 = x^3, cusp at 0
    with pytest.raises(SingularBranch):
        solve_series(f, zero, zero, "x", truncation=4)


@given(coeffs=st.lists(st.integers(0, 6), min_size=1, max_size=10),
       r=st.integers(0, 4), s=st.integers(0, 4))
@settings(max_examples=150, deadline=None)
def test_hasse_composition_hypothesis(coeffs, r, s):
    ctx = make_field(7, 1)
    f = UniPoly.from_ints(ctx, coeffs)
    lhs = hasse_derivative(hasse_derivative(f, s), r)
    rhs = hasse_derivative(f, r + s) * ctx.element(lucas_binom(r + s, r, 7))
    assert lhs == rhs


@given(ai=st.integers(0, 24), bi=st.integers(0, 24))
@settings(max_examples=100, deadline=None)
def test_restriction_at_zero_is_value_at_base_point(ai, bi):
    # an affine point and a point at infinity never coincide projectively
    ctx = make_field(5, 2)
    F = hurwitz_form(ctx, 4)
    one, zero = ctx.one(), ctx.zero()
    a = (ctx.from_index(ai), ctx.from_index(bi), one)
    r = restrict_to_line(F, a, (one, zero, zero))
    assert r[0] == F(a)


def test_solve_series_param_y():
    f5 = make_field(5, 1)
    one, zero = f5.zero(), f5.one()
    f = Bivar(f5, {(1, 0): f5.one(), (0, 3): -f5.one()})  # x = y^3
    s = solve_series(f, f5.zero(), f5.zero(), "y", truncation=4)
    # x(t) = t^3
    assert [c.index for c in s.coeffs] == [0, 0, 0, 1, 0]
