"""Projective plane-curve geometry over explicit finite fields.

Points and lines are normalized so the last nonzero coordinate is 1,
making equality and set comparison exact.  The canonical order on points
is lexicographic in the element indices of the normalized coordinates;
every report and scan result is sorted that way.
"""

from itertools import count

from . import _backend as be
from .errors import DegeneratePair, PreconditionViolated, SingularPoint, SizeCapExceeded
from .gf import enum_cap
from .poly import restrict_to_line


class ProjPoint:
    """A point of the projective plane, canonically normalized."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx, coords):
        x, y, z = coords
        last = None
        for i, c in enumerate((x, y, z)):
            if not c.is_zero():
                last = i
        if last is None:
            raise ValueError("(0:0:0) is not a projective point")
        pivot = (x, y, z)[last]
        if pivot == 1:
            self.coords = (x, y, z)
        else:
            inv = pivot.inv()
            self.coords = (x * inv, y * inv, z * inv)
        self.ctx = ctx

    @property
    def key(self):
        x, y, z = self.coords
        return (x.index, y.index, z.index)

    def __eq__(self, other):
        return (isinstance(other, ProjPoint) and self.ctx is other.ctx
                and self.coords == other.coords)

    def __hash__(self):
        return hash((id(self.ctx), self.coords))

    def map_coords(self, fn, new_ctx):
        return ProjPoint(new_ctx, tuple(fn(c) for c in self.coords))

    def to_json(self):
        return [c.digits() for c in self.coords]

    def __repr__(self):
        return "(" + ":".join(str(list(c.coeffs)) for c in self.coords) + ")"


def vertex_points(ctx):
    """The fundamental triangle (1:0:0), (0:1:0), (0:0:1)."""
    o, z = ctx.one(), ctx.zero()
    return (ProjPoint(ctx, (o, z, z)), ProjPoint(ctx, (z, o, z)),
            ProjPoint(ctx, (z, z, o)))


class ProjLine:
    """A line in dual coordinates, normalized like points."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx, coords):
        pt = ProjPoint(ctx, coords)
        self.ctx = ctx
        self.coords = pt.coords

    @classmethod
    def through(cls, a, b):
        ax, ay, az = a.coords
        bx, by, bz = b.coords
        cross = (ay * bz - az * by, az * bx - ax * bz, ax * by - ay * bx)
        if all(c.is_zero() for c in cross):
            raise DegeneratePair("two equal points do not span a line")
        return cls(a.ctx, cross)

    def contains(self, pt):
        a, b, c = self.coords
        x, y, z = pt.coords
        return (a * x + b * y + c * z).is_zero()

    def __eq__(self, other):
        return (isinstance(other, ProjLine) and self.ctx is other.ctx
                and self.coords == other.coords)

    def __hash__(self):
        return hash((id(self.ctx), "line", self.coords))

    def __repr__(self):
        return "Line" + repr(ProjPoint(self.ctx, self.coords))


class FlexRecord:
    """A curve point with its tangent-intersection order j(P)."""

    __slots__ = ("point", "j", "field")

    def __init__(self, point, j, field):
        self.point = point
        self.j = j
        self.field = field

    def to_json(self):
        return {"point": self.point.to_json(), "j": self.j,
                "field": {"p": self.field.p, "k": self.field.k}}

    def __eq__(self, other):
        return (isinstance(other, FlexRecord) and self.point == other.point
                and self.j == other.j)

    def __hash__(self):
        return hash((self.point, self.j))

    def __repr__(self):
        return f"FlexRecord({self.point!r}, j={self.j})"


def line_points_ordered(line):
    """Generate the points of a line in canonical (index) order, lazily.

    Used to pick the deterministically least auxiliary points for line
    restrictions; never materializes the whole line on big fields.
    """
    ctx = line.ctx
    a, b, c = line.coords
    one, zero = ctx.one(), ctx.zero()
    a0, b0 = a.is_zero(), b.is_zero()

    def affine(x, y):
        return ProjPoint(ctx, (x, y, one))

    if not b0:
        binv = b.inv()
        for ix in count(0):
            if ix >= ctx.q:
                return
            x = ctx.from_index(ix)
            cands = [affine(x, -(a * x + c) * binv)]
            if ix == 1 and a0:
                cands.append(ProjPoint(ctx, (one, zero, zero)))
            if (a * x + b).is_zero():
                cands.append(ProjPoint(ctx, (x, one, zero)))
            yield from sorted(cands, key=lambda pt: pt.key)
    elif not a0:
        # line x = x*; points: (0:1:0) and the fiber over x*
        xstar = -c / a
        fiber_first = xstar.index == 0
        inf_pt = ProjPoint(ctx, (zero, one, zero))
        emitted_inf = False
        for iy in range(ctx.q):
            pt = affine(xstar, ctx.from_index(iy))
            if not emitted_inf and (fiber_first and iy >= 1 or not fiber_first):
                yield inf_pt
                emitted_inf = True
            yield pt
        if not emitted_inf:
            yield inf_pt
    else:
        # line z = 0
        yield ProjPoint(ctx, (zero, one, zero))
        yield ProjPoint(ctx, (one, zero, zero))
        for ix in range(1, ctx.q):
            yield ProjPoint(ctx, (ctx.from_index(ix), one, zero))


def least_points_on_line(line, exclude, count_needed=2):
    out = []
    for pt in line_points_ordered(line):
        if pt != exclude:
            out.append(pt)
            if len(out) == count_needed:
                return out
    raise DegeneratePair("line has too few points")  # q >= 2 makes this unreachable


def enumerate_points(form, ctx, cap=None):
    """All ctx-rational zeros of the form, canonically sorted."""
    if ctx.q > enum_cap(cap):
        raise SizeCapExceeded(f"point enumeration over {ctx!r} above cap")
    tables = ctx.tables()
    one, zero = ctx.one(), ctx.zero()
    pts = []
    if tables is not None:
        exp, log = tables
        terms = [(i, j, l, ctx._pack(cf.coeffs))
                 for (i, j, l), cf in form.sorted_terms()]
        raw = be.scan_form(ctx.p, ctx.k, exp, log, terms)
        for (xi, yi, zi) in raw:
            coords = (ctx.from_index(xi),
                      one if (zi == 0 and yi == 1) else ctx.from_index(yi),
                      one if zi == 1 else zero)
            pts.append(ProjPoint(ctx, coords))
    else:
        # slow reference path for fields above the table cap
        for x in ctx.elements(cap):
            for y in ctx.elements(cap):
                if form((x, y, one)).is_zero():
                    pts.append(ProjPoint(ctx, (x, y, one)))
        for x in ctx.elements(cap):
            if form((x, one, zero)).is_zero():
                pts.append(ProjPoint(ctx, (x, one, zero)))
        if form((one, zero, zero)).is_zero():
            pts.append(ProjPoint(ctx, (one, zero, zero)))
    pts.sort(key=lambda pt: pt.key)
    return pts


def tangent_line(form, point):
    """Tangent line at a smooth point, from the formal gradient."""
    gx, gy, gz = form.gradient(point.coords)
    if gx.is_zero() and gy.is_zero() and gz.is_zero():
        raise SingularPoint(f"gradient vanishes at {point!r}")
    line = ProjLine(point.ctx, (gx, gy, gz))
    # Euler's relation makes this automatic, in every characteristic
    assert line.contains(point), "tangent line misses its base point"
    return line


def intersection_order(form, point, field=None):
    """j(P): the vanishing order of the form restricted to the tangent.

    Computed twice with the two least auxiliary points on the tangent;
    the orders must agree (the choice is immaterial, and checked).
    """
    if not form(point.coords).is_zero():
        raise PreconditionViolated("point is not on the curve")
    tl = tangent_line(form, point)
    b1, b2 = least_points_on_line(tl, point, 2)
    v1 = restrict_to_line(form, point.coords, b1.coords).valuation()
    v2 = restrict_to_line(form, point.coords, b2.coords).valuation()
    if v1 is None or v2 is None:
        raise PreconditionViolated("tangent line is a component of the form")
    assert v1 == v2, "intersection order depends on the auxiliary point"
    assert 2 <= v1 <= form.d, f"j = {v1} outside [2, {form.d}]"
    return FlexRecord(point, v1, field if field is not None else point.ctx)


def flex_scan(form, ctx, eps, cap=None):
    """All ctx-rational smooth points with j(P) > eps, canonically sorted.

    Every enumerated point must be smooth (the gradient check doubles as
    the per-point smoothness spot check).
    """
    out = []
    for pt in enumerate_points(form, ctx, cap):
        rec = intersection_order(form, pt, ctx)
        if rec.j > eps:
            out.append(rec)
    return out
