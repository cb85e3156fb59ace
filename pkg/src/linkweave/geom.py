"""Exact linking numbers of disjoint piecewise-linear closed curves in R^3.

Everything on the decision path is exact rational arithmetic; floating point
appears only in gauss_linking_estimate, the independent numeric cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

try:
    from gmpy2 import mpq as rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as rat

from .errors import (
    DegenerateFamily,
    MutualIntersection,
    NonGenericPair,
    PrecisionWarning,
    SelfIntersection,
)

_ZERO = rat(0)
_ONE = rat(1)

_SHEAR_SCHEDULE_LIMIT = 512


def point(x, y, z):
    """An exact 3d point; accepts ints, 'num/den' strings, or rationals."""
    return (rat(x), rat(y), rat(z))


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


class PLCurve:
    """Closed polygonal space curve with exact rational vertices.

    The vertex list is implicitly closed (the last vertex joins the first)
    and its order fixes the orientation.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        vs = tuple(point(*v) for v in vertices)
        if len(vs) < 3:
            raise ValueError("a closed curve needs at least 3 vertices")
        self.vertices = vs

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, PLCurve) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"PLCurve({len(self.vertices)} vertices)"

    def segments(self):
        """Yield (start, end) point pairs, closing the curve."""
        vs = self.vertices
        n = len(vs)
        for i in range(n):
            yield vs[i], vs[(i + 1) % n]

    def reverse(self):
        return PLCurve(tuple(reversed(self.vertices)))

    def translate(self, dx, dy, dz):
        d = point(dx, dy, dz)
        return PLCurve(tuple((v[0] + d[0], v[1] + d[1], v[2] + d[2]) for v in self.vertices))

    def sheared(self, s):
        """Apply the xy-shear (x, y, z) -> (x + s*z, y + s^2*z, z)."""
        s = rat(s)
        s2 = s * s
        return PLCurve(tuple((v[0] + s * v[2], v[1] + s2 * v[2], v[2]) for v in self.vertices))


def segments_intersect(p1, p2, q1, q2):
    """Exact test: do closed segments [p1,p2] and [q1,q2] share a point in R^3?"""
    d1 = _sub(p2, p1)
    d2 = _sub(q2, q1)
    r = _sub(q1, p1)
    c = _cross(d1, d2)
    if c != (_ZERO, _ZERO, _ZERO):
        if _dot(c, r) != 0:
            return False  # skew lines
        # coplanar, non-parallel: solve p1 + t d1 = q1 + u d2 on two axes
        for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            if c[k] != 0:
                det = d1[i] * (-d2[j]) - (-d2[i]) * d1[j]
                t = (r[i] * (-d2[j]) - (-d2[i]) * r[j]) / det
                u = (d1[i] * r[j] - r[i] * d1[j]) / det
                return _ZERO <= t <= _ONE and _ZERO <= u <= _ONE
        raise AssertionError("nonzero cross product with no nonzero component")
    # parallel
    if _cross(d1, r) != (_ZERO, _ZERO, _ZERO):
        return False  # distinct parallel lines
    if d1 == (_ZERO, _ZERO, _ZERO):
        if d2 == (_ZERO, _ZERO, _ZERO):
            return p1 == q1
        return _point_on_segment(p1, q1, q2)
    # collinear: compare parameters along the dominant axis of d1
    axis = max(range(3), key=lambda a: abs(d1[a]))
    t0 = (q1[axis] - p1[axis]) / d1[axis]
    t1 = (q2[axis] - p1[axis]) / d1[axis]
    lo, hi = (t0, t1) if t0 <= t1 else (t1, t0)
    return lo <= _ONE and hi >= _ZERO


def _point_on_segment(p, q1, q2):
    d = _sub(q2, q1)
    r = _sub(p, q1)
    if _cross(d, r) != (_ZERO, _ZERO, _ZERO):
        return False
    if d == (_ZERO, _ZERO, _ZERO):
        return p == q1
    axis = max(range(3), key=lambda a: abs(d[a]))
    t = r[axis] / d[axis]
    return _ZERO <= t <= _ONE


def _collinear_overlap_beyond_point(p1, p2, q1, q2):
    """For collinear segments, do they share more than one point?"""
    d1 = _sub(p2, p1)
    axis = max(range(3), key=lambda a: abs(d1[a]))
    t0 = (q1[axis] - p1[axis]) / d1[axis]
    t1 = (q2[axis] - p1[axis]) / d1[axis]
    lo, hi = (t0, t1) if t0 <= t1 else (t1, t0)
    lo = max(lo, _ZERO)
    hi = min(hi, _ONE)
    return hi > lo


def validate_simple(curve, label="curve"):
    """Raise SelfIntersection unless the closed curve is simple.

    Adjacent segments may meet only at their shared vertex; non-adjacent
    segments may not meet at all. All tests exact.
    """
    vs = curve.vertices
    n = len(vs)
    for i in range(n):
        if vs[i] == vs[(i + 1) % n]:
            raise SelfIntersection(label, i, (i + 1) % n)
    segs = list(curve.segments())
    for i in range(n):
        for j in range(i + 1, n):
            adjacent = (j == i + 1) or (i == 0 and j == n - 1)
            a1, a2 = segs[i]
            b1, b2 = segs[j]
            if adjacent:
                # straight segments sharing one endpoint meet elsewhere only
                # if collinear
                d1 = _sub(a2, a1)
                d2 = _sub(b2, b1)
                if _cross(d1, d2) == (_ZERO, _ZERO, _ZERO):
                    if _collinear_overlap_beyond_point(a1, a2, b1, b2):
                        raise SelfIntersection(label, i, j)
            else:
                if segments_intersect(a1, a2, b1, b2):
                    raise SelfIntersection(label, i, j)


def validate_disjoint(a, b):
    """Check that a and b are each simple and share no point; exact.

    Raises SelfIntersection or MutualIntersection naming the offending
    segment pair; these mean the input geometry is invalid.
    """
    validate_simple(a, "A")
    validate_simple(b, "B")
    asegs = list(a.segments())
    bsegs = list(b.segments())
    for i, (a1, a2) in enumerate(asegs):
        for j, (b1, b2) in enumerate(bsegs):
            if segments_intersect(a1, a2, b1, b2):
                raise MutualIntersection(i, j)


# -- generic projections -----------------------------------------------------


def shear_schedule():
    """The deterministic shear parameters 0, 1, 1/2, 1/3, ..."""
    yield _ZERO
    k = 1
    while True:
        yield rat(1, k)
        k += 1


def _project(v, s, s2):
    return (v[0] + s * v[2], v[1] + s2 * v[2])


def _solve_projected_crossing(a1, a2, b1, b2):
    """Intersection of two 2d segments.

    Returns one of:
      None                         -- disjoint
      ("crossing", t, u, pt)       -- single transverse interior point
      ("touch",)                   -- meet at an endpoint of either segment
      ("overlap",)                 -- collinear with more than a point shared
      ("point", pt)                -- collinear, exactly one shared point
    """
    d1 = (a2[0] - a1[0], a2[1] - a1[1])
    d2 = (b2[0] - b1[0], b2[1] - b1[1])
    r = (b1[0] - a1[0], b1[1] - a1[1])
    denom = _cross2(d1, d2)
    if denom == 0:
        if _cross2(d1, r) != 0:
            return None
        # collinear
        axis = 0 if abs(d1[0]) >= abs(d1[1]) else 1
        if d1[axis] == 0:
            return ("overlap",)
        t0 = (b1[axis] - a1[axis]) / d1[axis]
        t1 = (b2[axis] - a1[axis]) / d1[axis]
        lo, hi = (t0, t1) if t0 <= t1 else (t1, t0)
        lo = max(lo, _ZERO)
        hi = min(hi, _ONE)
        if hi < lo:
            return None
        if hi == lo:
            x = a1[0] + lo * d1[0]
            y = a1[1] + lo * d1[1]
            return ("point", (x, y))
        return ("overlap",)
    t = _cross2(r, d2) / denom
    u = _cross2(r, d1) / denom
    if t < 0 or t > 1 or u < 0 or u > 1:
        return None
    if t == 0 or t == 1 or u == 0 or u == 1:
        return ("touch",)
    pt = (a1[0] + t * d1[0], a1[1] + t * d1[1])
    return ("crossing", t, u, pt)


def _projection_is_generic(curves, s):
    """Exact genericity of the union diagram under shear s.

    Requires: no segment projecting to a point; adjacent segments meeting only
    at their shared projected vertex; every other incidence a transverse
    interior double point; crossing points pairwise distinct and distinct from
    all projected vertices.
    """
    s = rat(s)
    s2 = s * s
    labeled = []  # (curve index, segment index, 2d start, 2d end)
    vertex_points = set()
    for ci, curve in enumerate(curves):
        pts = [_project(v, s, s2) for v in curve.vertices]
        vertex_points.update(pts)
        n = len(pts)
        for i in range(n):
            p, q = pts[i], pts[(i + 1) % n]
            if p == q:
                return False  # segment projects to a point
            labeled.append((ci, i, n, p, q))
    crossing_points = set()
    for x in range(len(labeled)):
        ci, i, ni, a1, a2 = labeled[x]
        for y in range(x + 1, len(labeled)):
            cj, j, nj, b1, b2 = labeled[y]
            adjacent = ci == cj and ((j == i + 1) or (i == 0 and j == ni - 1))
            hit = _solve_projected_crossing(a1, a2, b1, b2)
            if hit is None:
                continue
            kind = hit[0]
            if adjacent:
                # straight adjacent segments can only meet at the shared
                # vertex unless they overlap collinearly
                if kind in ("touch", "point"):
                    continue
                return False
            if kind != "crossing":
                return False
            pt = hit[3]
            if pt in crossing_points or pt in vertex_points:
                return False  # triple point or crossing at a projected vertex
            crossing_points.add(pt)
    return True


def make_generic(a, b):
    """Smallest scheduled shear making the pair's projection generic.

    The schedule is 0, 1, 1/2, 1/3, ...; only finitely many parameters are
    degenerate, so hitting the bound means a bug, reported as
    DegenerateFamily.
    """
    for n, s in enumerate(shear_schedule()):
        if n >= _SHEAR_SCHEDULE_LIMIT:
            raise DegenerateFamily(f"no generic shear in {_SHEAR_SCHEDULE_LIMIT} attempts")
        if _projection_is_generic((a, b), s):
            return s
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class CrossingRecord:
    """One transverse inter-curve crossing of the projected diagram."""

    seg_a: int
    seg_b: int
    sign: int
    point: tuple


def signed_crossings(a, b):
    """All inter-curve crossings of the vertically projected diagram.

    Requires a generic pair (after make_generic). Sign is +1 when the frame
    (over-strand direction, under-strand direction) is positively oriented in
    the projection plane.
    """
    apts = [_project(v, _ZERO, _ZERO) for v in a.vertices]
    bpts = [_project(v, _ZERO, _ZERO) for v in b.vertices]
    az = [v[2] for v in a.vertices]
    bz = [v[2] for v in b.vertices]
    na, nb = len(apts), len(bpts)
    out = []
    seen_points = set()
    for i in range(na):
        a1, a2 = apts[i], apts[(i + 1) % na]
        if a1 == a2:
            raise NonGenericPair(f"segment {i} of A projects to a point")
        za1, za2 = az[i], az[(i + 1) % na]
        for j in range(nb):
            b1, b2 = bpts[j], bpts[(j + 1) % nb]
            if b1 == b2:
                raise NonGenericPair(f"segment {j} of B projects to a point")
            hit = _solve_projected_crossing(a1, a2, b1, b2)
            if hit is None:
                continue
            if hit[0] != "crossing":
                raise NonGenericPair(f"degenerate incidence at segments ({i}, {j})")
            _, t, u, pt = hit
            if pt in seen_points:
                raise NonGenericPair(f"repeated crossing point at segments ({i}, {j})")
            seen_points.add(pt)
            ha = za1 + t * (za2 - za1)
            hb = bz[j] + u * (bz[(j + 1) % nb] - bz[j])
            if ha == hb:
                raise NonGenericPair(f"equal heights at segments ({i}, {j})")
            da = (a2[0] - a1[0], a2[1] - a1[1])
            db = (b2[0] - b1[0], b2[1] - b1[1])
            if ha > hb:
                det = _cross2(da, db)
            else:
                det = _cross2(db, da)
            out.append(CrossingRecord(i, j, 1 if det > 0 else -1, pt))
    return out


def linking_number(a, b):
    """Exact linking number: half the signed inter-curve crossing sum."""
    validate_disjoint(a, b)
    s = make_generic(a, b)
    crossings = signed_crossings(a.sheared(s), b.sheared(s))
    total = sum(c.sign for c in crossings)
    assert total % 2 == 0, "crossing signs must sum to an even number"
    return total // 2


# -- numeric oracle ----------------------------------------------------------


def _fsub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _fcross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _fdot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _fnorm(a):
    return math.sqrt(_fdot(a, a))


def _segment_pair_solid_angle(p1, p2, p3, p4):
    """Signed solid angle kernel for one segment pair, plus an error bound.

    Computes the double Gauss integral over segments p1p2 and p3p4 in closed
    form as the signed area of a spherical quadrilateral. Coplanar
    configurations contribute exactly zero.
    """
    r12 = _fsub(p2, p1)
    r34 = _fsub(p4, p3)
    r13 = _fsub(p3, p1)
    r14 = _fsub(p4, p1)
    r23 = _fsub(p3, p2)
    r24 = _fsub(p4, p2)

    triple = _fdot(_fcross(r34, r12), r13)
    scale = max(_fnorm(r12) * _fnorm(r34) * _fnorm(r13), 1e-300)
    if triple == 0.0:
        return 0.0, 0.0

    normals = []
    for u, v in ((r13, r14), (r14, r24), (r24, r23), (r23, r13)):
        n = _fcross(u, v)
        nn = _fnorm(n)
        if nn == 0.0:
            # a flat corner of the quadrilateral: the spherical area is
            # degenerate and this closed form cannot certify the pair
            return 0.0, 2.0 * math.pi
        normals.append((n[0] / nn, n[1] / nn, n[2] / nn))

    eps = 1e-13
    area = 0.0
    bound = 0.0
    for k in range(4):
        x = _fdot(normals[k], normals[(k + 1) % 4])
        if x > 1.0:
            bound += (x - 1.0) * 10.0
            x = 1.0
        elif x < -1.0:
            bound += (-1.0 - x) * 10.0
            x = -1.0
        area += math.asin(x)
        bound += eps / math.sqrt(max(1.0 - x * x, eps))
    # a nearly vanishing triple product risks a sign flip worth |area|
    if abs(triple) < 1e-9 * scale:
        bound += 2.0 * abs(area)
    return math.copysign(area, triple), bound


def gauss_linking_estimate(a, b):
    """Float estimate of the linking number via the segment-pair closed form.

    Independent of the exact crossing engine; used as a cross-check oracle.
    Raises PrecisionWarning when the accumulated error bound exceeds 0.25.
    """
    apts = [tuple(map(float, v)) for v in a.vertices]
    bpts = [tuple(map(float, v)) for v in b.vertices]
    na, nb = len(apts), len(bpts)
    total = 0.0
    bound = 0.0
    for i in range(na):
        p1, p2 = apts[i], apts[(i + 1) % na]
        for j in range(nb):
            p3, p4 = bpts[j], bpts[(j + 1) % nb]
            omega, err = _segment_pair_solid_angle(p1, p2, p3, p4)
            total += omega
            bound += err
    estimate = total / (4.0 * math.pi)
    bound = bound / (4.0 * math.pi) + 1e-9 * na * nb
    if bound > 0.25:
        raise PrecisionWarning(estimate, bound)
    return estimate


# -- curve files -------------------------------------------------------------


def format_curve(curve):
    """Text form: one vertex per line, three rationals; exact round trip."""
    lines = ["# closed PL curve: one vertex per line, x y z as rationals"]
    for v in curve.vertices:
        lines.append(f"{v[0]} {v[1]} {v[2]}")
    return "\n".join(lines) + "\n"


def parse_curve(text):
    vertices = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected three rationals, got {raw!r}")
        vertices.append(tuple(rat(p) for p in parts))
    return PLCurve(vertices)


def save_curve(curve, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_curve(curve))


def load_curve(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_curve(fh.read())
