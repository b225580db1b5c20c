"""Exact rational planar primitives: points, segments, predicates, intersections.

All coordinates are exact rationals. Integral values are kept as plain `int`
(Fraction(2) == 2 and they hash alike), which keeps the common all-integer
paths on fast native arithmetic; anything non-integral is a
`fractions.Fraction` in canonical form. Nothing in this module ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Union

from .errors import ParseError

Rat = Union[int, Fraction]


def rat(value) -> Rat:
    """Normalize a number to the canonical exact form (int when integral)."""
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError(f"not an exact number: {value!r}")


def parse_rat(text: str) -> Rat:
    """Parse "p" or "p/q" with arbitrary-precision integers; q must be nonzero."""
    text = text.strip()
    if "/" in text:
        num_s, _, den_s = text.partition("/")
        try:
            num, den = int(num_s), int(den_s)
        except ValueError:
            raise ParseError(f"malformed rational {text!r}") from None
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return rat(Fraction(num, den))
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"malformed rational {text!r}") from None


def format_rat(value: Rat) -> str:
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return str(int(value))


class Point2(NamedTuple):
    x: Rat
    y: Rat

    def __repr__(self):
        return f"({format_rat(self.x)}, {format_rat(self.y)})"


class Segment(NamedTuple):
    a: Point2
    b: Point2

    def __repr__(self):
        return f"[{self.a!r}-{self.b!r}]"

    def reversed(self) -> "Segment":
        return Segment(self.b, self.a)

    def canonical(self) -> "Segment":
        return self if self.a <= self.b else Segment(self.b, self.a)


def pt(x, y) -> Point2:
    return Point2(rat(x), rat(y))


def seg(a, b) -> Segment:
    return Segment(a, b)


def sub(a: Point2, b: Point2) -> Point2:
    return Point2(a.x - b.x, a.y - b.y)


def add(a: Point2, b: Point2) -> Point2:
    return Point2(a.x + b.x, a.y + b.y)


def scale(a: Point2, t: Rat) -> Point2:
    return Point2(a.x * t, a.y * t)


def cross(o: Point2, a: Point2, b: Point2) -> Rat:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def orientation(a: Point2, b: Point2, c: Point2) -> int:
    """Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right, 0 collinear."""
    d = cross(a, b, c)
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def collinear(a: Point2, b: Point2, c: Point2) -> bool:
    return orientation(a, b, c) == 0


def on_segment(p: Point2, s: Segment) -> bool:
    """Exact membership of p in the closed segment s (bbox test first)."""
    a, b = s
    if p.x < a.x and p.x < b.x:
        return False
    if p.x > a.x and p.x > b.x:
        return False
    if p.y < a.y and p.y < b.y:
        return False
    if p.y > a.y and p.y > b.y:
        return False
    return orientation(a, b, p) == 0


def midpoint(a: Point2, b: Point2) -> Point2:
    return Point2(rat(Fraction(a.x + b.x, 2)), rat(Fraction(a.y + b.y, 2)))


def dot(a: Point2, b: Point2) -> Rat:
    return a.x * b.x + a.y * b.y


class Intersection(NamedTuple):
    """Result of segment_intersection: kind in {"empty", "point", "overlap"}."""

    kind: str
    point: Optional[Point2] = None
    overlap: Optional[Segment] = None


def _interval_overlap_1d(a1, a2, b1, b2):
    lo = max(min(a1, a2), min(b1, b2))
    hi = min(max(a1, a2), max(b1, b2))
    if lo > hi:
        return None
    return lo, hi


def segment_intersection(s1: Segment, s2: Segment) -> Intersection:
    """Exact classification of the intersection of two closed segments."""
    p, q = s1
    r, s = s2
    o1 = orientation(p, q, r)
    o2 = orientation(p, q, s)
    o3 = orientation(r, s, p)
    o4 = orientation(r, s, q)

    if o1 == 0 and o2 == 0:
        # Collinear: overlap of parameter intervals along the varying axis.
        if p.x != q.x:
            ov = _interval_overlap_1d(p.x, q.x, r.x, s.x)
            if ov is None:
                return Intersection("empty")
            lo, hi = ov
            pa = _point_on_line_at(s1, "x", lo)
            pb = _point_on_line_at(s1, "x", hi)
        else:
            if r.x != p.x:
                return Intersection("empty")
            ov = _interval_overlap_1d(p.y, q.y, r.y, s.y)
            if ov is None:
                return Intersection("empty")
            lo, hi = ov
            pa = Point2(p.x, lo)
            pb = Point2(p.x, hi)
        if pa == pb:
            return Intersection("point", point=pa)
        return Intersection("overlap", overlap=Segment(pa, pb).canonical())

    if o1 != o2 and o3 != o4:
        # Includes endpoint touches (one orientation zero). Solve exactly.
        return Intersection("point", point=_line_cross_point(p, q, r, s))

    # One endpoint lying on the other segment (collinear touch from one side only).
    for cand, other in ((r, s1), (s, s1), (p, s2), (q, s2)):
        if on_segment(cand, other):
            return Intersection("point", point=cand)
    return Intersection("empty")


def _point_on_line_at(s: Segment, axis: str, value: Rat) -> Point2:
    p, q = s
    if axis == "x":
        t = Fraction(value - p.x, q.x - p.x)
        return Point2(rat(value), rat(p.y + t * (q.y - p.y)))
    t = Fraction(value - p.y, q.y - p.y)
    return Point2(rat(p.x + t * (q.x - p.x)), rat(value))


def _line_cross_point(p: Point2, q: Point2, r: Point2, s: Point2) -> Point2:
    """Intersection point of the (non-parallel) supporting lines of pq and rs."""
    dx1, dy1 = q.x - p.x, q.y - p.y
    dx2, dy2 = s.x - r.x, s.y - r.y
    denom = dx1 * dy2 - dy1 * dx2
    t = Fraction((r.x - p.x) * dy2 - (r.y - p.y) * dx2, denom)
    return Point2(rat(p.x + t * dx1), rat(p.y + t * dy1))


def line_intersection(p: Point2, q: Point2, r: Point2, s: Point2) -> Optional[Point2]:
    """Intersection of supporting lines; None when parallel (or identical)."""
    dx1, dy1 = q.x - p.x, q.y - p.y
    dx2, dy2 = s.x - r.x, s.y - r.y
    if dx1 * dy2 - dy1 * dx2 == 0:
        return None
    return _line_cross_point(p, q, r, s)


def line_key(p: Point2, q: Point2):
    """Canonical integer triple (A, B, C) with Ax + By = C for the line pq.

    Normalized to coprime integers with a positive leading coefficient, so
    equal lines compare equal; used to deduplicate chords by supporting line.
    """
    a = q.y - p.y
    b = p.x - q.x
    c = a * p.x + b * p.y
    fa, fb, fc = Fraction(a), Fraction(b), Fraction(c)
    from math import gcd

    den = fa.denominator * fb.denominator * fc.denominator
    ia = int(fa * den)
    ib = int(fb * den)
    ic = int(fc * den)
    g = gcd(gcd(abs(ia), abs(ib)), abs(ic))
    if g:
        ia, ib, ic = ia // g, ib // g, ic // g
    if ia < 0 or (ia == 0 and ib < 0):
        ia, ib, ic = -ia, -ib, -ic
    return (ia, ib, ic)


def direction_key(d: Point2):
    """Canonical primitive integer direction vector for angular deduplication."""
    fx, fy = Fraction(d.x), Fraction(d.y)
    den = fx.denominator * fy.denominator
    ix, iy = int(fx * den), int(fy * den)
    from math import gcd

    g = gcd(abs(ix), abs(iy))
    if g:
        ix, iy = ix // g, iy // g
    return (ix, iy)


def angle_rank(d) -> int:
    """Half-plane rank for CCW ordering of directions starting at +x axis."""
    x, y = d
    if y > 0 or (y == 0 and x > 0):
        return 0
    return 1


def ccw_direction_sort_key(d):
    """Sort key ordering direction vectors CCW from the +x axis (exact).

    Within each half-plane the angle increases as cot = x/y decreases, so
    (-x/y) sorts correctly; the axis directions open their half-planes.
    """
    x, y = d
    r = angle_rank(d)
    if y == 0:
        return (r, 0, Fraction(0))
    return (r, 1, Fraction(-x, y))


def sort_directions_ccw(dirs):
    """Sort canonical integer directions CCW starting from +x axis."""
    return sorted(set(dirs), key=ccw_direction_sort_key)


def between_direction(d1, d2) -> Point2:
    """An exact direction strictly inside the CCW cone from d1 to d2.

    The positive combination bisects the convex cone spanned by d1 and d2;
    when the CCW cone is reflex (cross <= 0) the convex cone is the wrong
    one, so its antipode is used. Exactly opposite directions get the
    90-degree CCW rotation of d1.
    """
    c = d1[0] * d2[1] - d1[1] * d2[0]
    if c == 0 and d1[0] * d2[0] + d1[1] * d2[1] < 0:
        return Point2(-d1[1], d1[0])
    if c > 0:
        return Point2(d1[0] + d2[0], d1[1] + d2[1])
    return Point2(-(d1[0] + d2[0]), -(d1[1] + d2[1]))
