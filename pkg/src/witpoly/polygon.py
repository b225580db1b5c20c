"""Simple polygons and polygons with holes, with exact membership and ray ops.

The along-a-ray analysis here (boundary meeting events, then testing the gap
midpoints for membership) is the workhorse shared by `visible`, `ray_shoot`
and the visibility sweep: between two consecutive boundary events the open
segment is entirely inside or entirely outside, so a single exact membership
probe per gap decides it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .errors import InvalidPolygon, PointOutside
from .geometry import (
    Point2,
    Rat,
    Segment,
    on_segment,
    orientation,
    rat,
    segment_intersection,
)


def signed_area2(vertices: Sequence[Point2]) -> Rat:
    """Twice the signed area of the vertex cycle (positive for CCW)."""
    total = 0
    n = len(vertices)
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        total += a.x * b.y - b.x * a.y
    return total


class SimplePolygon:
    """A simple polygon stored CCW, with per-vertex reflex flags.

    `allow_collinear` keeps straight-angle vertices (needed for sub-regions
    produced by cuts and boolean operations); the default builder rejects
    them so user input stays canonical.
    """

    __slots__ = ("vertices", "reflex", "_edges", "_hash")

    def __init__(self, vertices: Iterable, validate: bool = True, allow_collinear: bool = False):
        verts = [v if isinstance(v, Point2) else Point2(rat(v[0]), rat(v[1])) for v in vertices]
        if len(verts) < 3:
            raise InvalidPolygon("polygon needs at least 3 vertices")
        area2 = signed_area2(verts)
        if area2 == 0:
            raise InvalidPolygon("polygon has zero area")
        if area2 < 0:
            verts.reverse()
        self.vertices: Tuple[Point2, ...] = tuple(verts)
        self._edges: Optional[List[Segment]] = None
        self._hash: Optional[int] = None
        if validate:
            self._validate(allow_collinear)
        n = len(self.vertices)
        self.reflex: Tuple[bool, ...] = tuple(
            orientation(self.vertices[i - 1], self.vertices[i], self.vertices[(i + 1) % n]) < 0
            for i in range(n)
        )

    def _validate(self, allow_collinear: bool) -> None:
        verts = self.vertices
        n = len(verts)
        if len(set(verts)) != n:
            raise InvalidPolygon("repeated vertex")
        if not allow_collinear:
            for i in range(n):
                if orientation(verts[i - 1], verts[i], verts[(i + 1) % n]) == 0:
                    raise InvalidPolygon(f"collinear consecutive vertices at {verts[i]!r}")
        edges = self.edges()
        for i in range(n):
            for j in range(i + 1, n):
                inter = segment_intersection(edges[i], edges[j])
                if inter.kind == "empty":
                    continue
                adjacent = j == i + 1 or (i == 0 and j == n - 1)
                if inter.kind == "overlap" or not adjacent:
                    raise InvalidPolygon(f"edges {i} and {j} intersect")
                shared = edges[i].b if j == i + 1 else edges[i].a
                if inter.point != shared:
                    raise InvalidPolygon(f"adjacent edges {i},{j} touch off their shared vertex")

    def edges(self) -> List[Segment]:
        if self._edges is None:
            v = self.vertices
            n = len(v)
            self._edges = [Segment(v[i], v[(i + 1) % n]) for i in range(n)]
        return self._edges

    def reflex_vertices(self) -> List[Point2]:
        return [v for v, r in zip(self.vertices, self.reflex) if r]

    def area(self) -> Rat:
        return rat(Fraction(signed_area2(self.vertices), 2))

    def contains(self, p: Point2) -> str:
        """Exact classification: 'interior', 'boundary' or 'outside'."""
        for e in self.edges():
            if on_segment(p, e):
                return "boundary"
        return "interior" if _crossing_parity(p, self.edges()) else "outside"

    def __eq__(self, other):
        return isinstance(other, SimplePolygon) and canonical_cycle(self.vertices) == canonical_cycle(other.vertices)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(canonical_cycle(self.vertices))
        return self._hash

    def __repr__(self):
        return f"SimplePolygon({list(self.vertices)!r})"


class PolygonWithHoles:
    """Outer boundary (CCW) with zero or more holes (stored CW)."""

    __slots__ = ("outer", "holes", "_edges", "_hash")

    def __init__(self, outer: SimplePolygon, holes: Sequence[SimplePolygon] = (), validate: bool = True):
        self.outer = outer
        self.holes: Tuple[SimplePolygon, ...] = tuple(holes)
        self._edges: Optional[List[Segment]] = None
        self._hash: Optional[int] = None
        if validate:
            self._validate()

    def _validate(self) -> None:
        for h in self.holes:
            for v in h.vertices:
                if self.outer.contains(v) != "interior":
                    raise InvalidPolygon("hole not strictly inside outer boundary")
        cycles = [self.outer] + list(self.holes)
        for i in range(len(cycles)):
            for j in range(i + 1, len(cycles)):
                for e1 in cycles[i].edges():
                    for e2 in cycles[j].edges():
                        if segment_intersection(e1, e2).kind != "empty":
                            raise InvalidPolygon("boundary cycles intersect")
        for i, h1 in enumerate(self.holes):
            for h2 in self.holes[i + 1:]:
                if h2.contains(h1.vertices[0]) != "outside" or h1.contains(h2.vertices[0]) != "outside":
                    raise InvalidPolygon("nested holes")

    def boundary_edges(self) -> List[Segment]:
        if self._edges is None:
            edges = list(self.outer.edges())
            for h in self.holes:
                edges.extend(h.edges())
            self._edges = edges
        return self._edges

    def all_vertices(self) -> List[Point2]:
        verts = list(self.outer.vertices)
        for h in self.holes:
            verts.extend(h.vertices)
        return verts

    def reflex_vertices(self) -> List[Point2]:
        """Vertices with interior angle > 180 measured inside the region.

        For a hole every vertex that is convex on the hole cycle is reflex
        for the surrounding region, and vice versa.
        """
        out = list(self.outer.reflex_vertices())
        for h in self.holes:
            out.extend(v for v, r in zip(h.vertices, h.reflex) if not r)
        return out

    def area(self) -> Rat:
        total = Fraction(self.outer.area())
        for h in self.holes:
            total -= Fraction(h.area())
        return rat(total)

    def contains(self, p: Point2) -> str:
        for e in self.boundary_edges():
            if on_segment(p, e):
                return "boundary"
        if not _crossing_parity(p, self.outer.edges()):
            return "outside"
        for h in self.holes:
            if _crossing_parity(p, h.edges()):
                return "outside"
        return "interior"

    def __eq__(self, other):
        if not isinstance(other, PolygonWithHoles):
            return NotImplemented
        return self.outer == other.outer and sorted(
            canonical_cycle(h.vertices) for h in self.holes
        ) == sorted(canonical_cycle(h.vertices) for h in other.holes)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.outer, tuple(sorted(canonical_cycle(h.vertices) for h in self.holes))))
        return self._hash

    def __repr__(self):
        return f"PolygonWithHoles(outer={self.outer!r}, holes={list(self.holes)!r})"


Region = Union[SimplePolygon, PolygonWithHoles]


def region_edges(region: Region) -> List[Segment]:
    if isinstance(region, PolygonWithHoles):
        return region.boundary_edges()
    return region.edges()


def region_vertices(region: Region) -> List[Point2]:
    if isinstance(region, PolygonWithHoles):
        return region.all_vertices()
    return list(region.vertices)


def region_reflex_vertices(region: Region) -> List[Point2]:
    return region.reflex_vertices()


def _crossing_parity(p: Point2, edges: Iterable[Segment]) -> int:
    """Parity of horizontal +x ray crossings; p must not lie on an edge.

    The crossing abscissa comparison is done by sign arithmetic (no division),
    which keeps integer inputs on plain int operations.
    """
    parity = 0
    px, py = p
    for a, b in edges:
        if (a.y > py) != (b.y > py):
            d = b.y - a.y
            num = (a.x - px) * d + (py - a.y) * (b.x - a.x)
            if (num > 0) == (d > 0):
                parity ^= 1
    return parity


def interior_parity(region: Region, p: Point2) -> bool:
    """Membership by crossing parity alone, for points known to be off the
    boundary (spares the full on-segment scan of `contains`)."""
    if isinstance(region, PolygonWithHoles):
        if not _crossing_parity(p, region.outer.edges()):
            return False
        for h in region.holes:
            if _crossing_parity(p, h.edges()):
                return False
        return True
    return bool(_crossing_parity(p, region.edges()))


def canonical_cycle(vertices: Sequence[Point2]) -> Tuple[Point2, ...]:
    """Collinear-free, CCW, rotated-to-lex-min form of a vertex cycle."""
    verts = list(vertices)
    if signed_area2(verts) < 0:
        verts.reverse()
    out: List[Point2] = []
    n = len(verts)
    for i in range(n):
        if orientation(verts[i - 1], verts[i], verts[(i + 1) % n]) != 0:
            out.append(verts[i])
    if not out:
        return tuple()
    k = out.index(min(out))
    return tuple(out[k:] + out[:k])


def _param_on_ray(origin: Point2, direction: Point2, p: Point2) -> Fraction:
    if direction.x != 0:
        return Fraction(p.x - origin.x, direction.x)
    return Fraction(p.y - origin.y, direction.y)


def ray_boundary_params(region: Region, origin: Point2, direction: Point2) -> List[Fraction]:
    """Sorted params t >= 0 where origin + t*direction meets the boundary.

    The s-in-[0,1] window test runs on cross-multiplied numerators before any
    Fraction is built, keeping integer inputs on int arithmetic.
    """
    ox, oy = origin
    dx, dy = direction
    far = Point2(ox + dx, oy + dy)
    params = set()
    for a, b in region_edges(region):
        ex, ey = b.x - a.x, b.y - a.y
        d_cross = dx * ey - dy * ex
        if d_cross == 0:
            # Parallel edge: collinear iff a is on the ray's line.
            if orientation(origin, far, a) == 0:
                for p in (a, b):
                    t = _param_on_ray(origin, direction, p)
                    if t >= 0:
                        params.add(t)
            continue
        # origin + t*d = a + s*(b - a); test 0 <= s <= 1 by signs
        s_num = dx * (oy - a.y) - dy * (ox - a.x)
        if d_cross > 0:
            if s_num < 0 or s_num > d_cross:
                continue
        else:
            if s_num > 0 or s_num < d_cross:
                continue
        s = Fraction(s_num, d_cross)
        if dx != 0:
            t = Fraction(a.x + s * ex - ox, dx)
        else:
            t = Fraction(a.y + s * ey - oy, dy)
        if t >= 0:
            params.add(t)
    return sorted(params)


def point_at(origin: Point2, direction: Point2, t) -> Point2:
    return Point2(rat(origin.x + t * direction.x), rat(origin.y + t * direction.y))


def ray_overlap_intervals(region: Region, origin: Point2, direction: Point2) -> List[Tuple[Fraction, Fraction]]:
    """Param intervals where the ray rides a collinear boundary edge."""
    far = Point2(origin.x + direction.x, origin.y + direction.y)
    out = []
    for a, b in region_edges(region):
        d_cross = direction.x * (b.y - a.y) - direction.y * (b.x - a.x)
        if d_cross == 0 and orientation(origin, far, a) == 0:
            t0 = _param_on_ray(origin, direction, a)
            t1 = _param_on_ray(origin, direction, b)
            out.append((min(t0, t1), max(t0, t1)))
    return out


def ray_visible_end(region: Region, origin: Point2, direction: Point2) -> Tuple[Point2, Fraction]:
    """Far end of the maximal prefix [origin, E] of the ray inside the region.

    Touch points (grazing a reflex vertex) do not stop the ray; the first gap
    whose midpoint leaves the region does. Returns (E, param of E). Gap
    midpoints lie strictly between boundary events, so parity membership
    decides, except for gaps riding a collinear boundary edge, which are
    inside the closed region by definition.
    """
    params = ray_boundary_params(region, origin, direction)
    overlaps = ray_overlap_intervals(region, origin, direction)
    prev = Fraction(0)
    exit_t = Fraction(0)
    for t in params:
        if t <= 0:
            continue
        if not any(o0 <= prev and t <= o1 for o0, o1 in overlaps):
            mid = point_at(origin, direction, Fraction(prev + t, 2))
            if not interior_parity(region, mid):
                return point_at(origin, direction, exit_t), exit_t
        exit_t = t
        prev = t
    return point_at(origin, direction, exit_t), exit_t


def ray_shoot(region: Region, origin: Point2, through: Point2) -> Point2:
    """First boundary point where the ray origin->through leaves the region.

    When `through` is on the boundary and the ray exits there, `through`
    itself is returned.
    """
    if origin == through:
        raise ValueError("ray_shoot needs two distinct points")
    if region.contains(origin) == "outside":
        raise PointOutside(f"origin {origin!r} outside polygon")
    if region.contains(through) == "outside":
        raise PointOutside(f"through {through!r} outside polygon")
    direction = Point2(through.x - origin.x, through.y - origin.y)
    end, _ = ray_visible_end(region, origin, direction)
    return end


def segment_in_region(region: Region, a: Point2, b: Point2) -> bool:
    """Exact test: closed segment ab inside the closed region.

    Fast path: a proper transversal crossing of a boundary edge rejects
    immediately, and a segment with no boundary contact at all needs one
    midpoint probe; only boundary-touching segments take the full event walk.
    """
    if a == b:
        return region.contains(a) != "outside"
    edges = region_edges(region)
    touch = False
    for ea, eb in edges:
        o1 = orientation(a, b, ea)
        o2 = orientation(a, b, eb)
        o3 = orientation(ea, eb, a)
        o4 = orientation(ea, eb, b)
        if o1 and o2 and o3 and o4:
            if o1 != o2 and o3 != o4:
                return False
            continue
        # A zero orientation: possible touch, graze or overlap.
        if segment_intersection(Segment(a, b), Segment(ea, eb)).kind != "empty":
            touch = True
    d = Point2(b.x - a.x, b.y - a.y)
    if not touch:
        # No boundary contact at all: one interior-parity probe decides.
        mid = point_at(a, d, Fraction(1, 2))
        return interior_parity(region, mid)
    ab = Segment(a, b)
    params = {Fraction(0), Fraction(1)}
    overlaps = []
    for e in edges:
        inter = segment_intersection(ab, e)
        if inter.kind == "point":
            t = _param_on_ray(a, d, inter.point)
            if 0 <= t <= 1:
                params.add(t)
        elif inter.kind == "overlap":
            ts = []
            for p in inter.overlap:
                t = _param_on_ray(a, d, p)
                ts.append(t)
                if 0 <= t <= 1:
                    params.add(t)
            overlaps.append((min(ts), max(ts)))
    ordered = sorted(params)
    # Gap midpoints sit strictly between boundary events, so parity is exact;
    # gaps riding along a collinear boundary edge are bracketed by overlap
    # events and are inside the closed region by definition.
    for t0, t1 in zip(ordered, ordered[1:]):
        if any(o0 <= t0 and t1 <= o1 for o0, o1 in overlaps):
            continue
        mid = point_at(a, d, Fraction(t0 + t1, 2))
        if not interior_parity(region, mid):
            return False
    return region.contains(a) != "outside" and region.contains(b) != "outside"


def visible(region: Region, a: Point2, b: Point2) -> bool:
    """Exact visibility between two points of the (closed) region."""
    ca = region.contains(a)
    cb = region.contains(b)
    if ca == "outside":
        raise PointOutside(f"{a!r} outside polygon")
    if cb == "outside":
        raise PointOutside(f"{b!r} outside polygon")
    return segment_in_region(region, a, b)


def split_by_chord(poly: SimplePolygon, p: Point2, q: Point2):
    """Split a simple polygon by the chord pq (both endpoints on the boundary).

    Returns two SimplePolygons; the chord becomes an edge of each. The open
    chord must lie inside the polygon.
    """
    verts = list(poly.vertices)
    n = len(verts)

    def locate(x: Point2) -> int:
        """Index in the augmented list after inserting x on its edge."""
        nonlocal verts
        for i, v in enumerate(verts):
            if v == x:
                return i
        m = len(verts)
        for i in range(m):
            e = Segment(verts[i], verts[(i + 1) % m])
            if on_segment(x, e):
                verts = verts[: i + 1] + [x] + verts[i + 1:]
                return i + 1
        raise ValueError(f"{x!r} is not on the polygon boundary")

    locate(p)
    j = locate(q)
    i = locate(p)  # p's index may have shifted after inserting q
    j = verts.index(q)
    if i == j:
        raise ValueError("chord endpoints coincide")
    m = len(verts)
    side1 = []
    k = i
    while True:
        side1.append(verts[k])
        if k == j:
            break
        k = (k + 1) % m
    side2 = []
    k = j
    while True:
        side2.append(verts[k])
        if k == i:
            break
        k = (k + 1) % m
    return (
        SimplePolygon(side1, validate=False, allow_collinear=True),
        SimplePolygon(side2, validate=False, allow_collinear=True),
    )
