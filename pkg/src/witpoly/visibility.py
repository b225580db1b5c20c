"""Visibility polygons with window/wall structure and degenerate arms.

The construction is an exact angular sweep: sort the directions from the
viewpoint to all polygon vertices, probe one ray strictly inside each angular
interval (the first-hit edge is constant there, since hit transitions happen
only at vertex directions), and analyze each event ray exactly. At an event
the two one-sided hit limits either agree (the boundary passes through) or
jump; a jump is bridged along the ray by window pieces (off the boundary) and
wall pieces (collinear boundary overlaps). Whatever the visible interval
covers beyond the jump's far end has zero angular width: an arm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import PointOutside, SegmentOutside
from .geometry import (
    Point2,
    Segment,
    between_direction,
    direction_key,
    line_intersection,
    line_key,
    midpoint,
    on_segment,
    orientation,
    rat,
    segment_intersection,
    sort_directions_ccw,
)
from .polygon import (
    Region,
    SimplePolygon,
    interior_parity,
    point_at,
    ray_boundary_params,
    ray_visible_end,
    region_edges,
    region_vertices,
    segment_in_region,
)
from .polygon import visible as _visible
from .regions import PolygonalRegion, build_region, region_boolean, split_at_intersections


@dataclass(frozen=True)
class Window:
    segment: Segment
    base: Point2
    end: Point2
    on_arm: bool = False


@dataclass(eq=False)
class VisibilityPolygon:
    viewpoint: Point2
    boundary: Tuple[Point2, ...]
    edge_labels: Tuple[object, ...]  # "wall" or int index into windows
    windows: Tuple[Window, ...]
    arms: Tuple[Segment, ...]
    walls: Tuple[Tuple[Point2, ...], ...]

    def __post_init__(self):
        self._body: Optional[SimplePolygon] = None

    def body_polygon(self) -> SimplePolygon:
        if self._body is None:
            self._body = SimplePolygon(self.boundary, validate=False, allow_collinear=True)
        return self._body

    def region(self) -> PolygonalRegion:
        return PolygonalRegion.from_polygon(self.body_polygon())

    def area(self):
        return self.body_polygon().area()

    def non_arm_windows(self) -> List[Window]:
        return [w for w in self.windows if not w.on_arm]

    def contains(self, p: Point2) -> str:
        """Membership in the closed region including arms."""
        r = self.body_polygon().contains(p)
        if r != "outside":
            return r
        for a in self.arms:
            if on_segment(p, a):
                return "boundary"
        return "outside"


def visible(region: Region, a: Point2, b: Point2) -> bool:
    """True iff the closed segment ab lies in the (hole-aware) closed region."""
    return _visible(region, a, b)


def has_arms(vis: VisibilityPolygon) -> bool:
    return bool(vis.arms)


def _first_hit(region: Region, origin: Point2, direction: Point2):
    """Nearest boundary hit (t, edge_index) of a probe ray avoiding vertices.

    Returns None when the ray leaves the region immediately (origin on the
    boundary, direction pointing outside). Window tests are sign-based so
    integer inputs never touch Fraction arithmetic until a hit qualifies.
    """
    edges = region_edges(region)
    ox, oy = origin
    dx, dy = direction
    best_t = None
    best_i = None
    for i, (a, b) in enumerate(edges):
        ex, ey = b.x - a.x, b.y - a.y
        d_cross = dx * ey - dy * ex
        if d_cross == 0:
            continue
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
        if t > 0 and (best_t is None or t < best_t):
            best_t = t
            best_i = i
    if best_t is None:
        return None
    # Probe rays avoid vertices and ride no edge, so the prefix midpoint is
    # off the boundary and parity membership decides exactly.
    mid = point_at(origin, direction, Fraction(best_t, 2))
    if not interior_parity(region, mid):
        return None
    return best_t, best_i


def _edge_param_on_ray(origin: Point2, direction: Point2, edge: Segment) -> Optional[Fraction]:
    """Param of the (unique) intersection of the event ray with an edge."""
    a, b = edge
    d_cross = direction.x * (b.y - a.y) - direction.y * (b.x - a.x)
    if d_cross == 0:
        # Edge parallel to the ray; if collinear, the nearest endpoint on the
        # ray is the limit point.
        far = Point2(origin.x + direction.x, origin.y + direction.y)
        if orientation(origin, far, a) == 0:
            ts = []
            for p in (a, b):
                if direction.x != 0:
                    ts.append(Fraction(p.x - origin.x, direction.x))
                else:
                    ts.append(Fraction(p.y - origin.y, direction.y))
            ts = [t for t in ts if t >= 0]
            return min(ts) if ts else None
        return None
    s = Fraction(direction.x * (origin.y - a.y) - direction.y * (origin.x - a.x), d_cross)
    if not (0 <= s <= 1):
        return None
    if direction.x != 0:
        return Fraction(a.x + s * (b.x - a.x) - origin.x, direction.x)
    return Fraction(a.y + s * (b.y - a.y) - origin.y, direction.y)


def _collinear_cover(region: Region, origin: Point2, direction: Point2):
    """Sorted on-boundary param intervals where the event ray rides an edge."""
    far = Point2(origin.x + direction.x, origin.y + direction.y)
    intervals = []
    for a, b in region_edges(region):
        d_cross = direction.x * (b.y - a.y) - direction.y * (b.x - a.x)
        if d_cross != 0 or orientation(origin, far, a) != 0:
            continue
        ts = []
        for p in (a, b):
            if direction.x != 0:
                ts.append(Fraction(p.x - origin.x, direction.x))
            else:
                ts.append(Fraction(p.y - origin.y, direction.y))
        lo, hi = min(ts), max(ts)
        if hi > 0:
            intervals.append((max(lo, Fraction(0)), hi))
    return sorted(intervals)


def _covered(intervals, t0, t1) -> bool:
    for lo, hi in intervals:
        if lo <= t0 and t1 <= hi:
            return True
    return False


def visibility_polygon(region: Region, p: Point2) -> VisibilityPolygon:
    """Exact star-shaped visibility region of p with windows, walls and arms.

    Results are memoized per (region, viewpoint); regions are immutable and
    compare structurally, so repeated queries (verifier, solver, reduction
    self-checks) share one computation.
    """
    cached = _VIS_CACHE.get((region, p))
    if cached is not None:
        return cached
    result = _visibility_polygon_uncached(region, p)
    if len(_VIS_CACHE) > 40000:
        _VIS_CACHE.clear()
    _VIS_CACHE[(region, p)] = result
    return result


_VIS_CACHE: dict = {}


def _visibility_polygon_uncached(region: Region, p: Point2) -> VisibilityPolygon:
    if region.contains(p) == "outside":
        raise PointOutside(f"viewpoint {p!r} outside polygon")

    dirs = []
    for v in region_vertices(region):
        if v != p:
            dirs.append(direction_key(Point2(v.x - p.x, v.y - p.y)))
    events = sort_directions_ccw(dirs)
    k = len(events)

    # Interval probes: first-hit edge per angular interval (events[i], events[i+1]).
    edges = region_edges(region)
    interval_hit: List[Optional[int]] = []
    for i in range(k):
        probe = between_direction(events[i], events[(i + 1) % k])
        hit = _first_hit(region, p, probe)
        interval_hit.append(None if hit is None else hit[1])

    boundary: List[Point2] = []
    labels: List[object] = []
    windows: List[Window] = []
    arms: List[Segment] = []

    def emit(point: Point2, label):
        """Append a boundary point with the label of the edge leaving it."""
        boundary.append(point)
        labels.append(label)

    for i in range(k):
        d = Point2(rat(events[i][0]), rat(events[i][1]))
        left_edge = interval_hit[(i - 1) % k]
        right_edge = interval_hit[i]
        tA = Fraction(0) if left_edge is None else _edge_param_on_ray(p, d, edges[left_edge])
        tB = Fraction(0) if right_edge is None else _edge_param_on_ray(p, d, edges[right_edge])
        if tA is None or tB is None:
            raise AssertionError("hit edge lost at event ray")
        _, end_t = ray_visible_end(region, p, d)

        cover = _collinear_cover(region, p, d)
        t_lo, t_hi = (tA, tB) if tA <= tB else (tB, tA)
        cuts = {t_lo, t_hi}
        for lo, hi in cover:
            for t in (lo, hi):
                if t_lo < t < t_hi:
                    cuts.add(t)
        ordered = sorted(cuts)
        if tA > tB:
            ordered = ordered[::-1]

        pieces = list(zip(ordered, ordered[1:]))
        emit(point_at(p, d, tA), None)
        for u, v in pieces:
            lo, hi = (u, v) if u <= v else (v, u)
            if _covered(cover, lo, hi):
                labels[-1] = "wall"
            else:
                near, far_ = (u, v) if u <= v else (v, u)
                windows.append(
                    Window(
                        Segment(point_at(p, d, near), point_at(p, d, far_)),
                        base=point_at(p, d, near),
                        end=point_at(p, d, far_),
                    )
                )
                labels[-1] = len(windows) - 1
            emit(point_at(p, d, v), None)

        # Arm: visible interval extends beyond the body at this exact angle.
        if end_t > t_hi:
            attach = point_at(p, d, t_hi)
            tip = point_at(p, d, end_t)
            arms.append(Segment(attach, tip))
            windows.append(Window(Segment(attach, tip), base=attach, end=tip, on_arm=True))

        # Wall along interval i's hit edge, closed at the next event.
        if labels and labels[-1] is None:
            labels[-1] = "wall"

    # Remove consecutive duplicate points; the label of the edge leaving a
    # point comes from the last duplicate (it describes the surviving edge).
    cleaned_pts: List[Point2] = []
    cleaned_labels: List[object] = []
    n = len(boundary)
    for i in range(n):
        if cleaned_pts and cleaned_pts[-1] == boundary[i]:
            cleaned_labels[-1] = labels[i]
            continue
        cleaned_pts.append(boundary[i])
        cleaned_labels.append(labels[i])
    while len(cleaned_pts) > 1 and cleaned_pts[0] == cleaned_pts[-1]:
        cleaned_pts.pop()
        cleaned_labels.pop()

    # Merge collinear same-label runs (wall pieces of one edge across events).
    final_pts: List[Point2] = []
    final_labels: List[object] = []
    m = len(cleaned_pts)
    for i in range(m):
        a = cleaned_pts[i - 1]
        b = cleaned_pts[i]
        c = cleaned_pts[(i + 1) % m]
        if (
            orientation(a, b, c) == 0
            and cleaned_labels[i - 1] == "wall"
            and cleaned_labels[i] == "wall"
        ):
            continue
        final_pts.append(b)
        final_labels.append(cleaned_labels[i])

    if not final_pts:
        raise AssertionError("empty visibility boundary")

    walls: List[Tuple[Point2, ...]] = []
    mm = len(final_pts)
    wall_flags = [final_labels[i] == "wall" for i in range(mm)]
    if all(wall_flags):
        walls.append(tuple(final_pts + [final_pts[0]]))
    else:
        start = next(j for j in range(mm) if not wall_flags[j])
        order = [(start + 1 + j) % mm for j in range(mm)]
        chain: List[Point2] = []
        for j in order:
            if wall_flags[j]:
                if not chain:
                    chain = [final_pts[j]]
                chain.append(final_pts[(j + 1) % mm])
            else:
                if chain:
                    walls.append(tuple(chain))
                    chain = []
        if chain:
            walls.append(tuple(chain))

    return VisibilityPolygon(
        viewpoint=p,
        boundary=tuple(final_pts),
        edge_labels=tuple(final_labels),
        windows=tuple(windows),
        arms=tuple(arms),
        walls=tuple(walls),
    )


def regions_common_point(v1: VisibilityPolygon, v2: VisibilityPolygon) -> Optional[Point2]:
    """A common point of the two closed regions (bodies plus arms), or None.

    Serves both as the boolean intersection test and as the counterexample
    certificate for the witness verifier.
    """
    b1 = v1.body_polygon()
    b2 = v2.body_polygon()
    e1 = b1.edges()
    e2 = b2.edges()
    for s1 in e1:
        for s2 in e2:
            inter = segment_intersection(s1, s2)
            if inter.kind == "point":
                return inter.point
            if inter.kind == "overlap":
                return inter.overlap.a
    # No edge crossing: containment or disjoint.
    if b2.contains(v1.viewpoint) != "outside":
        return v1.viewpoint
    if b1.contains(v2.viewpoint) != "outside":
        return v2.viewpoint
    for arm in v1.arms:
        for s2 in e2:
            inter = segment_intersection(arm, s2)
            if inter.kind == "point":
                return inter.point
            if inter.kind == "overlap":
                return inter.overlap.a
        if b2.contains(arm.b) != "outside":
            return arm.b
    for arm in v2.arms:
        for s1 in e1:
            inter = segment_intersection(arm, s1)
            if inter.kind == "point":
                return inter.point
            if inter.kind == "overlap":
                return inter.overlap.a
        if b1.contains(arm.b) != "outside":
            return arm.b
    for a1 in v1.arms:
        for a2 in v2.arms:
            inter = segment_intersection(a1, a2)
            if inter.kind == "point":
                return inter.point
            if inter.kind == "overlap":
                return inter.overlap.a
    return None


def sees_segment(region: Region, x: Point2, L: Segment) -> bool:
    """Exact: is some point of L visible from x?

    The visible portion of L from x is a union of closed intervals whose
    endpoints are either endpoints of L or grazing points on rays from x
    through reflex vertices, so testing those finitely many candidates is
    complete.
    """
    candidates = [L.a, L.b]
    for r in region.reflex_vertices():
        if r == x:
            continue
        hit = line_intersection(x, r, L.a, L.b)
        if hit is not None and on_segment(hit, L):
            candidates.append(hit)
    for z in candidates:
        if segment_in_region(region, x, z):
            return True
    return False


def weak_visibility(region: SimplePolygon, L: Segment) -> PolygonalRegion:
    """Region visible from at least one point of the segment L (exact).

    Faces of the arrangement of the polygon's edges with all critical chords
    (lines through reflex-vertex pairs and through L's endpoints and a reflex
    vertex, plus L's own line) have uniform visibility-from-L, so one exact
    probe per face suffices.
    """
    if not segment_in_region(region, L.a, L.b):
        raise SegmentOutside(f"{L!r} not inside polygon")
    reflex = region.reflex_vertices()
    anchors = [L.a, L.b]
    lines = set()
    chords: List[Segment] = []
    pairs = []
    for i, r in enumerate(reflex):
        for r2 in reflex[i + 1:]:
            pairs.append((r, r2))
        for a in anchors:
            if a != r:
                pairs.append((a, r))
    if L.a != L.b:
        pairs.append((L.a, L.b))
    for a, b in pairs:
        key = line_key(a, b)
        if key in lines:
            continue
        lines.add(key)
        chords.extend(_line_clipped_to_region(region, a, b))

    tagged = [(e, 0) for e in region.edges()] + [(c, 1) for c in chords]
    subedges = split_at_intersections(tagged)

    def keep(flags, rep):
        if region.contains(rep) == "outside":
            return False
        return sees_segment(region, rep, L)

    return build_region(subedges, 2, keep)


def _line_clipped_to_region(region: Region, a: Point2, b: Point2) -> List[Segment]:
    """Maximal sub-segments of line ab inside the closed region."""
    d = Point2(b.x - a.x, b.y - a.y)
    fwd = ray_boundary_params(region, a, d)
    bwd = ray_boundary_params(region, a, Point2(-d.x, -d.y))
    params = sorted({t for t in fwd} | {-t for t in bwd})
    out = []
    for t0, t1 in zip(params, params[1:]):
        mid = point_at(a, d, Fraction(t0 + t1, 2))
        if region.contains(mid) != "outside":
            out.append(Segment(point_at(a, d, t0), point_at(a, d, t1)))
    return out


def restricted_visibility(region: SimplePolygon, L: Segment, p: Point2) -> PolygonalRegion:
    """Vis(L) ∩ Vis(p), exactly."""
    weak = weak_visibility(region, L)
    vis = visibility_polygon(region, p)
    return region_boolean("intersection", weak, vis.region())
