"""Exact boolean operations on polygonal regions via trapezoid decomposition.

The engine: split every input segment at every pairwise intersection, cut the
plane into vertical slabs at the sub-segment endpoints, and stack trapezoids
inside each slab. No boundary passes through a trapezoid's interior, so one
exact membership probe per trapezoid classifies it for any boolean predicate.
Kept trapezoids are glued into components (union-find over shared walls) and
each component's boundary is recovered by cancelling interior edges and
stitching the survivors into cycles.

Regularized semantics: components are closures of connected components of the
result's interior. Measure-zero leftovers of difference/intersection are
reported as `residual_segments`, and boundary parts of a difference that lie
inside the subtrahend (the "open" sides of a near polygon) as excluded marks.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .geometry import Point2, Rat, Segment, midpoint, on_segment, rat, segment_intersection
from .polygon import PolygonWithHoles, SimplePolygon, canonical_cycle


class PolygonalRegion:
    """Zero or more PolygonWithHoles components with disjoint interiors.

    `excluded` maps component index to boundary segments that are not part of
    the represented point set (near-polygon support); `residual_segments` are
    one-dimensional pieces of a set difference/intersection that have no area.
    """

    __slots__ = ("components", "excluded", "residual_segments")

    def __init__(
        self,
        components: Sequence[PolygonWithHoles] = (),
        excluded: Optional[Dict[int, List[Segment]]] = None,
        residual_segments: Sequence[Segment] = (),
    ):
        self.components: Tuple[PolygonWithHoles, ...] = tuple(components)
        self.excluded: Dict[int, List[Segment]] = {k: list(v) for k, v in (excluded or {}).items() if v}
        self.residual_segments: Tuple[Segment, ...] = tuple(residual_segments)

    @staticmethod
    def empty() -> "PolygonalRegion":
        return PolygonalRegion()

    @staticmethod
    def from_polygon(poly: Union[SimplePolygon, PolygonWithHoles, "PolygonalRegion"]) -> "PolygonalRegion":
        if isinstance(poly, PolygonalRegion):
            return poly
        if isinstance(poly, SimplePolygon):
            return PolygonalRegion([PolygonWithHoles(poly, (), validate=False)])
        return PolygonalRegion([poly])

    def is_empty(self) -> bool:
        return not self.components and not self.residual_segments

    def area(self) -> Rat:
        total = Fraction(0)
        for c in self.components:
            total += Fraction(c.area())
        return rat(total)

    def contains(self, p: Point2) -> str:
        """Closed-set membership against the 2D components (marks ignored)."""
        best = "outside"
        for c in self.components:
            r = c.contains(p)
            if r == "interior":
                return "interior"
            if r == "boundary":
                best = "boundary"
        return best

    def boundary_edges(self) -> List[Segment]:
        out: List[Segment] = []
        for c in self.components:
            out.extend(c.boundary_edges())
        return out

    def canonical(self):
        comps = []
        for c in self.components:
            comps.append(
                (canonical_cycle(c.outer.vertices), tuple(sorted(canonical_cycle(h.vertices) for h in c.holes)))
            )
        return tuple(sorted(comps))

    def __eq__(self, other):
        if not isinstance(other, PolygonalRegion):
            return NotImplemented
        return self.canonical() == other.canonical() and sorted(
            s.canonical() for s in self.residual_segments
        ) == sorted(s.canonical() for s in other.residual_segments)

    def __repr__(self):
        return f"PolygonalRegion({len(self.components)} components, area={self.area()!r})"


RegionLike = Union[SimplePolygon, PolygonWithHoles, PolygonalRegion]


def _region_boundary_with_group(region: RegionLike, group: int) -> List[Tuple[Segment, int]]:
    region = PolygonalRegion.from_polygon(region)
    return [(e, group) for e in region.boundary_edges()]


def _param(a: Point2, b: Point2, p: Point2) -> Fraction:
    if b.x != a.x:
        return Fraction(p.x - a.x, b.x - a.x)
    return Fraction(p.y - a.y, b.y - a.y)


def split_at_intersections(tagged: Sequence[Tuple[Segment, int]]) -> Dict[Segment, Counter]:
    """Split segments at all pairwise intersections.

    Returns canonical sub-segment -> Counter(group -> multiplicity). A group
    crossing flips membership only on odd multiplicity (two components of one
    region sharing an edge cancel out).
    """
    segs = [s for s, _ in tagged]
    cuts: List[set] = [{Fraction(0), Fraction(1)} for _ in segs]
    n = len(segs)
    boxes = []
    for s in segs:
        boxes.append(
            (min(s.a.x, s.b.x), max(s.a.x, s.b.x), min(s.a.y, s.b.y), max(s.a.y, s.b.y))
        )
    for i in range(n):
        bi = boxes[i]
        for j in range(i + 1, n):
            bj = boxes[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            inter = segment_intersection(segs[i], segs[j])
            if inter.kind == "point":
                cuts[i].add(_param(segs[i].a, segs[i].b, inter.point))
                cuts[j].add(_param(segs[j].a, segs[j].b, inter.point))
            elif inter.kind == "overlap":
                for p in inter.overlap:
                    cuts[i].add(_param(segs[i].a, segs[i].b, p))
                    cuts[j].add(_param(segs[j].a, segs[j].b, p))
    out: Dict[Segment, Counter] = defaultdict(Counter)
    for (s, group), params in zip(tagged, cuts):
        ordered = sorted(t for t in params if 0 <= t <= 1)
        dx, dy = s.b.x - s.a.x, s.b.y - s.a.y
        pts = [Point2(rat(s.a.x + t * dx), rat(s.a.y + t * dy)) for t in ordered]
        for p, q in zip(pts, pts[1:]):
            if p != q:
                out[Segment(p, q).canonical()][group] += 1
    return dict(out)


class Trapezoid:
    __slots__ = ("x0", "x1", "bottom", "top", "flags", "index")

    def __init__(self, x0, x1, bottom: Segment, top: Segment, flags: Tuple[bool, ...], index: int):
        self.x0 = x0
        self.x1 = x1
        self.bottom = bottom
        self.top = top
        self.flags = flags
        self.index = index

    def y_at(self, edge: Segment, x) -> Fraction:
        a, b = edge
        if b.x == a.x:
            return Fraction(a.y)
        return Fraction(a.y) + Fraction(x - a.x, b.x - a.x) * Fraction(b.y - a.y)

    def corners(self):
        """(bl, br, tr, tl) exact corner points."""
        bl = Point2(rat(self.x0), rat(self.y_at(self.bottom, self.x0)))
        br = Point2(rat(self.x1), rat(self.y_at(self.bottom, self.x1)))
        tr = Point2(rat(self.x1), rat(self.y_at(self.top, self.x1)))
        tl = Point2(rat(self.x0), rat(self.y_at(self.top, self.x0)))
        return bl, br, tr, tl

    def rep_point(self) -> Point2:
        xm = Fraction(self.x0 + self.x1, 2)
        ym = Fraction(self.y_at(self.bottom, xm) + self.y_at(self.top, xm), 2)
        return Point2(rat(xm), rat(ym))


def _build_trapezoids(subedges: Dict[Segment, Counter], ngroups: int) -> List[Trapezoid]:
    xs = sorted({p.x for s in subedges for p in s})
    traps: List[Trapezoid] = []
    items = list(subedges.items())
    idx = 0
    for x0, x1 in zip(xs, xs[1:]):
        xm = Fraction(x0 + x1, 2)
        active = []
        for s, groups in items:
            lo, hi = (s.a, s.b) if s.a.x <= s.b.x else (s.b, s.a)
            if lo.x <= x0 and hi.x >= x1 and lo.x != hi.x:
                y = Fraction(lo.y) + Fraction(xm - lo.x, hi.x - lo.x) * Fraction(hi.y - lo.y)
                active.append((y, s, groups))
        active.sort(key=lambda t: t[0])
        flags = [False] * ngroups
        for (y_lo, s_lo, g_lo), (y_hi, s_hi, _) in zip(active, active[1:]):
            for g, mult in g_lo.items():
                if mult % 2:
                    flags[g] = not flags[g]
            if any(flags):
                traps.append(Trapezoid(x0, x1, s_lo, s_hi, tuple(flags), idx))
                idx += 1
    return traps


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _clockwise_from_key(base: Point2):
    """Comparator ordering directions by clockwise rotation from `base` in (0, 360]."""

    def classify(d: Point2):
        c = base.x * d.y - base.y * d.x
        t = base.x * d.x + base.y * d.y
        if c < 0:
            return 1
        if c == 0 and t < 0:
            return 2
        if c > 0:
            return 3
        return 4  # parallel, same direction: full turn

    def cmp(u: Point2, v: Point2):
        cu, cv = classify(u), classify(v)
        if cu != cv:
            return cu - cv
        cr = u.x * v.y - u.y * v.x
        if cr < 0:
            return -1
        if cr > 0:
            return 1
        return 0

    return cmp_to_key(cmp)


def _stitch_cycles(directed_edges: List[Segment]) -> List[List[Point2]]:
    """Stitch directed edges (interior on the left) into closed cycles.

    Successor of an edge arriving at v is the outgoing edge reached first when
    rotating clockwise from the reversed incoming direction; this keeps each
    wedge of the region on its own cycle at pinch vertices, and the successor
    map is a permutation, so the edges partition into closed orbits.
    """
    edges = sorted(set(directed_edges))
    out_map: Dict[Point2, List[Segment]] = defaultdict(list)
    for e in edges:
        out_map[e.a].append(e)
    succ: Dict[Segment, Segment] = {}
    for e in edges:
        base = Point2(e.a.x - e.b.x, e.a.y - e.b.y)
        key = _clockwise_from_key(base)
        succ[e] = min(out_map[e.b], key=lambda c: key(Point2(c.b.x - c.a.x, c.b.y - c.a.y)))
    cycles = []
    seen = set()
    for start in edges:
        if start in seen:
            continue
        cycle = []
        e = start
        while e not in seen:
            seen.add(e)
            cycle.append(e.a)
            e = succ[e]
        cycles.append(cycle)
    return cycles


def _signed_area2(cycle: List[Point2]) -> Rat:
    total = 0
    n = len(cycle)
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        total += a.x * b.y - b.x * a.y
    return total


def build_region(
    subedges: Dict[Segment, Counter],
    ngroups: int,
    keep: Callable[[Tuple[bool, ...], Point2], bool],
    edge_in_result: Optional[Callable[[Point2], bool]] = None,
    mark_edge: Optional[Callable[[Point2], bool]] = None,
) -> PolygonalRegion:
    """Assemble the region of kept trapezoids.

    keep(flags, rep_point): whether a face belongs to the result.
    edge_in_result(midpoint): whether a boundary point between two kept faces
       belongs to the result set (controls gluing across shared edges);
       defaults to always true (closed results).
    mark_edge(midpoint): whether a final boundary edge is excluded (open).
    """
    traps = _build_trapezoids(subedges, ngroups)
    kept = [t for t in traps if keep(t.flags, t.rep_point())]
    if not kept:
        return PolygonalRegion.empty()
    for i, t in enumerate(kept):
        t.index = i
    uf = _UnionFind(len(kept))

    if edge_in_result is None:
        edge_in_result = lambda p: True

    # Same-slab gluing: consecutive kept trapezoids sharing their middle edge.
    by_slab: Dict[Tuple[Rat, Rat], List[Trapezoid]] = defaultdict(list)
    for t in kept:
        by_slab[(t.x0, t.x1)].append(t)
    for slab in by_slab.values():
        slab.sort(key=lambda t: t.rep_point().y)
        for lo, hi in zip(slab, slab[1:]):
            if lo.top == hi.bottom:
                xm = Fraction(lo.x0 + lo.x1, 2)
                mid = Point2(rat(xm), rat(lo.y_at(lo.top, xm)))
                if edge_in_result(mid):
                    uf.union(lo.index, hi.index)

    # Cross-slab gluing along vertical walls at shared x.
    verticals_at: Dict[Rat, List[Tuple[Rat, Rat, Counter]]] = defaultdict(list)
    for s in subedges:
        if s.a.x == s.b.x:
            y0, y1 = sorted((s.a.y, s.b.y))
            verticals_at[s.a.x].append((y0, y1, subedges[s]))
    right_walls: Dict[Rat, List[Trapezoid]] = defaultdict(list)
    left_walls: Dict[Rat, List[Trapezoid]] = defaultdict(list)
    for t in kept:
        right_walls[t.x1].append(t)
        left_walls[t.x0].append(t)
    wall_breaks: Dict[Rat, set] = defaultdict(set)
    for x, ts in right_walls.items():
        for t in ts:
            _, br, tr_, _ = t.corners()
            wall_breaks[x].update((br.y, tr_.y))
    for x, ts in left_walls.items():
        for t in ts:
            bl, _, _, tl = t.corners()
            wall_breaks[x].update((bl.y, tl.y))
    for x, segs in verticals_at.items():
        for y0, y1, _ in segs:
            wall_breaks[x].update((y0, y1))

    for x in set(right_walls) | set(left_walls):
        breaks = sorted(wall_breaks[x])
        for y0, y1 in zip(breaks, breaks[1:]):
            ym = Fraction(y0 + y1, 2)
            left = right = None
            for t in right_walls.get(x, ()):  # trapezoid left of the wall
                _, br, tr_, _ = t.corners()
                if br.y <= y0 and tr_.y >= y1:
                    left = t
                    break
            for t in left_walls.get(x, ()):
                bl, _, _, tl = t.corners()
                if bl.y <= y0 and tl.y >= y1:
                    right = t
                    break
            if left is None or right is None:
                continue
            covered = any(y0 >= v0 and y1 <= v1 for v0, v1, _ in verticals_at.get(x, ()))
            mid = Point2(rat(x), rat(ym))
            if not covered or edge_in_result(mid):
                uf.union(left.index, right.index)

    # Emit directed boundary edges per trapezoid (CCW, interior left), with
    # vertical edges pre-split at all wall breakpoints for exact cancellation.
    comp_edges: Dict[int, Counter] = defaultdict(Counter)
    for t in kept:
        comp = uf.find(t.index)
        bl, br, tr_, tl = t.corners()
        if bl != br:
            comp_edges[comp][(bl, br)] += 1
        if tr_ != tl:
            comp_edges[comp][(tr_, tl)] += 1
        breaks_r = [y for y in sorted(wall_breaks[t.x1]) if br.y <= y <= tr_.y]
        for y0, y1 in zip(breaks_r, breaks_r[1:]):
            comp_edges[comp][(Point2(rat(t.x1), rat(y0)), Point2(rat(t.x1), rat(y1)))] += 1
        breaks_l = [y for y in sorted(wall_breaks[t.x0]) if bl.y <= y <= tl.y]
        for y0, y1 in zip(breaks_l, breaks_l[1:]):
            comp_edges[comp][(Point2(rat(t.x0), rat(y1)), Point2(rat(t.x0), rat(y0)))] += 1

    components: List[PolygonWithHoles] = []
    excluded: Dict[int, List[Segment]] = {}
    for comp, counter in sorted(comp_edges.items()):
        surviving: List[Segment] = []
        for (a, b), cnt in counter.items():
            cnt -= counter.get((b, a), 0)
            for _ in range(max(0, cnt)):
                surviving.append(Segment(a, b))
        cycles = _stitch_cycles(surviving)
        outers = [c for c in cycles if _signed_area2(c) > 0]
        holes = [c for c in cycles if _signed_area2(c) < 0]
        if len(outers) != 1:
            raise AssertionError(f"component with {len(outers)} outer cycles")
        marks: List[Segment] = []
        outer_vertices = _merge_collinear_marked(outers[0], mark_edge, marks)
        hole_polys = []
        for h in cycles:
            if _signed_area2(h) < 0:
                hv = _merge_collinear_marked(h, mark_edge, marks)
                hole_polys.append(SimplePolygon(hv, validate=False, allow_collinear=True))
        idx = len(components)
        components.append(
            PolygonWithHoles(
                SimplePolygon(outer_vertices, validate=False, allow_collinear=True),
                hole_polys,
                validate=False,
            )
        )
        if marks:
            excluded[idx] = marks
    return PolygonalRegion(components, excluded)


def _merge_collinear_marked(cycle: List[Point2], mark_edge, marks: List[Segment]) -> List[Point2]:
    """Merge collinear runs whose exclusion-mark status agrees; collect marks."""
    n = len(cycle)
    if mark_edge is None:
        flags = [False] * n
    else:
        flags = [mark_edge(midpoint(cycle[i], cycle[(i + 1) % n])) for i in range(n)]
    keepers = []
    for i in range(n):
        prev = (i - 1) % n
        a, b, c = cycle[prev], cycle[i], cycle[(i + 1) % n]
        straight = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x) == 0
        if not straight or flags[prev] != flags[i]:
            keepers.append(i)
    if not keepers:
        return cycle
    out = [cycle[i] for i in keepers]
    m = len(out)
    # Final edge k spans original edges keepers[k] .. keepers[k+1]-1, whose
    # flags all equal flags[keepers[k]].
    for k in range(m):
        if flags[keepers[k]]:
            marks.append(Segment(out[k], out[(k + 1) % m]))
    return out


def region_boolean(op: str, A: RegionLike, B: RegionLike) -> PolygonalRegion:
    """Exact regularized boolean: op in {"union", "intersection", "difference"}.

    Inputs are interpreted as closed sets (excluded marks on inputs ignored);
    outputs carry excluded marks (difference) and residual 1-D segments
    (difference/intersection) so near-polygon semantics survive.
    """
    A = PolygonalRegion.from_polygon(A)
    B = PolygonalRegion.from_polygon(B)
    tagged = _region_boundary_with_group(A, 0) + _region_boundary_with_group(B, 1)
    if not tagged:
        return PolygonalRegion.empty()
    subedges = split_at_intersections(tagged)

    if op == "union":
        keep = lambda f, p: f[0] or f[1]
        edge_in = None
        mark = None
    elif op == "intersection":
        keep = lambda f, p: f[0] and f[1]
        edge_in = None
        mark = None
    elif op == "difference":
        keep = lambda f, p: f[0] and not f[1]
        edge_in = lambda p: B.contains(p) == "outside"
        mark = lambda p: B.contains(p) != "outside"
    else:
        raise ValueError(f"unknown op {op!r}")

    result = build_region(subedges, 2, keep, edge_in, mark)

    # 1-D residuals: sub-edges in the pointwise result but off the 2D part.
    residuals: List[Segment] = []
    if op in ("difference", "intersection"):
        for s in subedges:
            m = midpoint(s.a, s.b)
            in_a = A.contains(m) != "outside"
            in_b = B.contains(m) != "outside"
            pointwise = (in_a and not in_b) if op == "difference" else (in_a and in_b)
            if pointwise and result.contains(m) == "outside":
                residuals.append(s)
    if residuals:
        result = PolygonalRegion(result.components, result.excluded, _merge_segments(residuals))
    return result


def _merge_segments(segs: List[Segment]) -> List[Segment]:
    """Merge collinear touching segments into maximal ones."""
    from .geometry import line_key

    by_line: Dict[tuple, List[Segment]] = defaultdict(list)
    for s in segs:
        by_line[line_key(s.a, s.b)].append(s.canonical())
    out = []
    for group in by_line.values():
        group.sort()
        cur = group[0]
        for s in group[1:]:
            if on_segment(s.a, cur):
                if s.b > cur.b:
                    cur = Segment(cur.a, s.b)
            else:
                out.append(cur)
                cur = s
        out.append(cur)
    return sorted(out)


def regions_symmetric_difference_empty(A: RegionLike, B: RegionLike) -> bool:
    """Exact test that two regions cover the same point set (2D part).

    Fast path: identical canonical forms are identical sets. Otherwise both
    one-sided differences are computed in full.
    """
    A = PolygonalRegion.from_polygon(A)
    B = PolygonalRegion.from_polygon(B)
    if A.canonical() == B.canonical():
        return True
    d1 = region_boolean("difference", A, B)
    d2 = region_boolean("difference", B, A)
    return d1.is_empty() and d2.is_empty()


def segment_region_intersects(segment: Segment, region: RegionLike) -> bool:
    """Exact: does the closed segment meet the closed region anywhere?"""
    region = PolygonalRegion.from_polygon(region)
    if region.contains(segment.a) != "outside" or region.contains(segment.b) != "outside":
        return True
    for e in region.boundary_edges():
        if segment_intersection(segment, e).kind != "empty":
            return True
    # No boundary contact and endpoints outside: either fully outside or
    # fully inside some component; endpoints outside rules out inside.
    return False
