"""Witness-structure machinery: the neighbor witness graph, chordality via
maximum cardinality search, visibility splits along a window, replacement of a
simplicial witness by a polygon vertex, and movable regions.

Graph adjacency comes from NVis component attachment: two witnesses are
neighbors iff some component of NVis(W) attaches to both of their visibility
regions (each along exactly one window, which is recorded per directed pair).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import InvalidPolygon, NotAWindow, NotAWitnessSet, NotSimplicial
from .geometry import Point2, Segment, on_segment
from .polygon import SimplePolygon, ray_shoot, split_by_chord
from .regions import PolygonalRegion, region_boolean
from .visibility import VisibilityPolygon, Window, visibility_polygon, weak_visibility
from .witness import nvis, verify_witness_set


@dataclass
class NeighborWitnessGraph:
    vertices: Tuple[Point2, ...]
    edges: FrozenSet[Tuple[Point2, Point2]]  # canonical (min, max) pairs
    edge_windows: Dict[Tuple[Point2, Point2], Window]  # (w, v) -> window of Vis(w)
    edge_components: Dict[Tuple[Point2, Point2], int]

    def neighbors(self, w: Point2) -> List[Point2]:
        out = []
        for a, b in self.edges:
            if a == w:
                out.append(b)
            elif b == w:
                out.append(a)
        return sorted(out)

    def has_edge(self, a: Point2, b: Point2) -> bool:
        return (min(a, b), max(a, b)) in self.edges


def neighbor_witness_graph(region: SimplePolygon, witnesses: Sequence[Point2]) -> NeighborWitnessGraph:
    decomposition = nvis(region, witnesses)  # validates the witness set
    pts = sorted(witnesses)
    edges = set()
    edge_windows: Dict[Tuple[Point2, Point2], Window] = {}
    edge_components: Dict[Tuple[Point2, Point2], int] = {}
    for ci, atts in decomposition.attachments.items():
        by_witness: Dict[Point2, Window] = {}
        for wp, win in atts:
            by_witness.setdefault(wp, win)
        ws = sorted(by_witness)
        for i in range(len(ws)):
            for j in range(i + 1, len(ws)):
                a, b = ws[i], ws[j]
                key = (a, b)
                if key in edges and edge_components[key] != ci:
                    raise AssertionError(
                        f"edge {key} attached through two NVis components "
                        f"{edge_components[key]} and {ci}"
                    )
                edges.add(key)
                edge_components[key] = ci
                edge_windows[(a, b)] = by_witness[a]
                edge_windows[(b, a)] = by_witness[b]
    return NeighborWitnessGraph(
        vertices=tuple(pts),
        edges=frozenset(edges),
        edge_windows=edge_windows,
        edge_components=edge_components,
    )


def perfect_elimination_ordering(graph: NeighborWitnessGraph) -> Optional[List[Point2]]:
    """A PEO via maximum cardinality search, or None when the graph is not
    chordal (which, for a graph built from a valid witness set, falsifies the
    chordality theorem and is surfaced loudly by the tests)."""
    verts = list(graph.vertices)
    adj = {v: set(graph.neighbors(v)) for v in verts}
    weight = {v: 0 for v in verts}
    unvisited = set(verts)
    mcs_order: List[Point2] = []
    while unvisited:
        v = min(unvisited, key=lambda u: (-weight[u], u))
        mcs_order.append(v)
        unvisited.remove(v)
        for u in adj[v]:
            if u in unvisited:
                weight[u] += 1
    ordering = mcs_order[::-1]
    position = {v: i for i, v in enumerate(ordering)}
    for i, v in enumerate(ordering):
        later = [u for u in adj[v] if position[u] > i]
        for a in range(len(later)):
            for b in range(a + 1, len(later)):
                if later[b] not in adj[later[a]]:
                    return None
    return ordering


@dataclass
class VisibilitySplit:
    window: Window
    cut: Segment  # base d to the far boundary point d'
    side1: PolygonalRegion  # contains the window on its boundary
    side2: PolygonalRegion


def visibility_split(vis: VisibilityPolygon, window: Window) -> VisibilitySplit:
    if window not in vis.windows:
        raise NotAWindow(f"{window!r} is not a window of this visibility polygon")
    body = vis.body_polygon()
    d = window.base
    if vis.viewpoint != d:
        far = ray_shoot(body, d, vis.viewpoint)
    else:
        # Viewpoint sits on the window's base: extend the window's own line
        # away from its end.
        direction = Point2(d.x - window.end.x, d.y - window.end.y)
        from .polygon import ray_visible_end

        far, _ = ray_visible_end(body, d, direction)
    if far == d:
        raise AssertionError("degenerate cut for visibility split")
    p1, p2 = split_by_chord(body, d, far)

    def contains_window(poly: SimplePolygon) -> bool:
        mid = Point2((window.segment.a.x + window.segment.b.x) / 2, (window.segment.a.y + window.segment.b.y) / 2)
        return any(on_segment(mid, e) for e in poly.edges())

    if contains_window(p1):
        side1, side2 = p1, p2
    elif contains_window(p2):
        side1, side2 = p2, p1
    else:
        raise AssertionError("window lost during split")
    return VisibilitySplit(
        window=window,
        cut=Segment(d, far),
        side1=PolygonalRegion.from_polygon(side1),
        side2=PolygonalRegion.from_polygon(side2),
    )


def simplicial_replace(region: SimplePolygon, witnesses: Sequence[Point2], w: Point2) -> Point2:
    """Replace a simplicial (or isolated) witness by a polygon vertex.

    Follows the constructive argument: all neighbors attach through one
    common window e of Vis(w); cutting Vis(w) along e's extension, the far
    side holds a polygon vertex (the cut-adjacent vertex directly, or the
    base of the window that vertex terminates). The returned replacement is
    verified before being returned.
    """
    if w not in witnesses:
        raise NotAWitnessSet(f"{w!r} not in the witness set")
    graph = neighbor_witness_graph(region, witnesses)
    vis_w = visibility_polygon(region, w)
    neighbors = graph.neighbors(w)
    for i in range(len(neighbors)):
        for j in range(i + 1, len(neighbors)):
            if not graph.has_edge(neighbors[i], neighbors[j]):
                raise NotSimplicial(f"{w!r} has non-adjacent neighbors")

    if neighbors:
        windows = {graph.edge_windows[(w, v)] for v in neighbors}
        if len(windows) != 1:
            raise AssertionError(
                f"simplicial witness {w!r} attaches through {len(windows)} windows"
            )
        e = windows.pop()
    else:
        candidates = vis_w.non_arm_windows()
        if not candidates:
            # Vis(w) is the whole polygon; any vertex works.
            target = min(region.vertices)
            return _verified(region, witnesses, w, target)
        e = candidates[0]

    try:
        return _replace_via_split(region, witnesses, w, vis_w, e)
    except (InvalidPolygon, AssertionError):
        # Degenerate cut (the window's extension rides a wall, e.g. a witness
        # on the boundary line of its own window): the constructive split
        # collapses, but the replacement vertex still exists; find it by
        # verifying polygon vertices of Vis(w) in deterministic order.
        body = vis_w.body_polygon()
        for cand in sorted(set(region.vertices)):
            if cand in witnesses or body.contains(cand) == "outside":
                continue
            replaced = [cand if p == w else p for p in witnesses]
            ok, _ = verify_witness_set(region, replaced)
            if ok:
                return cand
        raise AssertionError(f"no polygon vertex can replace {w!r}")


def _replace_via_split(region, witnesses, w, vis_w, e) -> Point2:
    split = visibility_split(vis_w, e)
    side2 = split.side2.components[0].outer
    verts = list(side2.vertices)
    d, far = split.cut
    di = verts.index(d)
    a, b = verts[di - 1], verts[(di + 1) % len(verts)]
    if a == far:
        c = b
    elif b == far:
        c = a
    else:
        raise AssertionError("cut edge not adjacent to the window base in V2")

    if c in region.vertices:
        return _verified(region, witnesses, w, c)
    # c is the non-base end of another window of Vis(w): take that base.
    for other in vis_w.windows:
        if other.end == c:
            return _verified(region, witnesses, w, other.base)
    raise AssertionError(f"cut-adjacent vertex {c!r} is neither polygon vertex nor window end")


def _verified(region: SimplePolygon, witnesses: Sequence[Point2], w: Point2, target: Point2) -> Point2:
    if target not in region.vertices:
        raise AssertionError(f"replacement {target!r} is not a polygon vertex")
    replaced = [target if p == w else p for p in witnesses]
    ok, cert = verify_witness_set(region, replaced)
    if not ok:
        raise AssertionError(
            f"replacement {target!r} for {w!r} broke the witness set: {cert.offending_pair}"
        )
    return target


@dataclass
class MovableRegion:
    witness: Point2
    region: PolygonalRegion


def movable_region(region: SimplePolygon, witnesses: Sequence[Point2], w: Point2) -> MovableRegion:
    """Closure of the component containing w of Vis(w) minus the weak
    visibility regions of the neighbors' windows toward w."""
    if w not in witnesses:
        raise NotAWitnessSet(f"{w!r} not in the witness set")
    graph = neighbor_witness_graph(region, witnesses)
    vis_w = visibility_polygon(region, w)
    current = vis_w.region()
    for v in graph.neighbors(w):
        win = graph.edge_windows[(v, w)]  # window of Vis(v) toward w
        weak = weak_visibility(region, win.segment)
        current = region_boolean("difference", current, weak)
    chosen = None
    for ci, comp in enumerate(current.components):
        if comp.contains(w) != "outside":
            chosen = comp
            break
    if chosen is None:
        raise AssertionError(f"witness {w!r} lost from its movable region")
    return MovableRegion(witness=w, region=PolygonalRegion([chosen]))
