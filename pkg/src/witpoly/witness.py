"""Witness-set verification, NVis decomposition, and the window criterion.

A witness set is a point set whose visibility regions are pairwise disjoint
(as closed sets, arms included). The verifier computes the regions and tests
all pairs exactly, producing a commonly-visible point as counterexample on
failure. `disjoint_via_windows` is the independent second decider: two points
have disjoint regions iff they do not see each other and neither is visible
from any window of the other's region.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NotAWitnessSet, PointOutside
from .geometry import Point2, Segment, segment_intersection
from .polygon import Region, SimplePolygon
from .regions import PolygonalRegion, build_region, split_at_intersections
from .visibility import (
    VisibilityPolygon,
    Window,
    regions_common_point,
    visibility_polygon,
    visible,
)


def regions_intersect(v1: VisibilityPolygon, v2: VisibilityPolygon) -> bool:
    """True iff the closed regions (bodies plus arms) share at least one point."""
    return regions_common_point(v1, v2) is not None


@dataclass
class WitnessCertificate:
    valid: bool
    counterexample: Optional[Point2] = None
    offending_pair: Optional[Tuple[Point2, Point2]] = None
    transcript: Tuple[str, ...] = ()


def verify_witness_set(region: Region, points: Sequence[Point2]) -> Tuple[bool, WitnessCertificate]:
    """Exact pairwise disjointness check with a counterexample certificate."""
    for p in points:
        if region.contains(p) == "outside":
            raise PointOutside(f"witness {p!r} outside polygon")
    pts = list(points)
    lines: List[str] = []
    seen = {}
    for i, p in enumerate(pts):
        if p in seen:
            cert = WitnessCertificate(
                False,
                counterexample=p,
                offending_pair=(p, p),
                transcript=(f"duplicate witness {p!r}",),
            )
            return False, cert
        seen[p] = i
    vis = [visibility_polygon(region, p) for p in pts]
    lines.append(f"{len(pts)} visibility polygons computed")
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            common = regions_common_point(vis[i], vis[j])
            if common is not None:
                lines.append(f"pair ({pts[i]!r}, {pts[j]!r}): common point {common!r}")
                return False, WitnessCertificate(
                    False,
                    counterexample=common,
                    offending_pair=(pts[i], pts[j]),
                    transcript=tuple(lines),
                )
            lines.append(f"pair ({pts[i]!r}, {pts[j]!r}): disjoint")
    return True, WitnessCertificate(True, transcript=tuple(lines))


def _window_meets_region(vis: VisibilityPolygon, e: Segment) -> bool:
    """Exact: does segment e meet the closed region of vis (body + arms)?"""
    if vis.contains(e.a) != "outside" or vis.contains(e.b) != "outside":
        return True
    body = vis.body_polygon()
    for edge in body.edges():
        if segment_intersection(e, edge).kind != "empty":
            return True
    for arm in vis.arms:
        if segment_intersection(e, arm).kind != "empty":
            return True
    return False


def disjoint_via_windows(region: Region, v: Point2, w: Point2) -> bool:
    """Window-based disjointness: not mutually visible and w invisible from
    every window (arm windows included) of Vis(v)."""
    if region.contains(v) == "outside" or region.contains(w) == "outside":
        raise PointOutside("query point outside polygon")
    if visible(region, v, w):
        return False
    vis_v = visibility_polygon(region, v)
    vis_w = visibility_polygon(region, w)
    for win in vis_v.windows:
        if _window_meets_region(vis_w, win.segment):
            return False
    return True


@dataclass
class NVisDecomposition:
    region: PolygonalRegion
    # component index -> list of (witness point, attaching Window of its Vis)
    attachments: Dict[int, List[Tuple[Point2, Window]]]
    # (component index, witness point, window) contacts that are single points
    degenerate_contacts: Tuple[Tuple[int, Point2, Point2], ...] = ()
    arm_crossings: Tuple[Tuple[int, Point2], ...] = ()


def nvis(region: SimplePolygon, witnesses: Sequence[Point2]) -> NVisDecomposition:
    """Exact decomposition of P minus the union of witness visibility regions.

    Components are the closures of the connected components of the interior;
    their boundary parts lying inside some Vis(w) carry excluded marks (the
    open attachment sides).
    """
    ok, cert = verify_witness_set(region, witnesses)
    if not ok:
        raise NotAWitnessSet(f"not a witness set: {cert.transcript[-1] if cert.transcript else ''}")
    pts = sorted(witnesses)
    vis = [visibility_polygon(region, p) for p in pts]
    bodies = [v.body_polygon() for v in vis]

    tagged = [(e, 0) for e in region.edges()]
    for i, b in enumerate(bodies):
        tagged.extend((e, i + 1) for e in b.edges())
    subedges = split_at_intersections(tagged)

    def keep(flags, rep):
        return flags[0] and not any(flags[1:])

    def outside_all_vis(p: Point2) -> bool:
        return all(b.contains(p) == "outside" for b in bodies)

    def mark(p: Point2) -> bool:
        return not outside_all_vis(p)

    result = build_region(subedges, len(bodies) + 1, keep, outside_all_vis, mark)

    attachments: Dict[int, List[Tuple[Point2, Window]]] = {}
    degenerate: List[Tuple[int, Point2, Point2]] = []
    for ci, comp in enumerate(result.components):
        comp_edges = comp.boundary_edges()
        for wi, vp in enumerate(vis):
            for win in vp.windows:
                overlap = False
                point_touch = None
                for ce in comp_edges:
                    inter = segment_intersection(win.segment, ce)
                    if inter.kind == "overlap":
                        overlap = True
                        break
                    if inter.kind == "point":
                        point_touch = inter.point
                if overlap:
                    attachments.setdefault(ci, []).append((pts[wi], win))
                elif point_touch is not None:
                    degenerate.append((ci, pts[wi], point_touch))

    arm_crossings: List[Tuple[int, Point2]] = []
    for ci, comp in enumerate(result.components):
        for wi, vp in enumerate(vis):
            for arm in vp.arms:
                # An arm slicing a component (boundary crossing or an endpoint
                # strictly inside) is surfaced for inspection; it does not
                # split the regularized component.
                for ce in comp.boundary_edges():
                    if segment_intersection(arm, ce).kind != "empty":
                        arm_crossings.append((ci, pts[wi]))
                        break
                else:
                    if comp.contains(arm.a) == "interior" or comp.contains(arm.b) == "interior":
                        arm_crossings.append((ci, pts[wi]))

    return NVisDecomposition(
        region=result,
        attachments=attachments,
        degenerate_contacts=tuple(degenerate),
        arm_crossings=tuple(arm_crossings),
    )
