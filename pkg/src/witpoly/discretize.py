"""Candidate-set generation: maximal chords, iterated intersections, midpoints.

The generator runs three phases driven by the target witness count k:
  A) 2(k-1) rounds of building all maximal chords from current candidates
     through visible reflex vertices and intersecting them with the chord set,
  B) one round inserting midpoints of every mutually visible candidate pair,
  C) 2(k-2) rounds alternating a chord round with a midpoint round.
Negative round counts clamp to zero. Everything is exact; every generated
point carries a provenance record sufficient to recompute it.

Budgets cap points, chords and wall-clock time; on exhaustion a partial set
is returned flagged incomplete (the solver treats those as inconclusive).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .errors import NotReflex, NotVisible
from .geometry import Point2, Segment, segment_intersection
from .geometry import midpoint as geom_midpoint
from .polygon import SimplePolygon, ray_visible_end, segment_in_region


@dataclass(frozen=True)
class Budget:
    max_points: int = 200_000
    max_chords: int = 50_000
    max_seconds: float = 600.0

    def __post_init__(self):
        if self.max_points <= 0 or self.max_chords <= 0 or self.max_seconds <= 0:
            raise ValueError("budget limits must be positive")


@dataclass(frozen=True)
class Provenance:
    kind: str  # "polygon_vertex" | "chord_intersection" | "midpoint"
    iteration: int = 0
    parents: Tuple = ()


@dataclass
class CandidateSet:
    polygon: SimplePolygon
    k: int
    points: List[Point2]
    chords: List[Segment]
    provenance: Dict[Point2, Provenance]
    iteration_log: List[dict]
    complete: bool = True
    budget_note: str = ""


def maximal_chord(region: SimplePolygon, v: Point2, r: Point2, one_sided: bool = False) -> Segment:
    """The maximal segment of the region on the line through v and r that
    contains vr: extended beyond both endpoints to the boundary (or beyond r
    only, in one-sided mode)."""
    reflex = set(region.reflex_vertices())
    if r not in reflex:
        raise NotReflex(f"{r!r} is not a reflex vertex")
    if v == r:
        raise ValueError("chord endpoints coincide")
    if not segment_in_region(region, v, r):
        raise NotVisible(f"{r!r} not visible from {v!r}")
    beyond_r, _ = ray_visible_end(region, v, Point2(r.x - v.x, r.y - v.y))
    if one_sided:
        return Segment(v, beyond_r).canonical()
    beyond_v, _ = ray_visible_end(region, r, Point2(v.x - r.x, v.y - r.y))
    return Segment(beyond_v, beyond_r).canonical()


def witgen(
    region: SimplePolygon,
    k: int,
    budget: Budget = Budget(),
    one_sided: bool = False,
) -> CandidateSet:
    """Algorithm-driven discretization of witness locations (deterministic)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    start = time.monotonic()
    reflex = sorted(region.reflex_vertices())

    points: Dict[Point2, Provenance] = {}
    for v in region.vertices:
        points[v] = Provenance("polygon_vertex")
    chords: Dict[Segment, None] = {}
    for e in region.edges():
        chords[e.canonical()] = None
    log: List[dict] = []
    state = {"complete": True, "note": ""}
    iteration = 0

    def over_budget() -> bool:
        if len(points) > budget.max_points:
            state.update(complete=False, note=f"point budget {budget.max_points} exceeded")
            return True
        if len(chords) > budget.max_chords:
            state.update(complete=False, note=f"chord budget {budget.max_chords} exceeded")
            return True
        if time.monotonic() - start > budget.max_seconds:
            state.update(complete=False, note=f"time budget {budget.max_seconds}s exceeded")
            return True
        return False

    def chord_round(phase: str) -> bool:
        nonlocal iteration
        iteration += 1
        old_chords = list(chords)
        current = []
        for q in sorted(points):
            for r in reflex:
                if q == r:
                    continue
                if not segment_in_region(region, q, r):
                    continue
                current.append(maximal_chord(region, q, r, one_sided))
        new_points = 0
        new_chords = 0
        for c in current:
            if c not in chords:
                chords[c] = None
                new_chords += 1
                if len(chords) > budget.max_chords:
                    break
        for c in sorted(set(current)):
            for l in old_chords:
                inter = segment_intersection(c, l)
                if inter.kind == "point":
                    cand = [inter.point]
                elif inter.kind == "overlap":
                    cand = [inter.overlap.a, inter.overlap.b]
                else:
                    continue
                for p in cand:
                    if p not in points:
                        points[p] = Provenance("chord_intersection", iteration, (c, l))
                        new_points += 1
            if len(points) > budget.max_points:
                break
        log.append(
            {
                "phase": phase,
                "iteration": iteration,
                "new_points": new_points,
                "new_chords": new_chords,
                "points_total": len(points),
                "chords_total": len(chords),
            }
        )
        return not over_budget()

    def midpoint_round(phase: str) -> bool:
        nonlocal iteration
        iteration += 1
        snapshot = sorted(points)
        new_points = 0
        aborted = False
        for i in range(len(snapshot)):
            for j in range(i + 1, len(snapshot)):
                a, b = snapshot[i], snapshot[j]
                if not segment_in_region(region, a, b):
                    continue
                m = geom_midpoint(a, b)
                if m not in points:
                    points[m] = Provenance("midpoint", iteration, (a, b))
                    new_points += 1
                    if len(points) > budget.max_points:
                        aborted = True
                        break
            if aborted:
                break
        log.append(
            {
                "phase": phase,
                "iteration": iteration,
                "new_points": new_points,
                "new_chords": 0,
                "points_total": len(points),
                "chords_total": len(chords),
            }
        )
        return not over_budget()

    def run() -> None:
        for _ in range(max(0, 2 * (k - 1))):
            if not chord_round("A"):
                return
        if not midpoint_round("B"):
            return
        for _ in range(max(0, 2 * (k - 2))):
            if not chord_round("C"):
                return
            if not midpoint_round("C"):
                return

    run()
    return CandidateSet(
        polygon=region,
        k=k,
        points=sorted(points),
        chords=sorted(chords),
        provenance=dict(points),
        iteration_log=log,
        complete=state["complete"],
        budget_note=state["note"],
    )


def replay_provenance(candidates: CandidateSet, p: Point2) -> Point2:
    """Recompute a candidate point from its provenance record."""
    prov = candidates.provenance[p]
    if prov.kind == "polygon_vertex":
        if p not in candidates.polygon.vertices:
            raise AssertionError(f"{p!r} recorded as vertex but absent")
        return p
    if prov.kind == "chord_intersection":
        c, l = prov.parents
        inter = segment_intersection(c, l)
        if inter.kind == "point":
            return inter.point
        if inter.kind == "overlap":
            if p in (inter.overlap.a, inter.overlap.b):
                return p
        raise AssertionError(f"chords no longer intersect at {p!r}")
    if prov.kind == "midpoint":
        a, b = prov.parents
        return geom_midpoint(a, b)
    raise AssertionError(f"unknown provenance {prov.kind!r}")
