"""Exact discrete witness solving: conflict graphs, independent-set search,
the end-to-end continuous solver, and the brute-force grid oracle.

Conflict adjacency between candidates is decided exactly. Two certificate
fast paths avoid the full region-intersection test for most pairs: a shared
exact grid sample inside both visibility regions proves overlap, and so does
the area pigeonhole area(Vis(a)) + area(Vis(b)) > area(P). Pairs passing both
filters get the exact test. The certificates are exact, so the adjacency
equals the definitional one; they only change the cost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .discretize import Budget, witgen
from .errors import PointOutside
from .geometry import Point2, Rat, rat
from .polygon import Region, SimplePolygon, region_vertices
from .visibility import VisibilityPolygon, regions_common_point, visibility_polygon
from .witness import verify_witness_set


@dataclass
class ConflictGraph:
    region: Region
    candidates: Tuple[Point2, ...]
    adjacency: Tuple[int, ...]  # bitmask rows; bit j of row i set iff i~j

    def degree(self, i: int) -> int:
        return bin(self.adjacency[i]).count("1")

    def are_adjacent(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)


@dataclass
class SolveResult:
    found: bool
    witnesses: List[Point2] = field(default_factory=list)
    explored_nodes: int = 0
    certificate: Tuple[str, ...] = ()
    inconclusive: bool = False


class _AdjacencyOracle:
    """Exact adjacency between candidate visibility regions, lazily built.

    Certificates short-circuit the full region test: disjoint bounding boxes
    prove disjointness, and area(Vis(a)) + area(Vis(b)) > area(P) proves
    overlap by pigeonhole. The exact common-point test itself returns on the
    first crossing edge pair, so overlapping pairs are cheap anyway.
    """

    def __init__(self, region: Region, candidates: Sequence[Point2]):
        self.region = region
        self.candidates = list(candidates)
        for p in self.candidates:
            if region.contains(p) == "outside":
                raise PointOutside(f"candidate {p!r} outside polygon")
        self.vis: List[VisibilityPolygon] = [visibility_polygon(region, p) for p in self.candidates]
        self.areas = [Fraction(v.area()) for v in self.vis]
        self.total_area = Fraction(region.area())
        self.boxes = [self._bbox(v) for v in self.vis]
        self._rows: Dict[int, int] = {}
        self.exact_tests = 0

    @staticmethod
    def _bbox(v: VisibilityPolygon):
        xs = [p.x for p in v.boundary] + [p.x for a in v.arms for p in a]
        ys = [p.y for p in v.boundary] + [p.y for a in v.arms for p in a]
        return (min(xs), max(xs), min(ys), max(ys))

    def adjacent(self, i: int, j: int) -> bool:
        bi, bj = self.boxes[i], self.boxes[j]
        if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
            return False
        if self.areas[i] + self.areas[j] > self.total_area:
            return True
        self.exact_tests += 1
        return regions_common_point(self.vis[i], self.vis[j]) is not None

    def row(self, i: int) -> int:
        cached = self._rows.get(i)
        if cached is not None:
            return cached
        m = 0
        for j in range(len(self.candidates)):
            if j != i and self.adjacent(i, j):
                m |= 1 << j
        self._rows[i] = m
        return m


def conflict_graph(region: Region, candidates: Sequence[Point2]) -> ConflictGraph:
    """Eager exact conflict graph: candidates adjacent iff their visibility
    regions (closed, arms included) intersect."""
    pts = sorted(set(candidates))
    oracle = _AdjacencyOracle(region, pts)
    rows = tuple(oracle.row(i) for i in range(len(pts)))
    return ConflictGraph(region=region, candidates=tuple(pts), adjacency=rows)


def _clique_cover_bound(rows: Sequence[int], avail: int) -> int:
    """Number of cliques in a greedy cover of the available vertices; an upper
    bound on the independence number of the induced subgraph."""
    cliques: List[Tuple[int, int]] = []  # (members mask, common adjacency mask)
    v = avail
    while v:
        b = v & -v
        i = b.bit_length() - 1
        v ^= b
        placed = False
        for idx, (members, common) in enumerate(cliques):
            if common >> i & 1:
                cliques[idx] = (members | b, common & rows[i])
                placed = True
                break
        if not placed:
            cliques.append((b, rows[i] & avail))
    return len(cliques)


def _search_independent(rows: Sequence[int], target: int):
    """Lexicographically least independent set of the given size, or None.

    Branching follows candidate order include-first, so the first complete
    set found is the lex-least one; a greedy clique-cover bound prunes.
    """
    n = len(rows)
    explored = 0
    if target == 0:
        return [], 0
    full = (1 << n) - 1

    def search(avail: int, chosen: List[int]) -> Optional[List[int]]:
        nonlocal explored
        explored += 1
        need = target - len(chosen)
        if need == 0:
            return chosen
        if bin(avail).count("1") < need:
            return None
        if _clique_cover_bound(rows, avail) < need:
            return None
        v = avail
        while v:
            b = v & -v
            i = b.bit_length() - 1
            v ^= b
            picked = search(avail & ~rows[i] & ~((b << 1) - 1), chosen + [i])
            if picked is not None:
                return picked
            avail ^= b
            if bin(avail).count("1") < need:
                return None
        return None

    result = search(full, [])
    return result, explored


def max_independent_set(graph: ConflictGraph, target: int) -> SolveResult:
    """Find an independent set of size >= target or prove none exists."""
    if target < 0:
        raise ValueError("target must be non-negative")
    picked, explored = _search_independent(graph.adjacency, target)
    if picked is None:
        return SolveResult(found=False, explored_nodes=explored, certificate=("no independent set",))
    return SolveResult(
        found=True,
        witnesses=[graph.candidates[i] for i in picked],
        explored_nodes=explored,
        certificate=(f"independent set of size {len(picked)}",),
    )


def solve_discrete(region: Region, candidates: Sequence[Point2], k: int) -> SolveResult:
    """Does some size-k subset of the candidates form a witness set?

    Adjacency rows are materialized lazily during the search; any found set
    is re-verified with the full witness verifier before being returned.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return SolveResult(found=True, witnesses=[], certificate=("empty set",))
    pts = sorted(set(candidates))
    if len(pts) < k:
        return SolveResult(found=False, certificate=(f"only {len(pts)} candidates",))
    oracle = _AdjacencyOracle(region, pts)

    class LazyRows:
        def __len__(self):
            return len(pts)

        def __getitem__(self, i):
            return oracle.row(i)

    picked, explored = _search_independent(LazyRows(), k)
    if picked is None:
        return SolveResult(
            found=False,
            explored_nodes=explored,
            certificate=(f"{len(pts)} candidates, no size-{k} witness subset",),
        )
    witnesses = [pts[i] for i in picked]
    ok, cert = verify_witness_set(region, witnesses)
    if not ok:
        raise AssertionError(f"solver produced an invalid witness set: {cert.offending_pair}")
    return SolveResult(
        found=True,
        witnesses=witnesses,
        explored_nodes=explored,
        certificate=cert.transcript,
    )


def solve_continuous(region: SimplePolygon, k: int, budget: Budget = Budget()) -> SolveResult:
    """Continuous witness decision: discretize, then solve the discrete
    instance. NOT-FOUND on a complete candidate set is a correct NO; on a
    budget-truncated set the answer degrades to inconclusive."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return SolveResult(found=True, witnesses=[], certificate=("empty set",))
    if k == 1:
        w = min(region.vertices)
        return SolveResult(found=True, witnesses=[w], certificate=("any single point works",))
    cs = witgen(region, k, budget)
    result = solve_discrete(region, cs.points, k)
    if result.found:
        return result
    if not cs.complete:
        return SolveResult(
            found=False,
            explored_nodes=result.explored_nodes,
            certificate=result.certificate + (f"inconclusive: {cs.budget_note}",),
            inconclusive=True,
        )
    return result


def grid_oracle(region: Region, step: Rat, k: int) -> SolveResult:
    """Brute-force lower bound: solve the discrete instance over all grid
    points (multiples of step) inside the region plus its vertices."""
    step = Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    verts = region_vertices(region)
    xs = [v.x for v in verts]
    ys = [v.y for v in verts]
    candidates = set(verts)
    kx0 = math.ceil(Fraction(min(xs)) / step)
    kx1 = math.floor(Fraction(max(xs)) / step)
    ky0 = math.ceil(Fraction(min(ys)) / step)
    ky1 = math.floor(Fraction(max(ys)) / step)
    for ix in range(kx0, kx1 + 1):
        for iy in range(ky0, ky1 + 1):
            p = Point2(rat(ix * step), rat(iy * step))
            if region.contains(p) != "outside":
                candidates.add(p)
    return solve_discrete(region, sorted(candidates), k)
