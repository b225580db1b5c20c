"""PMR3SAT -> Discrete Witness Set reduction on rectilinear polygons with holes.

Geometry overview (all coordinates integral; rooms painted on a unit cell
grid, the polygon is the union's boundary with holes):

  - Variable gadget: m vertical red shafts crossing m horizontal orange
    corridors. Red point i sits high in shaft i and sees down through every
    junction; orange point j sits at its corridor's west end and sees along
    it. Every (i, j) pair shares its junction cell, so reds and oranges of
    one variable conflict pairwise (complete bipartite), while same-color
    points are parallel and disjoint: a gadget contributes m points, all of
    one color.
  - Positive incidence (clause c contains v): a private chamber hangs east
    of shaft c's top; the red sees into it sideways through a small aperture
    and the clause's blue looks down into it through a tube from the clause
    box above. Their view cones cross inside the chamber, so that blue
    conflicts exactly r_c of v. Negative incidences mirror this below the
    corridor west ends (a staircase keeps the tubes from crossing rows).
  - Dead blues (clauses with fewer than three literals) sit in chambers west
    of an anchor slot's shaft top, with a lower shaft crossing all of the
    anchor variable's corridors: they conflict that red and every orange of
    the anchor variable, hence are blocked whichever color the variable
    plays, and they see into their clause box through their tube (so the
    clause's blues still conflict pairwise).
  - A "waist" corridor crossing every shaft links all gadgets into one
    polygon without adding candidate conflicts.

Generation is self-checking: the exact pairwise conflict matrix of all
candidates is compared against the intended graph, and a mismatch raises
InvariantViolated naming the offending pair (after retrying a deterministic
schedule of wider spacings).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from .errors import EmbeddingInvalid, InvariantViolated, TooLarge
from .geometry import Point2, pt
from .polygon import PolygonWithHoles, SimplePolygon
from .solver import solve_discrete
from .visibility import visibility_polygon
from .witness import regions_intersect


@dataclass(frozen=True)
class Clause:
    polarity: str  # "+" or "-"
    variables: Tuple[int, ...]  # 1-based, distinct, 1..3 of them


@dataclass
class PMR3SATInstance:
    n: int
    clauses: List[Clause]
    variable_order: Optional[List[int]] = None  # permutation of 1..n
    clause_levels: Optional[Dict[int, int]] = None  # clause index -> level >= 0

    def __post_init__(self):
        for c in self.clauses:
            if not (1 <= len(c.variables) <= 3):
                raise EmbeddingInvalid("clauses must have 1..3 literals")
            if len(set(c.variables)) != len(c.variables):
                raise EmbeddingInvalid("repeated variable in clause")
            if c.polarity not in "+-":
                raise EmbeddingInvalid(f"bad polarity {c.polarity!r}")
            for v in c.variables:
                if not (1 <= v <= self.n):
                    raise EmbeddingInvalid(f"variable {v} out of range")


def sat_bruteforce(formula: PMR3SATInstance) -> bool:
    """Exhaustive satisfiability over all 2^n assignments."""
    if formula.n > 20:
        raise TooLarge(f"{formula.n} variables exceeds the brute-force limit")
    for bits in range(1 << formula.n):
        ok = True
        for c in formula.clauses:
            if c.polarity == "+":
                sat = any(bits >> (v - 1) & 1 for v in c.variables)
            else:
                sat = any(not (bits >> (v - 1) & 1) for v in c.variables)
            if not sat:
                ok = False
                break
        if ok:
            return True
    return False


def auto_layout(formula: PMR3SATInstance) -> Tuple[List[int], Dict[int, int]]:
    """Variable order and clause nesting levels.

    Each incidence leg lands at slot `clause index` of its variable gadget,
    so clause x-intervals compare as (variable position, clause index) tuple
    pairs. Same-side intervals must be disjoint or strictly nested; nesting
    containers go to higher levels so their legs clear contained boxes.
    """
    order = formula.variable_order or list(range(1, formula.n + 1))
    if sorted(order) != list(range(1, formula.n + 1)):
        raise EmbeddingInvalid("variable order is not a permutation")
    pos = {v: i for i, v in enumerate(order)}
    levels: Dict[int, int] = {}
    for side in "+-":
        spans = []
        for ci, c in enumerate(formula.clauses):
            if c.polarity != side:
                continue
            ps = sorted(pos[v] for v in c.variables)
            spans.append(((ps[0], ci), (ps[-1], ci), ci))
        for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(spans, 2):
            disjoint = b1 < a2 or b2 < a1
            nested = (a1 < a2 and b2 < b1) or (a2 < a1 and b1 < b2)
            if not (disjoint or nested):
                raise EmbeddingInvalid(f"clauses {c1} and {c2} interleave on the same side")

        def level_of(span, all_spans, memo):
            a, b, ci = span
            if ci in memo:
                return memo[ci]
            inner = [s for s in all_spans if s[2] != ci and a < s[0] and s[1] < b]
            memo[ci] = 0 if not inner else 1 + max(level_of(s, all_spans, memo) for s in inner)
            return memo[ci]

        memo: Dict[int, int] = {}
        for span in spans:
            levels[span[2]] = level_of(span, spans, memo)
    if formula.clause_levels:
        levels = dict(formula.clause_levels)
    return order, levels


@dataclass
class ReductionOutput:
    polygon: PolygonWithHoles
    candidates: List[Point2]
    colors: Dict[Point2, str]  # "red" | "orange" | "blue"
    k: int
    gadget_map: Dict[str, List[Point2]]  # "v<i>red", "v<i>orange", "c<j>blue"
    dead_blues: Set[Point2] = field(default_factory=set)
    expected_conflicts: Set[Tuple[Point2, Point2]] = field(default_factory=set)
    # clause index -> real blues in literal order (parallel to clause.variables)
    real_blues: Dict[int, List[Point2]] = field(default_factory=dict)


class _Painter:
    def __init__(self):
        self.cells: Set[Tuple[int, int]] = set()

    def rect(self, x0: int, y0: int, x1: int, y1: int):
        """Fill cells of the half-open box [x0,x1) x [y0,y1)."""
        if x1 <= x0 or y1 <= y0:
            raise AssertionError(f"degenerate room {x0},{y0},{x1},{y1}")
        for x in range(x0, x1):
            for y in range(y0, y1):
                self.cells.add((x, y))

    def to_polygon(self) -> PolygonWithHoles:
        from .regions import _stitch_cycles, _signed_area2
        from .geometry import Segment
        from .polygon import canonical_cycle

        edges: List[Segment] = []
        for (x, y) in self.cells:
            if (x, y - 1) not in self.cells:
                edges.append(Segment(pt(x, y), pt(x + 1, y)))
            if (x + 1, y) not in self.cells:
                edges.append(Segment(pt(x + 1, y), pt(x + 1, y + 1)))
            if (x, y + 1) not in self.cells:
                edges.append(Segment(pt(x + 1, y + 1), pt(x, y + 1)))
            if (x - 1, y) not in self.cells:
                edges.append(Segment(pt(x, y + 1), pt(x, y)))
        cycles = _stitch_cycles(edges)
        outers = []
        holes = []
        for cyc in cycles:
            verts = list(canonical_cycle(cyc))
            if _signed_area2(cyc) > 0:
                outers.append(verts)
            else:
                holes.append(verts)
        if len(outers) != 1:
            raise InvariantViolated(f"polygon has {len(outers)} components; must be connected")
        return PolygonWithHoles(
            SimplePolygon(outers[0], validate=False, allow_collinear=False),
            [SimplePolygon(h, validate=False) for h in holes],
            validate=False,
        )


def _build(formula: PMR3SATInstance, spacing: int) -> ReductionOutput:
    order, levels = auto_layout(formula)
    pos = {v: i for i, v in enumerate(order)}
    n = formula.n
    m = len(formula.clauses)
    if m == 0:
        raise EmbeddingInvalid("need at least one clause")
    SP = spacing  # inter-shaft spacing, escalation knob
    XW = 20  # west end of every corridor
    PORT0 = XW + 4  # first negative floor-port slot
    PORTS = 3 * m  # one reserved slot per potential negative unit
    SX0 = PORT0 + 8 * PORTS + 8
    RTOP = 8 * m + 2

    def SX(i: int) -> int:
        return SX0 + SP * i

    CEND = SX(m - 1) + 2 + 2
    GW = CEND + 6

    def gx(var_index_0: int, x: int) -> int:
        return var_index_0 * GW + x

    paint = _Painter()
    colors: Dict[Point2, str] = {}
    gadget_map: Dict[str, List[Point2]] = {}
    expected: Set[Tuple[Point2, Point2]] = set()
    dead_blues: Set[Point2] = set()

    def conflict(a: Point2, b: Point2):
        expected.add((min(a, b), max(a, b)))

    reds: Dict[Tuple[int, int], Point2] = {}
    oranges: Dict[Tuple[int, int], Point2] = {}

    for v in range(1, n + 1):
        a = pos[v]
        for j in range(m):
            paint.rect(gx(a, XW), 8 * j, gx(a, CEND), 8 * j + 2)
            oranges[(v, j)] = pt(gx(a, XW) + 1, 8 * j + 1)
        for i in range(m):
            paint.rect(gx(a, SX(i)), 0, gx(a, SX(i)) + 2, RTOP)
            reds[(v, i)] = pt(gx(a, SX(i)) + 1, RTOP - 1)
        gadget_map[f"v{v}red"] = [reds[(v, i)] for i in range(m)]
        gadget_map[f"v{v}orange"] = [oranges[(v, j)] for j in range(m)]
        for p in gadget_map[f"v{v}red"]:
            colors[p] = "red"
        for p in gadget_map[f"v{v}orange"]:
            colors[p] = "orange"
        for i in range(m):
            for j in range(m):
                conflict(reds[(v, i)], oranges[(v, j)])

    # Waist: links all gadgets, crossing every shaft, in the free band above
    # the top corridor row and below the chamber band.
    paint.rect(gx(0, SX(0)) - 2, RTOP - 7, gx(n - 1, CEND) - 2, RTOP - 5)

    # Clause boxes and their blues.
    def PB(lvl: int) -> int:  # box floor height for positive levels
        return RTOP + 6 + 8 * lvl

    def NBtop(lvl: int) -> int:  # box top height for negative levels
        return -6 - 8 * lvl

    blues_by_clause: Dict[int, List[Point2]] = {ci: [] for ci in range(m)}
    real_blues: Dict[int, List[Point2]] = {ci: [] for ci in range(m)}
    mouths_by_clause: Dict[int, List[Tuple[int, int]]] = {ci: [] for ci in range(m)}
    tubes: List[Tuple[int, int, int, int, int]] = []  # x0,x1,ylo,yhi,clause
    ports_used: Dict[int, int] = {}  # gadget index -> negative ports taken

    for ci, clause in enumerate(formula.clauses):
        lvl = levels[ci]
        positive = clause.polarity == "+"
        # Clauses with fewer than three literals repeat their first literal:
        # logically redundant, geometrically a second hook onto the same
        # candidate, preserving |Q| = 2mn + 3m with 3 blues per clause.
        units = list(clause.variables) + [clause.variables[0]] * (3 - len(clause.variables))
        east_count: Dict[int, int] = {}
        for unit_index, v in enumerate(units):
            a = pos[v]
            if positive:
                e = east_count.get(v, 0)
                east_count[v] = e + 1
                # chamber east of shaft ci's top, on the red's sight line,
                # chained behind earlier chambers of the same slot
                base = gx(a, SX(ci)) + 6 * e
                paint.rect(base + 3, RTOP - 4, base + 7, RTOP)
                ap_x0 = base + 2 if e == 0 else base + 1  # shaft wall vs. previous chamber wall
                paint.rect(ap_x0, RTOP - 3, base + 3, RTOP - 1)
                tx0 = base + 5
                paint.rect(tx0, RTOP, tx0 + 2, PB(lvl))
                tubes.append((tx0, tx0 + 2, RTOP, PB(lvl), ci))
                blue = pt(tx0 + 1, PB(lvl) + 1)
                conflict(blue, reds[(v, ci)])
            else:
                # floor port: a tube from the clause box below straight up to
                # corridor ci's floor; it crosses the gadget's lower corridors
                # on the way (extra conflicts with lower oranges are sound:
                # gadget selections are monochrome anyway)
                slot = ports_used.get(a, 0)
                ports_used[a] = slot + 1
                tx0 = gx(a, PORT0) + 8 * slot
                paint.rect(tx0, NBtop(lvl), tx0 + 2, 8 * ci)
                tubes.append((tx0, tx0 + 2, NBtop(lvl), 8 * ci, ci))
                blue = pt(tx0 + 1, NBtop(lvl) - 1)
                for j in range(ci + 1):
                    conflict(blue, oranges[(v, j)])
            colors[blue] = "blue"
            blues_by_clause[ci].append(blue)
            if unit_index < len(clause.variables):
                real_blues[ci].append(blue)
            else:
                dead_blues.add(blue)
            mouths_by_clause[ci].append((tx0, tx0 + 2))

        for b1, b2 in itertools.combinations(blues_by_clause[ci], 2):
            conflict(b1, b2)

    # Boxes span their tube mouths.
    box_spans: List[Tuple[str, int, int, int, int]] = []  # side, lvl, x0, x1, clause
    for ci, clause in enumerate(formula.clauses):
        lvl = levels[ci]
        mouths = mouths_by_clause[ci]
        x0 = min(mx for mx, _ in mouths) - 2
        x1 = max(mx2 for _, mx2 in mouths) + 2
        if clause.polarity == "+":
            paint.rect(x0, PB(lvl), x1, PB(lvl) + 2)
            box_spans.append(("+", lvl, x0, x1, ci))
        else:
            paint.rect(x0, NBtop(lvl) - 2, x1, NBtop(lvl))
            box_spans.append(("-", lvl, x0, x1, ci))

    # Embedding validity: boxes on one level disjoint; tubes avoid foreign boxes.
    for (s1, l1, a1, b1, c1), (s2, l2, a2, b2, c2) in itertools.combinations(box_spans, 2):
        if s1 == s2 and l1 == l2 and not (b1 + 1 <= a2 or b2 + 1 <= a1):
            raise EmbeddingInvalid(f"clause boxes {c1} and {c2} overlap at level {l1}")
    for (tx0, tx1, ty0, ty1, tc) in tubes:
        for (s, lvl, bx0, bx1, bc) in box_spans:
            if bc == tc:
                continue
            if s == "+":
                by0, by1 = PB(lvl), PB(lvl) + 2
            else:
                by0, by1 = NBtop(lvl) - 2, NBtop(lvl)
            if tx0 < bx1 and bx0 < tx1 and ty0 < by1 and by0 < ty1:
                raise EmbeddingInvalid(
                    f"tube of clause {tc} crosses the box of clause {bc}"
                )

    polygon = paint.to_polygon()

    candidates = sorted(colors)
    expected_count = 2 * m * n + 3 * m
    if len(candidates) != expected_count:
        raise InvariantViolated(
            f"|Q| = {len(candidates)}, expected 2mn+3m = {expected_count}"
        )
    for ci in range(m):
        gadget_map[f"c{ci}blue"] = sorted(blues_by_clause[ci])

    return ReductionOutput(
        polygon=polygon,
        candidates=candidates,
        colors=colors,
        k=m * n + m,
        gadget_map=gadget_map,
        dead_blues=dead_blues,
        expected_conflicts=expected,
        real_blues=real_blues,
    )


def _self_check(out: ReductionOutput) -> Optional[Tuple[Point2, Point2, bool]]:
    """Compare the exact pairwise conflict matrix against the intended graph.

    Returns the first offending (a, b, got_conflict) or None when clean.
    """
    vis = {p: visibility_polygon(out.polygon, p) for p in out.candidates}
    for a, b in itertools.combinations(out.candidates, 2):
        got = regions_intersect(vis[a], vis[b])
        want = (min(a, b), max(a, b)) in out.expected_conflicts
        if got != want:
            return (a, b, got)
    return None


def reduce(formula: PMR3SATInstance) -> ReductionOutput:
    """Build the geometric instance with |Q| = 2mn + 3m and k = mn + m.

    The generated geometry is verified exactly (full conflict matrix against
    the intended gadget graph) before being returned; if verification fails
    for every spacing in the escalation schedule, InvariantViolated carries
    the offending pair.
    """
    last: Optional[Tuple[Point2, Point2, bool]] = None
    for spacing in (22, 30, 38):
        out = _build(formula, spacing)
        bad = _self_check(out)
        if bad is None:
            return out
        last = bad
    a, b, got = last
    raise InvariantViolated(
        f"conflict between {a!r} and {b!r}: got {'overlap' if got else 'disjoint'},"
        f" expected the opposite",
        pair=(a, b),
    )


def verify_reduction(formula: PMR3SATInstance) -> bool:
    """End-to-end equivalence: SAT brute force against the geometric solve."""
    out = reduce(formula)
    sat = sat_bruteforce(formula)
    solved = solve_discrete(out.polygon, out.candidates, out.k)
    return sat == solved.found


def assignment_selection(formula: PMR3SATInstance, out: ReductionOutput, assignment: Dict[int, bool]) -> List[Point2]:
    """The selection the completeness argument prescribes for an assignment:
    all orange for true variables, all red for false, one supporting blue per
    clause."""
    chosen: List[Point2] = []
    for v in range(1, formula.n + 1):
        key = f"v{v}orange" if assignment[v] else f"v{v}red"
        chosen.extend(out.gadget_map[key])
    for ci, clause in enumerate(formula.clauses):
        support = None
        for idx, v in enumerate(clause.variables):
            lit_true = assignment[v] if clause.polarity == "+" else not assignment[v]
            if lit_true:
                support = idx
                break
        if support is None:
            raise ValueError(f"assignment does not satisfy clause {ci}")
        chosen.append(out.real_blues[ci][support])
    return chosen
