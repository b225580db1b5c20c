import random
from fractions import Fraction

import pytest

from witpoly.errors import NotAWindow
from witpoly.geometry import pt
from witpoly.structure import (
    NeighborWitnessGraph,
    movable_region,
    neighbor_witness_graph,
    perfect_elimination_ordering,
    simplicial_replace,
    visibility_split,
)
from witpoly.visibility import visibility_polygon
from witpoly.witness import verify_witness_set
from instances import comb_polygon


W1 = pt(Fraction(1, 2), Fraction(7, 2))
W2 = pt(Fraction(5, 2), Fraction(7, 2))


def graph_of(edges, vertices):
    canon = frozenset((min(a, b), max(a, b)) for a, b in edges)
    return NeighborWitnessGraph(tuple(sorted(vertices)), canon, {}, {})


def test_singleton_graph(l_polygon):
    g = neighbor_witness_graph(l_polygon, [pt(3, 1)])
    assert g.vertices == (pt(3, 1),)
    assert not g.edges


def test_u_polygon_two_witness_graph(u_polygon):
    g = neighbor_witness_graph(u_polygon, [W1, W2])
    # The middle strip component attaches to both prongs' regions: one edge.
    assert g.has_edge(W1, W2)
    win12 = g.edge_windows[(W1, W2)]
    win21 = g.edge_windows[(W2, W1)]
    assert win12.segment != win21.segment
    assert g.edge_components[(min(W1, W2), max(W1, W2))] in range(5)


def test_comb_three_witness_graph():
    comb = comb_polygon(3, prong_width=1, gap=1, height=6, base=1)
    witnesses = [
        pt(Fraction(1, 2), Fraction(27, 4)),
        pt(Fraction(5, 2), Fraction(27, 4)),
        pt(Fraction(9, 2), Fraction(27, 4)),
    ]
    ok, _ = verify_witness_set(comb, witnesses)
    assert ok
    g = neighbor_witness_graph(comb, witnesses)
    assert len(g.edges) >= 1
    peo = perfect_elimination_ordering(g)
    assert peo is not None


def test_peo_triangle_and_cycle():
    a, b, c, d = pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)
    tri = graph_of([(a, b), (b, c), (a, c)], [a, b, c])
    assert perfect_elimination_ordering(tri) is not None
    four_cycle = graph_of([(a, b), (b, c), (c, d), (d, a)], [a, b, c, d])
    assert perfect_elimination_ordering(four_cycle) is None
    tree = graph_of([(a, b), (b, c), (b, d)], [a, b, c, d])
    assert perfect_elimination_ordering(tree) is not None


def test_visibility_split_l_polygon(l_polygon):
    vis = visibility_polygon(l_polygon, pt(3, 1))
    win = vis.non_arm_windows()[0]
    split = visibility_split(vis, win)
    assert split.cut.a == pt(2, 2)
    # Areas of the two sides sum to the visibility area.
    assert split.side1.area() + split.side2.area() == vis.area()
    # The window lies on side1's boundary only.
    from witpoly.geometry import on_segment

    def on_boundary(regionlike, seg):
        mid = pt(Fraction(seg.a.x + seg.b.x, 2), Fraction(seg.a.y + seg.b.y, 2))
        return any(on_segment(mid, e) for e in regionlike.components[0].boundary_edges())

    assert on_boundary(split.side1, win.segment)
    assert not on_boundary(split.side2, win.segment)


def test_visibility_split_rejects_non_window(l_polygon, u_polygon):
    vis = visibility_polygon(l_polygon, pt(3, 1))
    from witpoly.visibility import Window
    from witpoly.geometry import Segment

    fake = Window(Segment(pt(0, 0), pt(1, 1)), pt(0, 0), pt(1, 1))
    with pytest.raises(NotAWindow):
        visibility_split(vis, fake)


def test_simplicial_replace_convex(unit_square):
    half = Fraction(1, 2)
    out = simplicial_replace(unit_square, [pt(half, half)], pt(half, half))
    assert out in unit_square.vertices


def test_simplicial_replace_l_polygon(l_polygon):
    out = simplicial_replace(l_polygon, [pt(3, 1)], pt(3, 1))
    assert out in l_polygon.vertices
    ok, _ = verify_witness_set(l_polygon, [out])
    assert ok


def test_simplicial_replace_u_polygon(u_polygon):
    for w in (W1, W2):
        out = simplicial_replace(u_polygon, [W1, W2], w)
        assert out in u_polygon.vertices
        replaced = [out if p == w else p for p in (W1, W2)]
        ok, _ = verify_witness_set(u_polygon, replaced)
        assert ok


def test_movable_region_isolated(l_polygon):
    mv = movable_region(l_polygon, [pt(3, 1)], pt(3, 1))
    vis = visibility_polygon(l_polygon, pt(3, 1))
    # No neighbors: the movable region is the full visibility region.
    assert mv.region.area() == vis.area()
    assert mv.region.contains(pt(3, 1)) != "outside"


def test_movable_region_u_polygon(u_polygon):
    rng = random.Random(41)
    mv = movable_region(u_polygon, [W1, W2], W1)
    assert mv.region.contains(W1) != "outside"
    # Any interior sample of the movable region keeps the witness property.
    comp = mv.region.components[0]
    tested = 0
    for _ in range(200):
        if tested >= 12:
            break
        x = pt(Fraction(rng.randint(0, 12), 4), Fraction(rng.randint(0, 16), 4))
        if comp.contains(x) != "interior":
            continue
        ok, _ = verify_witness_set(u_polygon, [x, W2])
        assert ok, f"relocating to {x!r} broke the set"
        tested += 1
    assert tested >= 4


def test_movable_region_two_vertex_property(u_polygon):
    # With the other witness on a discretization point, the movable region
    # holds two candidates whose open midpoint segment stays interior.
    from witpoly.discretize import witgen
    from witpoly.geometry import midpoint
    from witpoly.polygon import segment_in_region
    from witpoly.solver import solve_continuous

    cs = witgen(u_polygon, 2)
    result = solve_continuous(u_polygon, 2)
    assert result.found
    q_set = set(cs.points)
    assert all(w in q_set for w in result.witnesses)
    for w in result.witnesses:
        mv = movable_region(u_polygon, result.witnesses, w)
        comp = mv.region.components[0]
        inside = [q for q in cs.points if comp.contains(q) != "outside"]
        pair = None
        for i in range(len(inside)):
            for j in range(i + 1, len(inside)):
                a, b = inside[i], inside[j]
                if comp.contains(midpoint(a, b)) == "interior" and segment_in_region(comp, a, b):
                    pair = (a, b)
                    break
            if pair:
                break
        assert pair is not None, f"no midpoint-admitting candidate pair in MV({w})"
