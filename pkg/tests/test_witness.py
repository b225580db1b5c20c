import random
from fractions import Fraction

import pytest

from witpoly.errors import NotAWitnessSet
from witpoly.geometry import pt
from witpoly.regions import region_boolean
from witpoly.visibility import visibility_polygon
from witpoly.witness import (
    disjoint_via_windows,
    nvis,
    regions_intersect,
    verify_witness_set,
)
from instances import random_star_polygon, interior_sample


W1 = pt(Fraction(1, 2), Fraction(7, 2))
W2 = pt(Fraction(5, 2), Fraction(7, 2))


def test_regions_intersect_identity(l_polygon):
    v = visibility_polygon(l_polygon, pt(3, 1))
    assert regions_intersect(v, v)


def test_regions_intersect_l_polygon(l_polygon):
    v1 = visibility_polygon(l_polygon, pt(3, 1))
    v2 = visibility_polygon(l_polygon, pt(1, 3))
    assert regions_intersect(v1, v2)  # both contain (0,0)


def test_regions_disjoint_in_pockets(u_polygon):
    v1 = visibility_polygon(u_polygon, W1)
    v2 = visibility_polygon(u_polygon, W2)
    assert not regions_intersect(v1, v2)


def test_verify_witness_set_singleton(l_polygon):
    ok, cert = verify_witness_set(l_polygon, [pt(3, 1)])
    assert ok and cert.valid


def test_verify_witness_set_l_polygon_pair_fails(l_polygon):
    ok, cert = verify_witness_set(l_polygon, [pt(3, 1), pt(1, 3)])
    assert not ok
    c = cert.counterexample
    assert c is not None
    v1 = visibility_polygon(l_polygon, pt(3, 1))
    v2 = visibility_polygon(l_polygon, pt(1, 3))
    assert v1.contains(c) != "outside" and v2.contains(c) != "outside"


def test_verify_witness_set_duplicates_invalid(l_polygon):
    ok, cert = verify_witness_set(l_polygon, [pt(3, 1), pt(3, 1)])
    assert not ok
    assert cert.counterexample == pt(3, 1)


def test_verify_witness_set_u_polygon(u_polygon):
    ok, _ = verify_witness_set(u_polygon, [W1, W2])
    assert ok


def test_disjoint_via_windows_cases(unit_square, l_polygon, u_polygon):
    assert not disjoint_via_windows(unit_square, pt(Fraction(1, 4), Fraction(1, 4)), pt(Fraction(3, 4), Fraction(3, 4)))
    assert not disjoint_via_windows(l_polygon, pt(3, 1), pt(1, 3))
    assert disjoint_via_windows(u_polygon, W1, W2)


def test_disjointness_equivalence_random():
    rng = random.Random(71)
    agree = 0
    for _ in range(60):
        poly = random_star_polygon(rng, rng.randint(5, 10), 16)
        v = interior_sample(poly, rng)
        w = interior_sample(poly, rng)
        if v == w:
            continue
        via_windows = disjoint_via_windows(poly, v, w)
        via_regions = not regions_intersect(
            visibility_polygon(poly, v), visibility_polygon(poly, w)
        )
        assert via_windows == via_regions, f"{poly!r} {v!r} {w!r}"
        agree += 1
    assert agree >= 50


def test_nvis_convex_empty(unit_square):
    d = nvis(unit_square, [pt(Fraction(1, 2), Fraction(1, 2))])
    assert d.region.is_empty()


def test_nvis_l_polygon(l_polygon):
    d = nvis(l_polygon, [pt(3, 1)])
    assert len(d.region.components) == 1
    comp = d.region.components[0]
    assert comp.area() == 2  # triangle (2,2),(2,4),(0,4)
    atts = d.attachments[0]
    assert len(atts) == 1
    wp, win = atts[0]
    assert wp == pt(3, 1)
    assert win.base == pt(2, 2) and win.end == pt(0, 4)
    # Open side marked along the window.
    marks = d.region.excluded.get(0, [])
    assert any(m.canonical() == win.segment.canonical() for m in marks)


def test_nvis_requires_witness_set(l_polygon):
    with pytest.raises(NotAWitnessSet):
        nvis(l_polygon, [pt(3, 1), pt(1, 3)])


def test_nvis_u_polygon_components(u_polygon):
    d = nvis(u_polygon, [W1, W2])
    # Areas conserve: P = union(Vis) + NVis exactly.
    vis_union = region_boolean(
        "union",
        visibility_polygon(u_polygon, W1).region(),
        visibility_polygon(u_polygon, W2).region(),
    )
    assert vis_union.area() + d.region.area() == u_polygon.area()
    # Each component attaches to at least one witness region via one window.
    for ci in range(len(d.region.components)):
        atts = d.attachments.get(ci, [])
        assert atts, f"component {ci} unattached"
        per_witness = {}
        for wp, win in atts:
            per_witness.setdefault(wp, set()).add(win.segment.canonical())
        for wp, wins in per_witness.items():
            assert len(wins) == 1  # exactly one window carries each attachment


def test_nvis_conservation_random():
    rng = random.Random(99)
    done = 0
    while done < 8:
        poly = random_star_polygon(rng, 8, 12)
        w = interior_sample(poly, rng)
        d = nvis(poly, [w])
        vis = visibility_polygon(poly, w)
        assert vis.area() + d.region.area() == poly.area()
        done += 1
