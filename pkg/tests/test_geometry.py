import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from witpoly.errors import ParseError
from witpoly.geometry import (
    Segment,
    direction_key,
    format_rat,
    line_key,
    midpoint,
    on_segment,
    orientation,
    parse_rat,
    pt,
    seg,
    segment_intersection,
    sort_directions_ccw,
)


def test_orientation_examples():
    assert orientation(pt(0, 0), pt(1, 0), pt(0, 1)) == 1
    assert orientation(pt(0, 0), pt(1, 1), pt(2, 2)) == 0
    assert orientation(pt(0, 0), pt(0, 1), pt(1, 1)) == -1


def test_segment_intersection_examples():
    r = segment_intersection(seg(pt(0, 0), pt(2, 2)), seg(pt(0, 2), pt(2, 0)))
    assert r.kind == "point" and r.point == pt(1, 1)

    r = segment_intersection(seg(pt(0, 0), pt(1, 0)), seg(pt(2, 0), pt(3, 0)))
    assert r.kind == "empty"

    r = segment_intersection(seg(pt(0, 0), pt(2, 0)), seg(pt(1, 0), pt(3, 0)))
    assert r.kind == "overlap" and r.overlap == Segment(pt(1, 0), pt(2, 0))


def test_segment_intersection_touch_cases():
    # Endpoint touching reported as a point.
    r = segment_intersection(seg(pt(0, 0), pt(1, 1)), seg(pt(1, 1), pt(2, 0)))
    assert r.kind == "point" and r.point == pt(1, 1)
    # T-junction.
    r = segment_intersection(seg(pt(0, 0), pt(2, 0)), seg(pt(1, 0), pt(1, 5)))
    assert r.kind == "point" and r.point == pt(1, 0)
    # Collinear single-point overlap.
    r = segment_intersection(seg(pt(0, 0), pt(1, 0)), seg(pt(1, 0), pt(2, 0)))
    assert r.kind == "point" and r.point == pt(1, 0)


def test_midpoint_examples():
    assert midpoint(pt(0, 0), pt(1, 1)) == pt(Fraction(1, 2), Fraction(1, 2))
    assert midpoint(pt(Fraction(1, 3), 0), pt(Fraction(2, 3), 0)) == pt(Fraction(1, 2), 0)
    assert midpoint(pt(0, 0), pt(0, 0)) == pt(0, 0)


def test_rational_parsing():
    assert parse_rat("3") == 3
    assert parse_rat("-7/2") == Fraction(-7, 2)
    assert parse_rat("4/2") == 2 and isinstance(parse_rat("4/2"), int)
    assert format_rat(Fraction(1, 3)) == "1/3"
    assert format_rat(Fraction(4, 2)) == "2"
    with pytest.raises(ParseError):
        parse_rat("1/0")
    with pytest.raises(ParseError):
        parse_rat("abc")


coords = st.fractions(min_value=-20, max_value=20, max_denominator=8)


@given(coords, coords, coords, coords, coords, coords, coords, coords)
def test_intersection_point_lies_on_both(ax, ay, bx, by, cx, cy, dx, dy):
    s1, s2 = seg(pt(ax, ay), pt(bx, by)), seg(pt(cx, cy), pt(dx, dy))
    if s1.a == s1.b or s2.a == s2.b:
        return
    r = segment_intersection(s1, s2)
    if r.kind == "point":
        assert on_segment(r.point, s1) and on_segment(r.point, s2)
    elif r.kind == "overlap":
        for p in r.overlap:
            assert on_segment(p, s1) and on_segment(p, s2)


def test_line_key_dedup():
    assert line_key(pt(0, 0), pt(2, 2)) == line_key(pt(-1, -1), pt(5, 5))
    assert line_key(pt(0, 0), pt(0, 3)) == line_key(pt(0, -2), pt(0, 9))
    assert line_key(pt(0, 0), pt(1, 0)) != line_key(pt(0, 1), pt(1, 1))
    assert line_key(pt(Fraction(1, 2), 0), pt(0, Fraction(1, 2))) == line_key(pt(1, -Fraction(1, 2)), pt(-1, Fraction(3, 2)))


def test_direction_sorting_ccw():
    dirs = [direction_key(pt(x, y)) for x, y in [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]]
    rng = random.Random(7)
    shuffled = dirs[:]
    rng.shuffle(shuffled)
    assert sort_directions_ccw(shuffled) == dirs
