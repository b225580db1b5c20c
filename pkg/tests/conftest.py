import pytest

from witpoly.geometry import pt
from witpoly.polygon import SimplePolygon


@pytest.fixture
def unit_square():
    return SimplePolygon([pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)])


@pytest.fixture
def l_polygon():
    # One reflex vertex at (2,2); the running example everywhere.
    return SimplePolygon([pt(0, 0), pt(4, 0), pt(4, 2), pt(2, 2), pt(2, 4), pt(0, 4)])


@pytest.fixture
def u_polygon():
    # Two prongs around a central block; reflex at (2,1) and (1,1).
    return SimplePolygon(
        [pt(0, 0), pt(3, 0), pt(3, 4), pt(2, 4), pt(2, 1), pt(1, 1), pt(1, 4), pt(0, 4)]
    )
