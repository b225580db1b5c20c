"""Shared polygon factories for tests: random generators and curated families."""

import random
from fractions import Fraction
from functools import cmp_to_key

from witpoly.geometry import pt
from witpoly.polygon import SimplePolygon


def random_star_polygon(rng: random.Random, n: int, coord_max: int = 32) -> SimplePolygon:
    """Random simple polygon: distinct integer points angularly sorted around
    their centroid (exactly). Star-shaped by construction but freely reflex."""
    while True:
        points = set()
        while len(points) < n:
            points.add((rng.randint(0, coord_max), rng.randint(0, coord_max)))
        pts = [pt(x, y) for x, y in points]
        m = len(pts)
        cx = sum(p.x for p in pts)  # centroid * m, exact
        cy = sum(p.y for p in pts)

        def half(p):
            dx, dy = p.x * m - cx, p.y * m - cy
            return 0 if dy > 0 or (dy == 0 and dx > 0) else 1

        def cmp(p, q):
            hp, hq = half(p), half(q)
            if hp != hq:
                return hp - hq
            cr = (p.x * m - cx) * (q.y * m - cy) - (p.y * m - cy) * (q.x * m - cx)
            return -1 if cr > 0 else (1 if cr < 0 else 0)

        pts.sort(key=cmp_to_key(cmp))
        try:
            return SimplePolygon(pts)
        except Exception:
            continue


def interior_sample(poly: SimplePolygon, rng: random.Random, denom: int = 8):
    """A uniform-ish rational interior point found by rejection sampling."""
    xs = [v.x for v in poly.vertices]
    ys = [v.y for v in poly.vertices]
    while True:
        x = Fraction(rng.randint(int(min(xs)) * denom, int(max(xs)) * denom), denom)
        y = Fraction(rng.randint(int(min(ys)) * denom, int(max(ys)) * denom), denom)
        p = pt(x, y)
        if poly.contains(p) == "interior":
            return p


def comb_polygon(prongs: int, prong_width: int = 1, gap: int = 1, height: int = 4, base: int = 1) -> SimplePolygon:
    """Upward comb: `prongs` prongs of the given width over a shared base strip.

    With deep prongs each prong tip supports one witness, so the family has
    witness sets up to size `prongs`.
    """
    verts = [pt(0, 0)]
    width = prongs * prong_width + (prongs - 1) * gap
    verts.append(pt(width, 0))
    x = width
    for i in range(prongs - 1, -1, -1):
        verts.append(pt(x, base + height))
        x -= prong_width
        verts.append(pt(x, base + height))
        if i > 0:
            verts.append(pt(x, base))
            x -= gap
            verts.append(pt(x, base))
    return SimplePolygon(verts)
