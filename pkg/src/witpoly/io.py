"""Line-oriented document formats and deterministic SVG rendering.

Every document starts with "witpoly/<version> <kind>" and ends with "end".
Rationals serialize as "p/q" (plain integers without the slash), so parsing
and serializing round-trip exactly. Unknown kinds and malformed fields raise
ParseError with the offending line number.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ParseError
from .geometry import Point2, format_rat, parse_rat, pt
from .hardness import Clause, PMR3SATInstance, ReductionOutput
from .polygon import PolygonWithHoles, SimplePolygon
from .solver import SolveResult
from .visibility import VisibilityPolygon

FORMAT_VERSION = 1

KINDS = (
    "polygon",
    "polygon_with_holes",
    "points",
    "formula",
    "candidate_set",
    "graph",
    "witness_result",
    "visibility",
    "reduction",
)


@dataclass
class Document:
    kind: str
    payload: object
    format_version: int = FORMAT_VERSION


def _fmt_point(p: Point2) -> str:
    return f"{format_rat(p.x)} {format_rat(p.y)}"


def _parse_point(tokens: Sequence[str], lineno: int) -> Point2:
    if len(tokens) != 2:
        raise ParseError(f"expected 'x y', got {' '.join(tokens)!r}", lineno)
    return pt(parse_rat(tokens[0]), parse_rat(tokens[1]))


class _Lines:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.index = 0

    def next(self) -> Tuple[int, str]:
        while self.index < len(self.lines):
            raw = self.lines[self.index]
            self.index += 1
            stripped = raw.strip()
            if stripped and not stripped.startswith("#"):
                return self.index, stripped
        raise ParseError("unexpected end of document", self.index)

    def peek(self) -> Optional[Tuple[int, str]]:
        save = self.index
        try:
            out = self.next()
        except ParseError:
            return None
        self.index = save
        return out


def serialize(doc: Document) -> str:
    out = [f"witpoly/{doc.format_version} {doc.kind}"]
    if doc.kind == "polygon":
        poly: SimplePolygon = doc.payload
        out.append(f"vertices {len(poly.vertices)}")
        out.extend(_fmt_point(v) for v in poly.vertices)
    elif doc.kind == "polygon_with_holes":
        pwh: PolygonWithHoles = doc.payload
        out.append(f"outer {len(pwh.outer.vertices)}")
        out.extend(_fmt_point(v) for v in pwh.outer.vertices)
        for h in pwh.holes:
            out.append(f"hole {len(h.vertices)}")
            out.extend(_fmt_point(v) for v in h.vertices)
    elif doc.kind == "points":
        pts: List[Point2] = doc.payload
        out.append(f"count {len(pts)}")
        out.extend(_fmt_point(p) for p in pts)
    elif doc.kind == "formula":
        formula: PMR3SATInstance = doc.payload
        out.append(f"vars {formula.n}")
        for c in formula.clauses:
            out.append(f"clause {c.polarity} " + " ".join(str(v) for v in c.variables))
    elif doc.kind == "candidate_set":
        cs = doc.payload
        out.append(f"k {cs.k}")
        out.append(f"complete {int(cs.complete)}")
        out.append(f"polygon {len(cs.polygon.vertices)}")
        out.extend(_fmt_point(v) for v in cs.polygon.vertices)
        out.append(f"points {len(cs.points)}")
        for p in cs.points:
            prov = cs.provenance[p]
            out.append(f"{_fmt_point(p)} {prov.kind} {prov.iteration}")
        out.append(f"chords {len(cs.chords)}")
        for c in cs.chords:
            out.append(f"{_fmt_point(c.a)} {_fmt_point(c.b)}")
    elif doc.kind == "graph":
        payload = doc.payload
        verts = list(payload["vertices"])
        index = {v: i for i, v in enumerate(verts)}
        out.append(f"vertices {len(verts)}")
        out.extend(_fmt_point(v) for v in verts)
        edges = sorted(payload["edges"])
        out.append(f"edges {len(edges)}")
        for a, b in edges:
            out.append(f"{index[a]} {index[b]}")
        windows = payload.get("windows", {})
        for (a, b) in sorted(windows):
            seg = windows[(a, b)]
            out.append(f"window {index[a]} {index[b]} {_fmt_point(seg.a)} {_fmt_point(seg.b)}")
    elif doc.kind == "witness_result":
        r: SolveResult = doc.payload
        out.append(f"found {int(r.found)}")
        out.append(f"inconclusive {int(r.inconclusive)}")
        out.append(f"explored {r.explored_nodes}")
        out.append(f"points {len(r.witnesses)}")
        out.extend(_fmt_point(p) for p in r.witnesses)
    elif doc.kind == "visibility":
        vis: VisibilityPolygon = doc.payload
        out.append(f"viewpoint {_fmt_point(vis.viewpoint)}")
        out.append(f"boundary {len(vis.boundary)}")
        out.extend(_fmt_point(v) for v in vis.boundary)
        out.append(f"windows {len(vis.windows)}")
        for w in vis.windows:
            out.append(
                f"{_fmt_point(w.segment.a)} {_fmt_point(w.segment.b)} "
                f"base {_fmt_point(w.base)} arm {int(w.on_arm)}"
            )
        out.append(f"arms {len(vis.arms)}")
        for a in vis.arms:
            out.append(f"{_fmt_point(a.a)} {_fmt_point(a.b)}")
    elif doc.kind == "reduction":
        red: ReductionOutput = doc.payload
        out.append(f"k {red.k}")
        out.append(f"outer {len(red.polygon.outer.vertices)}")
        out.extend(_fmt_point(v) for v in red.polygon.outer.vertices)
        for h in red.polygon.holes:
            out.append(f"hole {len(h.vertices)}")
            out.extend(_fmt_point(v) for v in h.vertices)
        out.append(f"candidates {len(red.candidates)}")
        for p in red.candidates:
            out.append(f"{_fmt_point(p)} {red.colors[p]}")
    else:
        raise ParseError(f"unknown document kind {doc.kind!r}")
    out.append("end")
    return "\n".join(out) + "\n"


def parse(text: str) -> Document:
    lines = _Lines(text)
    lineno, header = lines.next()
    parts = header.split()
    if len(parts) != 2 or not parts[0].startswith("witpoly/"):
        raise ParseError(f"bad header {header!r}", lineno)
    try:
        version = int(parts[0].split("/", 1)[1])
    except ValueError:
        raise ParseError(f"bad version in {header!r}", lineno) from None
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {version}", lineno)
    kind = parts[1]
    if kind not in KINDS:
        raise ParseError(f"unknown document kind {kind!r}", lineno)

    def expect_field(name: str) -> List[str]:
        ln, line = lines.next()
        toks = line.split()
        if toks[0] != name:
            raise ParseError(f"expected {name!r}, got {toks[0]!r}", ln)
        return toks[1:]

    def read_points(count: int) -> List[Point2]:
        pts = []
        for _ in range(count):
            ln, line = lines.next()
            pts.append(_parse_point(line.split(), ln))
        return pts

    if kind == "polygon":
        (count,) = expect_field("vertices")
        payload = SimplePolygon(read_points(int(count)))
    elif kind == "polygon_with_holes":
        (count,) = expect_field("outer")
        outer = SimplePolygon(read_points(int(count)))
        holes = []
        while True:
            nxt = lines.peek()
            if nxt is None or not nxt[1].startswith("hole"):
                break
            (hcount,) = expect_field("hole")
            holes.append(SimplePolygon(read_points(int(hcount))))
        payload = PolygonWithHoles(outer, holes)
    elif kind == "points":
        (count,) = expect_field("count")
        payload = read_points(int(count))
    elif kind == "formula":
        (nvars,) = expect_field("vars")
        clauses = []
        while True:
            nxt = lines.peek()
            if nxt is None or not nxt[1].startswith("clause"):
                break
            ln, line = lines.next()
            toks = line.split()
            if len(toks) < 3 or toks[1] not in "+-":
                raise ParseError(f"bad clause line {line!r}", ln)
            try:
                variables = tuple(int(t) for t in toks[2:])
            except ValueError:
                raise ParseError(f"bad clause variables in {line!r}", ln) from None
            clauses.append(Clause(toks[1], variables))
        payload = PMR3SATInstance(n=int(nvars), clauses=clauses)
    elif kind == "witness_result":
        (found,) = expect_field("found")
        (inconclusive,) = expect_field("inconclusive")
        (explored,) = expect_field("explored")
        (count,) = expect_field("points")
        payload = SolveResult(
            found=bool(int(found)),
            witnesses=read_points(int(count)),
            explored_nodes=int(explored),
            inconclusive=bool(int(inconclusive)),
        )
    else:
        raise ParseError(f"parsing of kind {kind!r} documents is not supported")

    ln, line = lines.next()
    if line != "end":
        raise ParseError(f"expected 'end', got {line!r}", ln)
    if lines.peek() is not None:
        ln, line = lines.next()
        raise ParseError(f"trailing content {line!r}", ln)
    return Document(kind=kind, payload=payload, format_version=version)


# ---------------------------------------------------------------------------
# SVG rendering: display-only scaling; geometry never reads anything back.

_SCALE = 24
_COLORS = {"red": "#d62728", "orange": "#ff9f1c", "blue": "#1f77b4"}


def _svg_xy(p: Point2, ymax: Fraction) -> Tuple[float, float]:
    return (float(p.x) * _SCALE, float(ymax - p.y) * _SCALE)


def _path(points: Sequence[Point2], ymax) -> str:
    coords = [f"{x:.3f},{y:.3f}" for x, y in (_svg_xy(p, ymax) for p in points)]
    return "M " + " L ".join(coords) + " Z"


def render_svg(scene: Sequence[Document], style: Optional[Dict] = None) -> str:
    """Deterministic SVG for a sequence of documents (drawn in order)."""
    style = style or {}
    pts: List[Point2] = []

    def harvest(doc: Document):
        if doc.kind == "polygon":
            pts.extend(doc.payload.vertices)
        elif doc.kind == "polygon_with_holes":
            pts.extend(doc.payload.all_vertices())
        elif doc.kind == "points":
            pts.extend(doc.payload)
        elif doc.kind == "visibility":
            pts.extend(doc.payload.boundary)
        elif doc.kind == "candidate_set":
            pts.extend(doc.payload.polygon.vertices)
            pts.extend(doc.payload.points)
        elif doc.kind == "witness_result":
            pts.extend(doc.payload.witnesses)
        elif doc.kind == "reduction":
            pts.extend(doc.payload.polygon.all_vertices())
            pts.extend(doc.payload.candidates)
        elif doc.kind == "graph":
            pts.extend(doc.payload["vertices"])

    for doc in scene:
        harvest(doc)
    if not pts:
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 10 10" width="10" height="10"></svg>\n'
        )
    xs = [Fraction(p.x) for p in pts]
    ys = [Fraction(p.y) for p in pts]
    margin = 1
    x0, x1 = min(xs) - margin, max(xs) + margin
    y0, y1 = min(ys) - margin, max(ys) + margin
    ymax = y1 + y0  # flip around the scene's vertical center line
    width = float(x1 - x0) * _SCALE
    height = float(y1 - y0) * _SCALE
    offx = float(x0) * _SCALE
    offy = float(y0) * _SCALE

    body: List[str] = []

    def poly_path(vertices):
        return _path(vertices, ymax)

    for doc in scene:
        if doc.kind == "polygon":
            body.append(
                f'<path d="{poly_path(doc.payload.vertices)}" fill="none" stroke="black" stroke-width="2"/>'
            )
        elif doc.kind == "polygon_with_holes":
            d = poly_path(doc.payload.outer.vertices)
            for h in doc.payload.holes:
                d += " " + poly_path(h.vertices)
            body.append(f'<path d="{d}" fill="#eeeeee" fill-rule="evenodd" stroke="black" stroke-width="2"/>')
        elif doc.kind == "visibility":
            vis = doc.payload
            body.append(
                f'<path d="{poly_path(vis.boundary)}" fill="#d62728" fill-opacity="0.25" stroke="none"/>'
            )
            for w in vis.windows:
                (xa, ya), (xb, yb) = _svg_xy(w.segment.a, ymax), _svg_xy(w.segment.b, ymax)
                body.append(
                    f'<line x1="{xa:.3f}" y1="{ya:.3f}" x2="{xb:.3f}" y2="{yb:.3f}" '
                    f'stroke="#1f77b4" stroke-width="2" stroke-dasharray="6,4"/>'
                )
                bx, by = _svg_xy(w.base, ymax)
                body.append(f'<circle cx="{bx:.3f}" cy="{by:.3f}" r="4" fill="#1f77b4"/>')
            for a in vis.arms:
                (xa, ya), (xb, yb) = _svg_xy(a.a, ymax), _svg_xy(a.b, ymax)
                body.append(
                    f'<line x1="{xa:.3f}" y1="{ya:.3f}" x2="{xb:.3f}" y2="{yb:.3f}" '
                    f'stroke="#d62728" stroke-width="2" stroke-dasharray="2,3"/>'
                )
            vx, vy = _svg_xy(vis.viewpoint, ymax)
            body.append(f'<circle cx="{vx:.3f}" cy="{vy:.3f}" r="5" fill="black"/>')
        elif doc.kind == "points":
            for p in doc.payload:
                x, y = _svg_xy(p, ymax)
                body.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="4" fill="black"/>')
        elif doc.kind == "witness_result":
            for p in doc.payload.witnesses:
                x, y = _svg_xy(p, ymax)
                body.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="5" fill="#2ca02c"/>')
        elif doc.kind == "candidate_set":
            cs = doc.payload
            body.append(
                f'<path d="{poly_path(cs.polygon.vertices)}" fill="none" stroke="black" stroke-width="2"/>'
            )
            for c in cs.chords:
                (xa, ya), (xb, yb) = _svg_xy(c.a, ymax), _svg_xy(c.b, ymax)
                body.append(
                    f'<line x1="{xa:.3f}" y1="{ya:.3f}" x2="{xb:.3f}" y2="{yb:.3f}" '
                    f'stroke="#999999" stroke-width="1"/>'
                )
            for p in cs.points:
                x, y = _svg_xy(p, ymax)
                body.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="2.5" fill="#444444"/>')
        elif doc.kind == "reduction":
            red = doc.payload
            d = poly_path(red.polygon.outer.vertices)
            for h in red.polygon.holes:
                d += " " + poly_path(h.vertices)
            body.append(f'<path d="{d}" fill="#f5f5f5" fill-rule="evenodd" stroke="black" stroke-width="2"/>')
            for p in red.candidates:
                x, y = _svg_xy(p, ymax)
                body.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="4" fill="{_COLORS[red.colors[p]]}"/>')
        elif doc.kind == "graph":
            payload = doc.payload
            for a, b in sorted(payload["edges"]):
                (xa, ya), (xb, yb) = _svg_xy(a, ymax), _svg_xy(b, ymax)
                body.append(
                    f'<line x1="{xa:.3f}" y1="{ya:.3f}" x2="{xb:.3f}" y2="{yb:.3f}" '
                    f'stroke="#2ca02c" stroke-width="2"/>'
                )
            for v in payload["vertices"]:
                x, y = _svg_xy(v, ymax)
                body.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="5" fill="#2ca02c"/>')

    header = (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{offx:.3f} {offy:.3f} {width:.3f} {height:.3f}" '
        f'width="{width:.0f}" height="{height:.0f}">'
    )
    return header + "\n" + "\n".join(body) + "\n</svg>\n"
