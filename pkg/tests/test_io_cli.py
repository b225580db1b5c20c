import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from witpoly.errors import ParseError
from witpoly.geometry import pt
from witpoly.io import Document, parse, render_svg, serialize
from witpoly.polygon import PolygonWithHoles, SimplePolygon
from witpoly.visibility import visibility_polygon

L_POLY_TEXT = """witpoly/1 polygon
vertices 6
0 0
4 0
4 2
2 2
2 4
0 4
end
"""


def test_polygon_round_trip(unit_square):
    doc = Document("polygon", unit_square)
    text = serialize(doc)
    again = parse(text)
    assert again.payload == unit_square
    assert serialize(again) == text


def test_rational_round_trip():
    pts = [pt(Fraction(1, 3), Fraction(2, 7)), pt(-2, 5)]
    text = serialize(Document("points", pts))
    assert "1/3 2/7" in text
    again = parse(text)
    assert again.payload == pts
    assert serialize(again) == text


def test_polygon_with_holes_round_trip():
    outer = SimplePolygon([pt(0, 0), pt(10, 0), pt(10, 10), pt(0, 10)])
    hole = SimplePolygon([pt(4, 4), pt(6, 4), pt(6, 6), pt(4, 6)])
    pwh = PolygonWithHoles(outer, [hole])
    text = serialize(Document("polygon_with_holes", pwh))
    again = parse(text)
    assert again.payload == pwh


def test_formula_round_trip():
    text = "witpoly/1 formula\nvars 2\nclause + 1 2\nclause - 1\nend\n"
    doc = parse(text)
    assert doc.payload.n == 2
    assert serialize(doc) == text


def test_parse_errors():
    with pytest.raises(ParseError):
        parse("witpoly/1 polygon\nvertices 3\n0 0\n1 0\n1/0 1\nend\n")
    with pytest.raises(ParseError):
        parse("witpoly/2 polygon\nvertices 3\n0 0\n1 0\n0 1\nend\n")
    with pytest.raises(ParseError):
        parse("witpoly/1 nonsense\nend\n")
    with pytest.raises(ParseError):
        parse(L_POLY_TEXT + "extra\n")


def test_render_svg_deterministic(l_polygon):
    vis = visibility_polygon(l_polygon, pt(3, 1))
    scene = [Document("polygon", l_polygon), Document("visibility", vis)]
    a = render_svg(scene)
    b = render_svg(scene)
    assert a == b
    assert a.startswith("<svg ")
    assert "stroke-dasharray" in a  # the window is drawn dashed


def test_render_empty_scene():
    out = render_svg([])
    assert out.startswith("<svg ") and out.endswith("</svg>\n")


def run_cli(tmp_path, *argv):
    return subprocess.run(
        [sys.executable, "-m", "witpoly.cli", *argv],
        capture_output=True,
        text=True,
        cwd=tmp_path,
    )


@pytest.fixture
def l_poly_file(tmp_path):
    path = tmp_path / "l.txt"
    path.write_text(L_POLY_TEXT)
    return path


def test_cli_vis(tmp_path, l_poly_file):
    out = tmp_path / "vis.txt"
    svg = tmp_path / "vis.svg"
    r = run_cli(tmp_path, "vis", "--input", str(l_poly_file), "--point", "3,1",
                "--output", str(out), "--svg", str(svg))
    assert r.returncode == 0, r.stderr
    assert "viewpoint 3 1" in out.read_text()
    assert svg.read_text().startswith("<svg ")


def test_cli_verify_exit_codes(tmp_path, l_poly_file):
    good = tmp_path / "good.txt"
    good.write_text("witpoly/1 points\ncount 1\n3 1\nend\n")
    bad = tmp_path / "bad.txt"
    bad.write_text("witpoly/1 points\ncount 2\n3 1\n1 3\nend\n")
    r = run_cli(tmp_path, "verify", "--input", str(l_poly_file), "--points", str(good))
    assert r.returncode == 0
    r = run_cli(tmp_path, "verify", "--input", str(l_poly_file), "--points", str(bad))
    assert r.returncode == 1
    assert "counterexample" in r.stdout


def test_cli_solve_and_witgen(tmp_path, l_poly_file):
    r = run_cli(tmp_path, "solve", "--input", str(l_poly_file), "--k", "2")
    assert r.returncode == 1  # valid run, no witness set of size 2
    assert "found 0" in r.stdout
    r = run_cli(tmp_path, "solve", "--input", str(l_poly_file), "--k", "1")
    assert r.returncode == 0
    r = run_cli(tmp_path, "witgen", "--input", str(l_poly_file), "--k", "2")
    assert r.returncode == 0
    assert "points 21" in r.stdout
    r = run_cli(tmp_path, "solve", "--input", str(l_poly_file), "--k", "2", "--grid", "1/2")
    assert r.returncode == 1


def test_cli_reduce(tmp_path):
    formula = tmp_path / "f.txt"
    formula.write_text("witpoly/1 formula\nvars 1\nclause + 1\nend\n")
    r = run_cli(tmp_path, "reduce", "--formula", str(formula))
    assert r.returncode == 0, r.stderr
    assert "k 2" in r.stdout
    assert "candidates 5" in r.stdout


def test_cli_input_error(tmp_path):
    r = run_cli(tmp_path, "vis", "--input", "missing.txt", "--point", "0,0")
    assert r.returncode == 3


def test_render_svg_golden_files():
    from pathlib import Path
    from witpoly.hardness import Clause, PMR3SATInstance, reduce as reduce_formula

    golden = Path(__file__).parent / "golden"
    l_poly = SimplePolygon([pt(0, 0), pt(4, 0), pt(4, 2), pt(2, 2), pt(2, 4), pt(0, 4)])
    vis = visibility_polygon(l_poly, pt(3, 1))
    svg = render_svg([Document("polygon", l_poly), Document("visibility", vis)])
    assert svg == (golden / "l_polygon_vis.svg").read_text()

    out = reduce_formula(PMR3SATInstance(n=1, clauses=[Clause("+", (1,))]))
    svg2 = render_svg([Document("reduction", out)])
    assert svg2 == (golden / "reduction_unit.svg").read_text()
