"""Command-line interface.

Exit codes: 0 success/found, 1 valid-but-negative, 2 inconclusive or budget
exhausted, 3 input error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .discretize import Budget, witgen
from .errors import WitpolyError
from .geometry import parse_rat, pt
from .hardness import reduce as reduce_formula
from .io import Document, parse, render_svg, serialize
from .polygon import PolygonWithHoles
from .solver import grid_oracle, solve_continuous, solve_discrete
from .structure import neighbor_witness_graph
from .visibility import visibility_polygon
from .witness import verify_witness_set

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3


def _load(path: str) -> Document:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def _write(path, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_region(path: str):
    doc = _load(path)
    if doc.kind not in ("polygon", "polygon_with_holes"):
        raise WitpolyError(f"expected a polygon document, got {doc.kind!r}")
    return doc.payload


def _parse_point_arg(text: str):
    parts = text.replace(",", " ").split()
    if len(parts) != 2:
        raise WitpolyError(f"expected 'x,y', got {text!r}")
    return pt(parse_rat(parts[0]), parse_rat(parts[1]))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="witpoly", description="Witness sets in polygons, exactly.")
    parser.add_argument("--seed", type=int, default=None, help="seed for test-instance generation")
    sub = parser.add_subparsers(dest="command", required=True)

    p_vis = sub.add_parser("vis", help="visibility polygon of a point")
    p_vis.add_argument("--input", required=True)
    p_vis.add_argument("--point", required=True, help="viewpoint as 'x,y' (rationals allowed)")
    p_vis.add_argument("--output", default=None)
    p_vis.add_argument("--svg", default=None)

    p_verify = sub.add_parser("verify", help="verify a witness set")
    p_verify.add_argument("--input", required=True)
    p_verify.add_argument("--points", required=True)
    p_verify.add_argument("--output", default=None)

    p_graph = sub.add_parser("graph", help="neighbor witness graph")
    p_graph.add_argument("--input", required=True)
    p_graph.add_argument("--points", required=True)
    p_graph.add_argument("--output", default=None)
    p_graph.add_argument("--svg", default=None)

    p_witgen = sub.add_parser("witgen", help="generate the candidate set")
    p_witgen.add_argument("--input", required=True)
    p_witgen.add_argument("--k", type=int, required=True)
    p_witgen.add_argument("--budget-points", type=int, default=200_000)
    p_witgen.add_argument("--budget-chords", type=int, default=50_000)
    p_witgen.add_argument("--one-sided", action="store_true")
    p_witgen.add_argument("--output", default=None)
    p_witgen.add_argument("--svg", default=None)

    p_solve = sub.add_parser("solve", help="decide witness-set existence")
    p_solve.add_argument("--input", required=True)
    p_solve.add_argument("--k", type=int, required=True)
    p_solve.add_argument("--discrete", default=None, help="points file restricting candidates")
    p_solve.add_argument("--grid", default=None, help="grid oracle step, e.g. 1/2")
    p_solve.add_argument("--budget-points", type=int, default=200_000)
    p_solve.add_argument("--output", default=None)

    p_reduce = sub.add_parser("reduce", help="PMR3SAT reduction instance")
    p_reduce.add_argument("--formula", required=True)
    p_reduce.add_argument("--output", default=None)
    p_reduce.add_argument("--svg", default=None)

    p_render = sub.add_parser("render", help="render documents to SVG")
    p_render.add_argument("--input", required=True, nargs="+")
    p_render.add_argument("--output", default=None)

    args = parser.parse_args(argv)

    try:
        if args.command == "vis":
            region = _load_region(args.input)
            vis = visibility_polygon(region, _parse_point_arg(args.point))
            doc = Document("visibility", vis)
            _write(args.output, serialize(doc))
            if args.svg:
                poly_doc = Document(
                    "polygon_with_holes" if isinstance(region, PolygonWithHoles) else "polygon",
                    region,
                )
                _write(args.svg, render_svg([poly_doc, doc]))
            return EXIT_OK

        if args.command == "verify":
            region = _load_region(args.input)
            points_doc = _load(args.points)
            if points_doc.kind != "points":
                raise WitpolyError("verify needs a points document")
            ok, cert = verify_witness_set(region, points_doc.payload)
            if ok:
                _write(args.output, "valid\n")
                return EXIT_OK
            ce = cert.counterexample
            _write(args.output, f"invalid counterexample {ce.x} {ce.y}\n")
            return EXIT_NEGATIVE

        if args.command == "graph":
            region = _load_region(args.input)
            points_doc = _load(args.points)
            graph = neighbor_witness_graph(region, points_doc.payload)
            payload = {
                "vertices": list(graph.vertices),
                "edges": set(graph.edges),
                "windows": {k: w.segment for k, w in graph.edge_windows.items()},
            }
            doc = Document("graph", payload)
            _write(args.output, serialize(doc))
            if args.svg:
                _write(args.svg, render_svg([Document("polygon", region), doc]))
            return EXIT_OK

        if args.command == "witgen":
            region = _load_region(args.input)
            budget = Budget(max_points=args.budget_points, max_chords=args.budget_chords)
            cs = witgen(region, args.k, budget, one_sided=args.one_sided)
            _write(args.output, serialize(Document("candidate_set", cs)))
            if args.svg:
                _write(args.svg, render_svg([Document("candidate_set", cs)]))
            return EXIT_OK if cs.complete else EXIT_INCONCLUSIVE

        if args.command == "solve":
            region = _load_region(args.input)
            if args.discrete:
                points_doc = _load(args.discrete)
                result = solve_discrete(region, points_doc.payload, args.k)
            elif args.grid:
                result = grid_oracle(region, Fraction(parse_rat(args.grid)), args.k)
            else:
                budget = Budget(max_points=args.budget_points)
                result = solve_continuous(region, args.k, budget)
            _write(args.output, serialize(Document("witness_result", result)))
            if result.found:
                return EXIT_OK
            return EXIT_INCONCLUSIVE if result.inconclusive else EXIT_NEGATIVE

        if args.command == "reduce":
            formula_doc = _load(args.formula)
            if formula_doc.kind != "formula":
                raise WitpolyError("reduce needs a formula document")
            out = reduce_formula(formula_doc.payload)
            _write(args.output, serialize(Document("reduction", out)))
            if args.svg:
                _write(args.svg, render_svg([Document("reduction", out)]))
            return EXIT_OK

        if args.command == "render":
            docs = [_load(path) for path in args.input]
            _write(args.output, render_svg(docs))
            return EXIT_OK

    except (WitpolyError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
