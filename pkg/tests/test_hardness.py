import pytest

from witpoly.errors import EmbeddingInvalid, TooLarge
from witpoly.hardness import (
    assignment_selection,
    auto_layout,
    reduce as reduce_formula,
    sat_bruteforce,
    verify_reduction,
)
from witpoly.solver import solve_discrete
from witpoly.witness import verify_witness_set
from formulas import F, SUITE


def test_sat_bruteforce_examples():
    assert sat_bruteforce(F(2, ("+", [1, 2])))
    assert not sat_bruteforce(F(1, ("+", [1]), ("-", [1])))
    assert sat_bruteforce(F(3, ("+", [1, 2, 3]), ("-", [1, 2, 3])))


def test_sat_bruteforce_too_large():
    with pytest.raises(TooLarge):
        sat_bruteforce(F(21, ("+", [1])))


def test_embedding_rejects_interleaving():
    # Same-side spans that genuinely interleave cannot be drawn with
    # non-crossing vertical legs under the slot rule.
    bad = F(4, ("+", [1, 3]), ("+", [2, 4]))
    with pytest.raises(EmbeddingInvalid):
        auto_layout(bad)


def test_embedding_levels_nested():
    f = F(3, ("+", [1, 3]), ("+", [2]))
    order, levels = auto_layout(f)
    assert levels[0] == 1  # container above
    assert levels[1] == 0


def test_counting_identities_spec_examples():
    out = reduce_formula(F(1, ("+", [1])))
    assert len(out.candidates) == 5 and out.k == 2
    out = reduce_formula(F(2, ("+", [1, 2])))
    assert len(out.candidates) == 7 and out.k == 3
    out = reduce_formula(F(2, ("+", [1, 2]), ("-", [1, 2])))
    assert len(out.candidates) == 14 and out.k == 6


def test_counting_identities_whole_suite():
    for name, formula, _ in SUITE[:8]:
        out = reduce_formula(formula)
        n, m = formula.n, len(formula.clauses)
        assert len(out.candidates) == 2 * m * n + 3 * m, name
        assert out.k == m * n + m, name
        blues = [p for p in out.candidates if out.colors[p] == "blue"]
        reds = [p for p in out.candidates if out.colors[p] == "red"]
        orans = [p for p in out.candidates if out.colors[p] == "orange"]
        assert len(blues) == 3 * m and len(reds) == m * n and len(orans) == m * n, name


def test_completeness_witness_selection():
    formula = F(2, ("+", [1, 2]), ("-", [1, 2]))
    out = reduce_formula(formula)
    assignment = {1: True, 2: False}
    chosen = assignment_selection(formula, out, assignment)
    assert len(chosen) == out.k
    ok, cert = verify_witness_set(out.polygon, chosen)
    assert ok, cert.transcript


def test_solution_structure_caps():
    formula = F(2, ("+", [1, 2]), ("-", [1, 2]))
    out = reduce_formula(formula)
    r = solve_discrete(out.polygon, out.candidates, out.k)
    assert r.found
    chosen = set(r.witnesses)
    for ci in range(len(formula.clauses)):
        assert len(chosen & set(out.gadget_map[f"c{ci}blue"])) <= 1
    for v in range(1, formula.n + 1):
        red = chosen & set(out.gadget_map[f"v{v}red"])
        orange = chosen & set(out.gadget_map[f"v{v}orange"])
        assert not (red and orange)  # one color per gadget
        assert len(red) + len(orange) <= len(formula.clauses)


def test_verify_reduction_small_cases():
    assert verify_reduction(F(1, ("+", [1])))
    assert verify_reduction(F(1, ("+", [1]), ("-", [1])))
    assert verify_reduction(F(2, ("+", [1, 2])))
