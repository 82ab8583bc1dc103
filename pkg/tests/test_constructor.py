import json
from math import gcd
from pathlib import Path

import pytest

from markov_snake.constructor import (
    SHIFT_TRAVERSE,
    AlreadySwapped,
    DescentExhausted,
    EndOfDiagonal,
    NoSuchRegion,
    PointOutsidePolygon,
    apply_descent,
    apply_swap,
    apply_traversal,
    construct,
    initial_matching,
    match_for_point,
    path_points,
)
from markov_snake.matchings import is_perfect, lattice_point, matching_monomial
from markov_snake.newton import classify_diagonal, lattice_points
from markov_snake.polyarith import TriPoly
from markov_snake.snake import build_snake, edge_key

GOLDEN = json.loads((Path(__file__).parent / "data" / "golden_4_7.json").read_text())


def rationals(max_sum):
    return [(a, s - a) for s in range(2, max_sum + 1) for a in range(1, s // 2 + 1) if gcd(a, s - a) == 1]


def mono(state):
    return state.history[-1].exponents


def test_initial_matching():
    assert mono(initial_matching(build_snake("4/7"))) == (0, 20, 0)
    assert initial_matching(build_snake("4/7")).point == (0, 10)
    assert mono(initial_matching(build_snake("1/1"))) == (0, 2, 0)
    s = initial_matching(build_snake("3/5"))
    assert (mono(s), s.point) == ((0, 14, 0), (0, 7))


def test_swaps():
    s = initial_matching(build_snake("4/7"))
    for k in (1, 2, 3):
        apply_swap(s, k)
    assert (mono(s), s.point) == ((0, 14, 6), (0, 7))
    with pytest.raises(AlreadySwapped):
        apply_swap(s, 2)
    with pytest.raises(NoSuchRegion):
        apply_swap(s, 4)

    s = initial_matching(build_snake("3/5"))
    apply_swap(s, 1)
    assert s.point == (0, 6)
    with pytest.raises(NoSuchRegion):
        apply_swap(initial_matching(build_snake("1/2")), 1)


def test_descents_4_7():
    s = initial_matching(build_snake("4/7"))
    for k in (1, 2, 3):
        apply_swap(s, k)
    apply_descent(s)
    assert s.ops[-1] == "InitialStep(1)"
    assert (mono(s), s.point) == ((4, 8, 8), (2, 4))
    apply_descent(s)
    assert s.ops[-1] == "Step(1)" and s.point == (3, 2)
    apply_descent(s)
    assert s.point == (4, 0)
    with pytest.raises(DescentExhausted):
        apply_descent(s)


def test_descent_1_2_is_addition():
    s = initial_matching(build_snake("1/2"))
    apply_descent(s)
    assert s.ops[-1] == "Add"
    assert (mono(s), s.point) == ((2, 0, 2), (1, 0))


def test_traversals_4_7():
    s = construct("4/7", (2, 4))
    apply_traversal(s)
    assert (s.ops[-1], mono(s), s.point) == ("PullBack", (6, 6, 8), (3, 3))
    apply_traversal(s)
    assert (s.ops[-1], mono(s), s.point) == ("Twist", (8, 4, 8), (4, 2))


def test_first_box_swap_1_1():
    s = initial_matching(build_snake("1/1"))
    apply_traversal(s)
    assert (s.ops[-1], mono(s), s.point) == ("FirstBoxSwap", (2, 0, 0), (1, 0))
    with pytest.raises(EndOfDiagonal):
        apply_traversal(s)


def test_match_for_point_examples():
    m = match_for_point("4/7", (4, 2))
    assert matching_monomial(build_snake("4/7"), m) == TriPoly.monomial(8, 4, 8)
    g11 = build_snake("1/1")
    assert match_for_point("1/1", (0, 1)) == {e for e, w in g11.weights.items() if w == "y"}
    assert matching_monomial(build_snake("1/2"), match_for_point("1/2", (1, 1))) == TriPoly.monomial(2, 2, 0)
    with pytest.raises(PointOutsidePolygon):
        match_for_point("4/7", (0, 6))


def test_golden_path_4_7():
    state = construct("4/7", (4, 2))
    assert state.ops == ["IPM", "Swap(1)", "Swap(2)", "Swap(3)", "InitialStep(1)", "PullBack", "Twist"]
    by_point = {r.point: r for r in state.history}
    for stage in GOLDEN["stages"]:
        rec = by_point[tuple(stage["point"])]
        expected = {edge_key(tuple(e["from"]), tuple(e["to"])) for e in stage["edges"]}
        assert rec.edges == expected, stage["monomial"]
        g = state.graph
        assert all(g.weights[edge_key(tuple(e["from"]), tuple(e["to"]))] == e["w"] for e in stage["edges"])


def test_path_points_4_7():
    assert path_points("4/7", (4, 2)) == [(0, 10), (0, 9), (0, 8), (0, 7), (2, 4), (3, 3), (4, 2)]


def test_frontier_and_json():
    s = construct("4/7", (4, 2))
    assert s.frontier == 2 * s.done - 1
    d = s.to_json()
    assert d["point"] == [4, 2]
    assert d["monomial"] == {"ex": 8, "ey": 4, "ez": 8}
    assert len(d["edges"]) == 20
    assert d["ops"][0] == "IPM"


def test_saturation_constructive_up_to_16():
    for a, b in rationals(16):
        for p in lattice_points((a, b)):
            state = construct((a, b), p)
            assert is_perfect(state.graph, state.matching)
            assert lattice_point(matching_monomial(state.graph, state.matching)) == p


def test_operation_contracts_up_to_24():
    # driver runs to a point are prefixes of the run to the diagonal's right end
    for a, b in rationals(24):
        for c in range(a, a + b):
            state = construct((a, b), (c, 0))
            prev = None
            descents = 0
            for rec in state.history:
                if prev is not None:
                    assert (rec.point[0] - prev[0], rec.point[1] - prev[1]) == rec.shift
                prev = rec.point
                if rec.name.startswith(("Add", "InitialStep", "Extend", "Step")):
                    descents += 1
                    if descents == max(b - c, 0):
                        assert rec.point == classify_diagonal((a, b), c).leftmost
            assert descents == max(b - c, 0)
            traversal = [r for r in state.history if r.shift == SHIFT_TRAVERSE]
            assert len(traversal) == c - classify_diagonal((a, b), c).leftmost[0]


def test_full_descent_reaches_a0():
    for a, b in rationals(30):
        if a == b:
            continue
        state = construct((a, b), (a, 0))
        steps = [r for r in state.history if r.name not in ("IPM",) and not r.name.startswith("Swap")]
        assert len(steps) == b - a
        assert state.point == (a, 0)


def test_right_end_has_no_y():
    for a, b in rationals(20):
        state = construct((a, b), (a + b - 1, 0))
        assert all(state.graph.weights[e] != "y" for e in state.matching)
