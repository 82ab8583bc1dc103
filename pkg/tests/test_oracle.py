from fractions import Fraction
from math import gcd

import pytest

from markov_snake.matchings import numerator_dp
from markov_snake.oracle import (
    SEED_RIGHT,
    FareyFrame,
    farey_triples,
    markov_number,
    markov_number_vieta,
    markov_triple,
    mutation_polynomial,
    numerator_from_mutation,
    three_way,
    verify_markov_identity,
)
from markov_snake.polyarith import ONE, X, Y, Z, TriPoly
from markov_snake.snake import build_snake


def rationals(max_sum):
    return [(a, s - a) for s in range(2, max_sum + 1) for a in range(1, s // 2 + 1) if gcd(a, s - a) == 1]


def test_seed_polynomials():
    assert mutation_polynomial("1/1") == SEED_RIGHT
    assert SEED_RIGHT * Z == X * X + Y * Y


def test_mutation_1_2_explicit():
    # one Vieta step from (x, (x^2+y^2)/z) over y
    expected = TriPoly({(4, 0, 0): 1, (2, 2, 0): 2, (0, 4, 0): 1, (2, 0, 2): 1})
    assert mutation_polynomial("1/2") * TriPoly.monomial(0, 1, 2) == expected


def test_markov_2_3_value():
    assert mutation_polynomial("2/3")(1, 1, 1) == 29


@pytest.mark.parametrize("rho, m", [("1/1", 2), ("1/2", 5), ("1/3", 13), ("2/3", 29), ("3/5", 433), ("4/7", 6466)])
def test_markov_numbers(rho, m):
    assert markov_number(rho) == m
    assert markov_number_vieta(rho) == m


def test_identity_examples():
    assert verify_markov_identity(X, Y, Z)
    assert verify_markov_identity(X, SEED_RIGHT, Y)
    assert not verify_markov_identity(X, Y, Z + ONE)


def test_markov_triple_satisfies_identity():
    for rho in ("1/2", "2/5", "3/7"):
        assert verify_markov_identity(*markov_triple(rho))


def test_mutation_equals_dp_up_to_14():
    for a, b in rationals(14):
        assert numerator_from_mutation((a, b)) == numerator_dp(build_snake((a, b))), (a, b)


def test_farey_identity_depth_6():
    seen = 0
    for frame, pm in farey_triples(6):
        assert verify_markov_identity(frame.pleft, pm, frame.pright)
        seen += 1
    assert seen == 1 + (2 ** 6 - 1)


def test_farey_frame_rejects_non_neighbours():
    with pytest.raises(ValueError):
        FareyFrame(Fraction(0), Fraction(2, 3), X, Y, Z)
    assert FareyFrame(Fraction(1, 2), Fraction(1), X, Y, Z).mediant == Fraction(2, 3)


def test_three_way_small():
    r = three_way("2/5")
    assert r["mutation_equal"] and r["enumeration_equal"] and r["identity"]
    assert r["markov_number"] == markov_number_vieta("2/5")
    assert three_way("4/7", cap=10)["enumeration_equal"] is None
