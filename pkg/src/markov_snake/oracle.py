"""Markov polynomials from the Stern-Brocot mutation recurrence.

The tree is seeded with 0/1 -> x and 1/1 -> (x^2 + y^2)/z, with y as the
third member of the initial triple.  Each mediant is obtained by the Vieta
exchange ``Z' = (X^2 + Y^2) / Z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, List, Tuple, TypeVar

from .matchings import (
    DEFAULT_CAP,
    CapExceeded,
    enumerate_matchings,
    numerator_dp,
    numerator_from_matchings,
)
from .polyarith import TriPoly, X, Y, Z, poly_exact_div
from .snake import build_snake
from .words import RationalIndex, coerce

V = TypeVar("V")

SEED_LEFT = X
SEED_RIGHT = poly_exact_div(X * X + Y * Y, Z)
SEED_OTHER = Y


@dataclass(frozen=True)
class FareyFrame:
    left: Fraction
    right: Fraction
    pleft: TriPoly
    pright: TriPoly
    pother: TriPoly

    def __post_init__(self):
        l, r = self.left, self.right
        if abs(l.numerator * r.denominator - r.numerator * l.denominator) != 1:
            raise ValueError(f"{l} and {r} are not Farey neighbours")

    @property
    def mediant(self) -> Fraction:
        return Fraction(
            self.left.numerator + self.right.numerator,
            self.left.denominator + self.right.denominator,
        )


def _descend(rho: RationalIndex, seeds: Tuple[V, V, V], mutate: Callable[[V, V, V], V]) -> Tuple[V, V, V]:
    """Walk the Stern-Brocot tree to ``rho``; return a triple ending in its value."""
    target = Fraction(rho.a, rho.b)
    left, right = Fraction(0), Fraction(1)
    pl, pr, po = seeds
    if target == right:
        return pl, po, pr
    while True:
        med = Fraction(left.numerator + right.numerator, left.denominator + right.denominator)
        pm = mutate(pl, pr, po)
        if med == target:
            return pl, pr, pm
        if target < med:
            right, pr, po = med, pm, pr
        else:
            left, pl, po = med, pm, pl


def _vieta(p: TriPoly, q: TriPoly, other: TriPoly) -> TriPoly:
    return poly_exact_div(p * p + q * q, other)


def mutation_polynomial(rho) -> TriPoly:
    """The Laurent polynomial ``M_rho(x, y, z)``."""
    return markov_triple(rho)[2]


def markov_triple(rho) -> Tuple[TriPoly, TriPoly, TriPoly]:
    """The Markov triple whose last member is ``M_rho``."""
    return _descend(coerce(rho), (SEED_LEFT, SEED_RIGHT, SEED_OTHER), _vieta)


def markov_number_vieta(rho) -> int:
    """Integer recurrence: seeds 1, 2 with divisor 1."""
    return _descend(coerce(rho), (1, 2, 1), lambda p, q, o: _int_div(p * p + q * q, o))[2]


def _int_div(n: int, d: int) -> int:
    q, r = divmod(n, d)
    if r:
        raise ArithmeticError(f"{n} is not divisible by {d}")
    return q


def markov_number(rho) -> int:
    return int(numerator_dp(build_snake(rho))(1, 1, 1))


def denominator_monomial(rho) -> TriPoly:
    rho = coerce(rho)
    return TriPoly.monomial(rho.a - 1, rho.b - 1, rho.a + rho.b - 1)


def numerator_from_mutation(rho) -> TriPoly:
    """``M_rho`` times its denominator, rewritten in squared variables."""
    return (mutation_polynomial(rho) * denominator_monomial(rho)).halve_exponents()


_XYZ = X * Y * Z
_K_NUM = X * X + Y * Y + Z * Z


def verify_markov_identity(P: TriPoly, Q: TriPoly, R: TriPoly) -> bool:
    """Check ``xyz (P^2 + Q^2 + R^2) == (x^2 + y^2 + z^2) P Q R``."""
    return _XYZ * (P * P + Q * Q + R * R) == _K_NUM * P * Q * R


def farey_triples(depth: int) -> Iterator[Tuple[FareyFrame, TriPoly]]:
    """Every frame of the tree to ``depth`` levels, with its mediant polynomial.

    The initial triple (x, (x^2+y^2)/z, y) is yielded first at depth 0 with
    the divisor in the mediant slot.
    """
    root = FareyFrame(Fraction(0), Fraction(1), SEED_LEFT, SEED_RIGHT, SEED_OTHER)
    yield root, SEED_OTHER
    stack: List[Tuple[FareyFrame, int]] = [(root, 1)]
    while stack:
        frame, level = stack.pop()
        pm = _vieta(frame.pleft, frame.pright, frame.pother)
        yield frame, pm
        if level < depth:
            med = frame.mediant
            stack.append((FareyFrame(frame.left, med, frame.pleft, pm, frame.pright), level + 1))
            stack.append((FareyFrame(med, frame.right, pm, frame.pright, frame.pleft), level + 1))


def three_way(rho, cap: int | None = None) -> dict:
    """Compare the DP, enumeration (when feasible) and mutation numerators."""
    rho = coerce(rho)
    g = build_snake(rho)
    dp = numerator_dp(g)
    mut = numerator_from_mutation(rho)
    try:
        ms = enumerate_matchings(g, cap or DEFAULT_CAP)
        enum = numerator_from_matchings(g, ms)
    except CapExceeded:
        enum = None
    return {
        "rho": str(rho),
        "markov_number": int(dp(1, 1, 1)),
        "dp_terms": len(dp),
        "mutation_equal": mut == dp,
        "enumeration_equal": None if enum is None else enum == dp,
        "identity": verify_markov_identity(*markov_triple(rho)),
    }
