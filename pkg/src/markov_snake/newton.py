"""The Newton polygon of a Markov numerator and its diagonal structure.

The polygon is ``{i, j >= 0 : i/a + j/b >= 1, i + j <= a + b - 1}``.  All
tests are cross-multiplied integer inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

from .words import RationalIndex, christoffel_word, coerce, modify_word, run_profile

Point = Tuple[int, int]

FULL = "full"
PARTIAL = "partial"


class NoSuchDiagonal(ValueError):
    pass


@dataclass(frozen=True)
class DiagonalInfo:
    c: int
    kind: str
    leftmost: Point


@dataclass(frozen=True)
class NewtonPolygon:
    a: int
    b: int

    @property
    def vertices(self) -> List[Point]:
        a, b = self.a, self.b
        return [(a, 0), (a + b - 1, 0), (0, a + b - 1), (0, b)]


def newton_polygon(rho) -> NewtonPolygon:
    rho = coerce(rho)
    return NewtonPolygon(rho.a, rho.b)


def contains(rho, p: Point) -> bool:
    rho = coerce(rho)
    a, b = rho.a, rho.b
    i, j = p
    return i >= 0 and j >= 0 and b * i + a * j >= a * b and i + j <= a + b - 1


def lattice_points(rho) -> frozenset:
    rho = coerce(rho)
    n = rho.degree
    return frozenset((i, j) for i in range(n + 1) for j in range(n + 1) if contains(rho, (i, j)))


def _check_diagonal(rho: RationalIndex, c: int) -> None:
    if not rho.a <= c <= rho.degree:
        raise NoSuchDiagonal(f"diagonal {c} is outside [{rho.a}, {rho.degree}] for {rho}")


def classify_diagonal(rho, c: int) -> DiagonalInfo:
    rho = coerce(rho)
    _check_diagonal(rho, c)
    kind = FULL if c >= rho.b else PARTIAL
    i = next(i for i in range(c + 1) if contains(rho, (i, c - i)))
    return DiagonalInfo(c, kind, (i, c - i))


def descent_shifts(rho) -> List[Point]:
    """Lattice shift of each descent step, read off the run profile.

    The first step with ``r`` up-steps moves by ``(r + 1, -(r + 2))``; later
    ones move by ``(r, -(r + 1))``.
    """
    runs = run_profile(modify_word(christoffel_word(rho)))
    return [(r + 1, -(r + 2)) if k == 0 else (r, -(r + 1)) for k, r in enumerate(runs)]


def leftmost_by_formula(rho, c: int) -> Point:
    rho = coerce(rho)
    _check_diagonal(rho, c)
    if c >= rho.b:
        return (0, c)
    i, j = 0, rho.b
    for di, dj in descent_shifts(rho)[: rho.b - c]:
        i, j = i + di, j + dj
    return (i, j)


def critical_triangle(rho) -> Callable[[Point], bool]:
    rho = coerce(rho)
    a, b = rho.a, rho.b

    def member(p: Point) -> bool:
        i, j = p
        return i < a and j < b and b * i + a * j > a * b

    return member


def newton_data(rho) -> Dict:
    rho = coerce(rho)
    poly = newton_polygon(rho)
    diagonals = []
    for c in range(rho.a, rho.degree + 1):
        info = classify_diagonal(rho, c)
        diagonals.append({"c": c, "kind": info.kind, "leftmost": list(info.leftmost)})
    return {
        "rho": str(rho),
        "vertices": [list(v) for v in poly.vertices],
        "lattice_points": sorted(list(p) for p in lattice_points(rho)),
        "diagonals": diagonals,
    }
