"""Weighted Markov snake graphs.

Tiles are unit squares on the integer grid.  The direction string is the
interior of the Christoffel word with every letter doubled (``a -> RR``,
``b -> UU``).  Odd tiles (1-indexed) carry the x/y weights; every other edge
is weighted z.

An edge is keyed by its sorted pair of integer endpoints, so a matching is
just a set of such keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, List, Tuple

from .words import ALPHA, BETA, RationalIndex, christoffel_word, coerce

Point = Tuple[int, int]
Edge = Tuple[Point, Point]

SIDES = ("bottom", "top", "left", "right")


def edge_key(p: Point, q: Point) -> Edge:
    return (p, q) if p <= q else (q, p)


def square_edges(x: int, y: int) -> Dict[str, Edge]:
    return {
        "bottom": ((x, y), (x + 1, y)),
        "top": ((x, y + 1), (x + 1, y + 1)),
        "left": ((x, y), (x, y + 1)),
        "right": ((x + 1, y), (x + 1, y + 1)),
    }


def is_vertical(e: Edge) -> bool:
    return e[0][0] == e[1][0]


@dataclass(frozen=True)
class SnakeGraph:
    rho: RationalIndex
    dirs: str
    tiles: Tuple[Point, ...]
    weights: Dict[Edge, str] = field(hash=False, compare=False)

    @property
    def T(self) -> int:
        return len(self.tiles)

    @property
    def edges(self) -> frozenset:
        return frozenset(self.weights)

    @property
    def labeled_mask(self) -> Tuple[bool, ...]:
        return tuple(t % 2 == 1 for t in range(1, self.T + 1))

    @property
    def labeled_tiles(self) -> List[int]:
        return [t for t in range(1, self.T + 1) if t % 2 == 1]

    @cached_property
    def vertices(self) -> frozenset:
        return frozenset(v for e in self.weights for v in e)

    def tile_edges(self, t: int) -> Dict[str, Tuple[Edge, str]]:
        """Bottom/top/left/right edges of 1-indexed tile ``t`` with weights."""
        if not 1 <= t <= self.T:
            raise IndexError(f"tile {t} out of range 1..{self.T}")
        x, y = self.tiles[t - 1]
        return {side: (e, self.weights[e]) for side, e in square_edges(x, y).items()}

    def side(self, t: int, name: str) -> Edge:
        x, y = self.tiles[t - 1]
        return square_edges(x, y)[name]

    def up_runs(self) -> int:
        return sum(1 for i, d in enumerate(self.dirs) if d == "U" and (i == 0 or self.dirs[i - 1] != "U"))

    def to_json(self) -> dict:
        return {
            "rho": str(self.rho),
            "T": self.T,
            "dirs": self.dirs,
            "edges": [
                {"from": list(e[0]), "to": list(e[1]), "w": w}
                for e, w in sorted(self.weights.items())
            ],
        }


def snake_dirs(rho) -> str:
    interior = christoffel_word(rho)[1:-1]
    return "".join("RR" if ch == ALPHA else "UU" for ch in interior)


@lru_cache(maxsize=256)
def _build(a: int, b: int) -> SnakeGraph:
    rho = RationalIndex(a, b)
    dirs = snake_dirs(rho)
    tiles = [(0, 0)]
    for d in dirs:
        x, y = tiles[-1]
        tiles.append((x + 1, y) if d == "R" else (x, y + 1))
    if len(set(tiles)) != len(tiles):
        raise AssertionError(f"snake for {rho} is not self-avoiding")

    weights: Dict[Edge, str] = {}
    for t, (x, y) in enumerate(tiles, start=1):
        if t % 2 == 0:
            continue
        for side, e in square_edges(x, y).items():
            if e in weights:
                raise AssertionError(f"edge {e} labeled by two odd tiles")
            weights[e] = "x" if side in ("left", "right") else "y"
    for t, (x, y) in enumerate(tiles, start=1):
        if t % 2 == 1:
            continue
        for e in square_edges(x, y).values():
            weights.setdefault(e, "z")
    return SnakeGraph(rho, dirs, tuple(tiles), weights)


def build_snake(rho) -> SnakeGraph:
    rho = coerce(rho)
    return _build(rho.a, rho.b)


def connector_kinds(g: SnakeGraph) -> str:
    """Letter (``a`` or ``b``) of each even tile, in order."""
    return "".join(ALPHA if g.dirs[2 * k] == "R" else BETA for k in range(len(g.dirs) // 2))
