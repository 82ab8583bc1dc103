"""Perfect matchings of snake graphs and the numerator polynomial.

Two independent routes compute the numerator: :func:`numerator_dp` sweeps
the tiles keeping the frontier state, and :func:`enumerate_matchings`
backtracks over vertices.  They must agree term for term.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Tuple

from .polyarith import ONE, TriPoly
from .snake import Edge, SnakeGraph, square_edges

DEFAULT_CAP = 10**6

Matching = FrozenSet[Edge]

_VAR_INDEX = {"x": 0, "y": 1, "z": 2}


class UnknownEdge(KeyError):
    pass


class NotPerfect(ValueError):
    pass


class CapExceeded(RuntimeError):
    def __init__(self, count: int):
        super().__init__(f"more than {count} perfect matchings; use the DP instead")
        self.count = count


def _check_known(g: SnakeGraph, edges: Iterable[Edge]) -> None:
    for e in edges:
        if e not in g.weights:
            raise UnknownEdge(e)


def is_perfect(g: SnakeGraph, m: Iterable[Edge]) -> bool:
    m = list(m)
    _check_known(g, m)
    seen = set()
    for e in m:
        for v in e:
            if v in seen:
                return False
            seen.add(v)
    return seen == g.vertices


def exponent_vector(g: SnakeGraph, m: Iterable[Edge]) -> Tuple[int, int, int]:
    ex = [0, 0, 0]
    for e in m:
        ex[_VAR_INDEX[g.weights[e]]] += 1
    return tuple(ex)  # type: ignore[return-value]


def matching_monomial(g: SnakeGraph, m: Iterable[Edge]) -> TriPoly:
    m = frozenset(m)
    if not is_perfect(g, m):
        raise NotPerfect("matching does not cover every vertex exactly once")
    return TriPoly.monomial(*exponent_vector(g, m))


def lattice_point(mono: TriPoly) -> Tuple[int, int]:
    """Map ``x^(2i) y^(2j) z^(2k)`` to ``(i, j)``."""
    if not mono.is_monomial():
        raise ValueError(f"{mono} is not a monomial")
    ((ex, ey, ez), _), = mono
    if ex % 2 or ey % 2 or ez % 2:
        raise AssertionError(f"odd exponent in matching monomial {mono}")
    return ex // 2, ey // 2


def enumerate_matchings(g: SnakeGraph, cap: int = DEFAULT_CAP) -> List[Matching]:
    """All perfect matchings, by backtracking on the first uncovered vertex.

    Vertices are ordered by the tile that introduces them, so the search
    sweeps the snake from left to right.
    """
    order: List = []
    for x, y in g.tiles:
        for e in square_edges(x, y).values():
            for v in sorted(e):
                if v not in order:
                    order.append(v)
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    adj: List[List[Tuple[int, Edge]]] = [[] for _ in range(n)]
    for e in sorted(g.weights):
        u, v = index[e[0]], index[e[1]]
        adj[u].append((v, e))
        adj[v].append((u, e))

    covered = [False] * n
    chosen: List[Edge] = []
    found: List[Matching] = []

    def search(start: int) -> None:
        while start < n and covered[start]:
            start += 1
        if start == n:
            if len(found) >= cap:
                raise CapExceeded(len(found))
            found.append(frozenset(chosen))
            return
        covered[start] = True
        for w, e in adj[start]:
            if not covered[w]:
                covered[w] = True
                chosen.append(e)
                search(start + 1)
                chosen.pop()
                covered[w] = False
        covered[start] = False

    search(0)
    return found


def numerator_from_matchings(g: SnakeGraph, ms: Iterable[Matching]) -> TriPoly:
    """Sum of matching monomials, in squared-variable exponents."""
    acc: Dict[Tuple[int, int, int], int] = {}
    for m in ms:
        k = exponent_vector(g, m)
        acc[k] = acc.get(k, 0) + 1
    return TriPoly(acc).halve_exponents()


def numerator_dp(g: SnakeGraph) -> TriPoly:
    """Numerator ``P(u, v, w)`` by a left-to-right frontier sweep.

    After tile ``t`` is absorbed, every vertex seen so far is covered except
    possibly the two ends of the edge shared with tile ``t + 1``; by parity
    they are either both covered or both free, giving two states.
    """
    seen_edges: set = set()
    seen_verts: set = set()
    states: Dict[FrozenSet, TriPoly] = {frozenset(): ONE}
    T = g.T
    for t in range(1, T + 1):
        x, y = g.tiles[t - 1]
        new_edges = [e for e in square_edges(x, y).values() if e not in seen_edges]
        new_verts = {v for e in new_edges for v in e} - seen_verts
        if t < T:
            nx, ny = g.tiles[t]
            shared = set(square_edges(x, y)["right" if nx > x else "top"])
        else:
            shared = set()

        nxt: Dict[FrozenSet, TriPoly] = {}
        for free, poly in states.items():
            open_verts = set(free) | new_verts
            for r in range(len(new_edges) + 1):
                for subset in combinations(new_edges, r):
                    touched = [v for e in subset for v in e]
                    if len(set(touched)) != len(touched) or not set(touched) <= open_verts:
                        continue
                    left = frozenset(open_verts - set(touched))
                    if not left <= shared:
                        continue
                    mono = TriPoly.monomial(*exponent_vector(g, subset))
                    term = poly * mono
                    nxt[left] = nxt[left] + term if left in nxt else term
        states = nxt
        seen_edges.update(new_edges)
        seen_verts.update(new_verts)
        if len(states) > 2:
            raise AssertionError(f"frontier DP grew to {len(states)} states at tile {t}")

    return states.get(frozenset(), TriPoly()).halve_exponents()


def matching_count(g: SnakeGraph) -> int:
    return int(numerator_dp(g)(1, 1, 1))
