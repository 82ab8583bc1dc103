"""Constructive perfect matchings for every lattice point of the polygon.

The snake decomposes into labeled squares ``0 .. n-1`` (the odd tiles) and
connectors ``1 .. n-1`` (the even tiles).  Connector ``k`` joins squares
``k-1`` and ``k`` through two parallel z-edges, and its kind is the
Christoffel letter it came from: ``a`` for a horizontal step, ``b`` for a
vertical step (a "column").  Every rewrite below is an explicit edge delta;
after each one the matching is re-validated and its monomial recomputed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .matchings import Matching, exponent_vector, is_perfect, lattice_point, matching_monomial
from .newton import classify_diagonal, contains
from .polyarith import TriPoly
from .snake import Edge, SnakeGraph, build_snake, connector_kinds
from .words import ALPHA, BETA, christoffel_word, coerce, modify_word, run_profile

Point = Tuple[int, int]


class ConstructionError(RuntimeError):
    pass


class AlreadySwapped(ConstructionError):
    pass


class NoSuchRegion(ConstructionError, IndexError):
    pass


class DescentExhausted(ConstructionError):
    pass


class EndOfDiagonal(ConstructionError):
    pass


class RewriteError(ConstructionError):
    """An operation's edge delta did not apply cleanly or broke an invariant."""


class PointOutsidePolygon(ValueError):
    pass


SHIFT_SWAP = (0, -1)
SHIFT_ADD = (1, -2)
SHIFT_EXTEND = (0, -1)
SHIFT_TRAVERSE = (1, -1)


def initial_step_shift(i: int) -> Point:
    return (i + 1, -(i + 2))


def step_shift(i: int) -> Point:
    return (i, -(i + 1))


@dataclass(frozen=True)
class OpRecord:
    name: str
    shift: Point
    point: Point
    exponents: Tuple[int, int, int]
    edges: frozenset = frozenset()


class SnakeLayout:
    """Square/connector view of a snake graph."""

    def __init__(self, g: SnakeGraph):
        self.g = g
        self.kinds = connector_kinds(g)
        self.n = len(g.labeled_tiles)
        self.columns = [k for k in range(1, self.n) if self.kind(k) == BETA]

    def kind(self, k: int) -> str:
        return self.kinds[k - 1]

    def sq(self, k: int, side: str) -> Edge:
        return self.g.side(2 * k + 1, side)

    def y_pair(self, k: int) -> List[Edge]:
        return [self.sq(k, "bottom"), self.sq(k, "top")]

    def x_pair(self, k: int) -> List[Edge]:
        return [self.sq(k, "left"), self.sq(k, "right")]

    def bridge(self, k: int) -> List[Edge]:
        t = 2 * k
        if self.kind(k) == ALPHA:
            return [self.g.side(t, "bottom"), self.g.side(t, "top")]
        return [self.g.side(t, "left"), self.g.side(t, "right")]


@dataclass
class ConstructionState:
    graph: SnakeGraph
    layout: SnakeLayout
    matching: set
    point: Point
    done: int = 0
    swapped: set = field(default_factory=set)
    descents: int = 0
    traversals: int = 0
    history: List[OpRecord] = field(default_factory=list)

    @property
    def rho(self):
        return self.graph.rho

    @property
    def frontier(self) -> int:
        """1-indexed tile closing the processed prefix; 0 when it is empty."""
        return 2 * self.done - 1 if self.done else 0

    @property
    def ops(self) -> List[str]:
        return [r.name for r in self.history]

    def monomial(self) -> TriPoly:
        return matching_monomial(self.graph, self.matching)

    def to_json(self) -> dict:
        ex, ey, ez = exponent_vector(self.graph, self.matching)
        return {
            "rho": str(self.rho),
            "point": list(self.point),
            "monomial": {"ex": ex, "ey": ey, "ez": ez},
            "edges": [
                {"from": list(e[0]), "to": list(e[1]), "w": self.graph.weights[e]}
                for e in sorted(self.matching)
            ],
            "ops": self.ops,
        }


def _rewrite(state: ConstructionState, name: str, remove: Sequence[Edge],
             add: Sequence[Edge], shift: Point) -> ConstructionState:
    missing = [e for e in remove if e not in state.matching]
    if missing:
        raise RewriteError(f"{name}: edges {missing} are not in the matching")
    clash = [e for e in add if e in state.matching or e in remove]
    if clash:
        raise RewriteError(f"{name}: edges {clash} already present")
    state.matching.difference_update(remove)
    state.matching.update(add)
    if not is_perfect(state.graph, state.matching):
        raise RewriteError(f"{name}: result is not a perfect matching")
    expected = (state.point[0] + shift[0], state.point[1] + shift[1])
    actual = lattice_point(state.monomial())
    if actual != expected:
        raise RewriteError(f"{name}: monomial maps to {actual}, declared shift gives {expected}")
    state.point = actual
    state.history.append(
        OpRecord(name, shift, actual, exponent_vector(state.graph, state.matching), frozenset(state.matching))
    )
    return state


def _check_prefix_has_no_y(state: ConstructionState) -> None:
    lay = state.layout
    for k in range(state.done):
        if any(e in state.matching for e in lay.y_pair(k)):
            raise RewriteError(f"processed square {k} still holds a y-edge")


def initial_matching(g: SnakeGraph) -> ConstructionState:
    lay = SnakeLayout(g)
    m = {e for e, w in g.weights.items() if w == "y"}
    state = ConstructionState(g, lay, m, (0, lay.n))
    if lattice_point(state.monomial()) != state.point:
        raise RewriteError("initial matching does not map to (0, a+b-1)")
    state.history.append(OpRecord("IPM", (0, 0), state.point, exponent_vector(g, m), frozenset(m)))
    return state


def apply_swap(state: ConstructionState, region: int) -> ConstructionState:
    """Use the z-bridge of the ``region``-th column in place of its two middle y-edges."""
    lay = state.layout
    if not 1 <= region <= len(lay.columns):
        raise NoSuchRegion(f"{state.rho} has {len(lay.columns)} columns, asked for {region}")
    if region in state.swapped:
        raise AlreadySwapped(f"column {region} is already swapped")
    k = lay.columns[region - 1]
    remove = [lay.sq(k - 1, "top"), lay.sq(k, "bottom")]
    _rewrite(state, f"Swap({region})", remove, lay.bridge(k), SHIFT_SWAP)
    state.swapped.add(region)
    return state


def _descent_region(lay: SnakeLayout, start: int) -> Tuple[int, int]:
    """Return ``(r, end)`` for the stretch ``a (b a)^r`` after square ``start``."""
    if start + 1 >= lay.n or lay.kind(start + 1) != ALPHA:
        raise RewriteError(f"no horizontal connector after square {start}")
    p, r = start + 1, 0
    while p + 1 < lay.n and lay.kind(p + 1) == BETA:
        if p + 2 >= lay.n or lay.kind(p + 2) != ALPHA:
            raise RewriteError(f"column after square {p} is not followed by a horizontal step")
        r += 1
        p += 2
    return r, p


def apply_descent(state: ConstructionState) -> ConstructionState:
    """Move to the left-most point of the next diagonal down."""
    lay = state.layout
    rho = state.rho
    if state.traversals:
        raise RewriteError("descents must precede traversals")
    if len(state.swapped) != len(lay.columns):
        raise RewriteError("every column must be swapped before descending")
    c = state.point[0] + state.point[1]
    if state.descents >= rho.b - rho.a or c <= rho.a:
        raise DescentExhausted(f"already on diagonal {c}")

    first = state.done == 0
    start = 0 if first else state.done - 1
    r, end = _descent_region(lay, start)

    remove: List[Edge] = []
    add: List[Edge] = []
    if first:
        remove += lay.y_pair(0)
        add.append(lay.sq(0, "left"))
    else:
        remove.append(lay.sq(start, "right"))
    for k in range(start + 1, end + 1):
        (add if lay.kind(k) == ALPHA else remove).extend(lay.bridge(k))
    for p in range(start + 1, end):
        if lay.kind(p) == ALPHA:
            remove.append(lay.sq(p, "bottom"))
            add.append(lay.sq(p, "right"))
        else:
            remove.append(lay.sq(p, "top"))
            add.append(lay.sq(p, "left"))
    remove += lay.y_pair(end)
    add.append(lay.sq(end, "right"))

    if first:
        name = "Add" if r == 0 else f"InitialStep({r})"
        shift = SHIFT_ADD if r == 0 else initial_step_shift(r)
    else:
        name = "Extend" if r == 0 else f"Step({r})"
        shift = SHIFT_EXTEND if r == 0 else step_shift(r)
    _rewrite(state, name, remove, add, shift)
    state.done = end + 1
    state.descents += 1
    _check_prefix_has_no_y(state)
    return state


def apply_traversal(state: ConstructionState) -> ConstructionState:
    """Move one point along the current diagonal, i.e. shift by (+1, -1)."""
    lay = state.layout
    i, j = state.point
    if not contains(state.rho, (i + 1, j - 1)):
        raise EndOfDiagonal(f"{state.point} is the right-most point of its diagonal")

    if state.done == 0:
        _rewrite(state, "FirstBoxSwap", lay.y_pair(0), lay.x_pair(0), SHIFT_TRAVERSE)
        state.done = 1
    else:
        s, p = state.done - 1, state.done
        if p >= lay.n:
            raise EndOfDiagonal("no unprocessed squares left")
        if all(e in state.matching for e in lay.y_pair(p)):
            _rewrite(state, "Twist", lay.y_pair(p), lay.x_pair(p), SHIFT_TRAVERSE)
            state.done = p + 1
        elif p + 1 < lay.n and lay.kind(p + 1) == BETA and lay.kind(p) == ALPHA:
            remove = [lay.sq(s, "right"), lay.sq(p, "bottom"), *lay.bridge(p + 1), lay.sq(p + 1, "top")]
            add = [*lay.bridge(p), lay.sq(p, "right"), *lay.x_pair(p + 1)]
            _rewrite(state, "PullBack", remove, add, SHIFT_TRAVERSE)
            state.done = p + 2
        else:
            raise RewriteError(f"no traversal applies at square {p}")
    state.traversals += 1
    _check_prefix_has_no_y(state)
    return state


def construct(rho, target: Point) -> ConstructionState:
    """Run the full driver and return the final state with its operation log."""
    rho = coerce(rho)
    if not contains(rho, target):
        raise PointOutsidePolygon(f"{target} is not in the Newton polygon of {rho}")
    g = build_snake(rho)
    state = initial_matching(g)
    c = target[0] + target[1]
    for region in range(1, min(rho.degree - c, rho.a - 1) + 1):
        apply_swap(state, region)
    if c < rho.b:
        runs = run_profile(modify_word(christoffel_word(rho)))
        for k in range(rho.b - c):
            apply_descent(state)
            r = _last_run(state.history[-1].name)
            if r != runs[k]:
                raise RewriteError(f"descent {k + 1} used {r} steps, run profile says {runs[k]}")
    leftmost = classify_diagonal(rho, c).leftmost
    if state.point != leftmost:
        raise RewriteError(f"reached {state.point}, left-most point of diagonal {c} is {leftmost}")
    while state.point != target:
        apply_traversal(state)
    return state


def _last_run(name: str) -> int:
    if "(" in name:
        return int(name[name.index("(") + 1 : -1])
    return 0


def match_for_point(rho, target: Point) -> Matching:
    return frozenset(construct(rho, target).matching)


def path_points(rho, target: Point) -> List[Point]:
    """Lattice points visited by the driver, starting at (0, a+b-1)."""
    return [r.point for r in construct(rho, target).history]
