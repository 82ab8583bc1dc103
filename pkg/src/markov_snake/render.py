"""SVG and TikZ output for snake graphs, matchings and Newton polygons.

Colours follow the usual convention for weighted snakes: x edges red,
y edges blue, z edges green.  Output is byte-deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .constructor import PointOutsidePolygon
from .matchings import UnknownEdge
from .newton import contains, newton_polygon
from .snake import Edge, SnakeGraph
from .words import coerce

COLORS = {"x": "red", "y": "blue", "z": "green"}
SVG_COLORS = {"x": "#d62728", "y": "#1f5fd6", "z": "#2ca02c"}

Point = Tuple[int, int]


@dataclass(frozen=True)
class RenderSpec:
    format: str = "svg"
    scale: float = 40.0
    highlight: Optional[frozenset] = None
    show_weights: bool = False

    def __post_init__(self):
        if self.format not in ("svg", "tikz", "json"):
            raise ValueError(f"unknown format {self.format!r}")
        if not self.scale > 0:
            raise ValueError("scale must be positive")


def _num(v: float) -> str:
    return f"{v:g}"


def _svg_doc(width: float, height: float, body: List[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" '
        f'height="{_num(height)}" viewBox="0 0 {_num(width)} {_num(height)}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def render_snake(g: SnakeGraph, spec: RenderSpec = RenderSpec()) -> str:
    hi = spec.highlight or frozenset()
    for e in hi:
        if e not in g.weights:
            raise UnknownEdge(e)
    if spec.format == "json":
        data = g.to_json()
        data["highlight"] = [[list(e[0]), list(e[1])] for e in sorted(hi)]
        return json.dumps(data, sort_keys=True) + "\n"
    if spec.format == "tikz":
        return _snake_tikz(g, hi, spec)
    return _snake_svg(g, hi, spec)


def _snake_tikz(g: SnakeGraph, hi: frozenset, spec: RenderSpec) -> str:
    lines = [f"\\begin{{tikzpicture}}[scale={_num(spec.scale / 40)}]"]
    for x, y in g.tiles:
        lines.append(f"    \\draw[lightgray] ({x}, {y}) rectangle ({x + 1}, {y + 1});")
    for e, w in sorted(g.weights.items()):
        (x1, y1), (x2, y2) = e
        if hi and e not in hi:
            continue
        style = f"{COLORS[w]}, very thick" if e in hi else COLORS[w]
        lines.append(f"    \\draw[{style}] ({x1}, {y1}) -- ({x2}, {y2});")
    if spec.show_weights:
        for e, w in sorted(g.weights.items()):
            mx, my = _label_pos(e)
            lines.append(f"    \\node[{COLORS[w]}] at ({_num(mx)}, {_num(my)}) {{${w}$}};")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def _label_pos(e: Edge) -> Tuple[float, float]:
    (x1, y1), (x2, y2) = e
    if x1 == x2:
        return x1 - 0.2, (y1 + y2) / 2
    return (x1 + x2) / 2, y1 - 0.2


def _snake_svg(g: SnakeGraph, hi: frozenset, spec: RenderSpec) -> str:
    s = spec.scale
    pad = s / 2
    maxx = max(x for x, _ in g.tiles) + 1
    maxy = max(y for _, y in g.tiles) + 1
    width, height = maxx * s + 2 * pad, maxy * s + 2 * pad

    def px(x: float, y: float) -> Tuple[str, str]:
        return _num(pad + x * s), _num(pad + (maxy - y) * s)

    body = []
    for e, w in sorted(g.weights.items()):
        (x1, y1), (x2, y2) = e
        ax, ay = px(x1, y1)
        bx, by = px(x2, y2)
        thick = e in hi
        body.append(
            f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="{SVG_COLORS[w]}" '
            f'stroke-width="{_num(s / 8 if thick else s / 40)}" class="{w}{" match" if thick else ""}"/>'
        )
    if spec.show_weights:
        for e, w in sorted(g.weights.items()):
            mx, my = px(*_label_pos(e))
            body.append(
                f'<text x="{mx}" y="{my}" font-size="{_num(s / 4)}" fill="{SVG_COLORS[w]}" '
                f'text-anchor="middle">{w}</text>'
            )
    return _svg_doc(width, height, body)


def render_newton(rho, path: Optional[Sequence[Point]] = None, spec: RenderSpec = RenderSpec()) -> str:
    rho = coerce(rho)
    path = list(path or [])
    for p in path:
        if not contains(rho, p):
            raise PointOutsidePolygon(f"{p} is not in the Newton polygon of {rho}")
    poly = newton_polygon(rho)
    a, b, n = rho.a, rho.b, rho.degree
    verts = poly.vertices
    labels: List[Tuple[Point, str]] = []
    for v, name in [((a, 0), "a"), ((n, 0), "a+b-1"), ((0, n), "a+b-1"), ((0, b), "b")]:
        if labels and labels[-1][0] == v:
            labels[-1] = (v, f"{labels[-1][1]}={name}")
        else:
            labels.append((v, name))
    if spec.format == "json":
        return json.dumps({"rho": str(rho), "vertices": [list(v) for v in verts],
                           "path": [list(p) for p in path]}, sort_keys=True) + "\n"
    if spec.format == "tikz":
        return _newton_tikz(verts, labels, path, spec)
    return _newton_svg(verts, labels, path, n, spec)


def _outline(verts: List[Point]) -> List[Point]:
    out: List[Point] = []
    for v in verts:
        if not out or out[-1] != v:
            out.append(v)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def _newton_tikz(verts, labels, path, spec: RenderSpec) -> str:
    outline = _outline(verts)
    lines = [f"\\begin{{tikzpicture}}[scale={_num(spec.scale / 80)}]"]
    pts = " -- ".join(f"({i}, {j})" for i, j in outline)
    lines.append(f"    \\filldraw[blue!25] {pts} -- cycle;")
    top = max(max(v) for v in verts) + 2
    lines.append(f"    \\draw[thick, ->] (0, 0) -- (0, {top});")
    lines.append(f"    \\draw[thick, ->] (0, 0) -- ({top}, 0);")
    for (i, j), name in labels:
        where = f"({i}, -0.5)" if j == 0 else f"(-1, {j})"
        lines.append(f"    \\node at {where} {{${name}={i + j}$}};")
    if len(path) > 1:
        lines.append("    \\draw[orange] " + " -- ".join(f"({i}, {j})" for i, j in path) + ";")
    for i, j in path:
        lines.append(f"    \\filldraw[orange] ({i}, {j}) circle (3pt);")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def _newton_svg(verts, labels, path, n: int, spec: RenderSpec) -> str:
    s = spec.scale / 2
    pad = 2 * s
    size = (n + 1) * s + 2 * pad

    def px(i: float, j: float) -> Tuple[str, str]:
        return _num(pad + i * s), _num(pad + (n + 1 - j) * s)

    body = []
    ox, oy = px(0, 0)
    for end in (px(n + 1, 0), px(0, n + 1)):
        body.append(f'<line x1="{ox}" y1="{oy}" x2="{end[0]}" y2="{end[1]}" stroke="black"/>')
    outline = _outline(verts)
    pts = " ".join(",".join(px(i, j)) for i, j in outline)
    body.append(f'<polygon points="{pts}" fill="#c6d4f5" stroke="#1f5fd6"/>')
    for (i, j), name in labels:
        x, y = px(i, j)
        body.append(f'<text x="{x}" y="{y}" font-size="{_num(s / 2)}" class="vertex">{name}={i + j}</text>')
    if len(path) > 1:
        pl = " ".join(",".join(px(i, j)) for i, j in path)
        body.append(f'<polyline points="{pl}" fill="none" stroke="orange"/>')
    for i, j in path:
        x, y = px(i, j)
        body.append(f'<circle cx="{x}" cy="{y}" r="{_num(s / 6)}" fill="orange" class="path-point"/>')
    return _svg_doc(size, size, body)
