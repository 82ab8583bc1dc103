import json
import re
import xml.etree.ElementTree as ET
from pathlib import Path

import jsonschema
import pytest

from markov_snake.cli import main
from markov_snake.constructor import PointOutsidePolygon, match_for_point
from markov_snake.matchings import UnknownEdge
from markov_snake.render import RenderSpec, render_newton, render_snake
from markov_snake.snake import build_snake, edge_key

DATA = Path(__file__).parent / "data"
GOLDEN = json.loads((DATA / "golden_4_7.json").read_text())
SVG = "{http://www.w3.org/2000/svg}"

POINT = {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}
DEC = {"type": "string", "pattern": "^-?[0-9]+$"}
SCHEMAS = {
    "word": {
        "type": "object",
        "required": ["word", "modified", "runs"],
        "properties": {
            "word": {"type": "string", "pattern": "^[ab]+$"},
            "modified": {"type": "string", "pattern": "^[AB]+$"},
            "runs": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        },
    },
    "snake": {
        "type": "object",
        "required": ["T", "dirs", "edges"],
        "properties": {
            "T": {"type": "integer", "minimum": 1},
            "dirs": {"type": "string", "pattern": "^[RU]*$"},
            "edges": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["from", "to", "w"],
                    "properties": {"from": POINT, "to": POINT, "w": {"enum": ["x", "y", "z"]}},
                },
            },
        },
    },
    "poly": {
        "type": "object",
        "required": ["rho", "deg", "terms"],
        "properties": {
            "rho": {"type": "string", "pattern": "^[0-9]+/[0-9]+$"},
            "deg": {"type": "integer"},
            "terms": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["i", "j", "k", "c"],
                    "properties": {"i": {"type": "integer"}, "j": {"type": "integer"}, "k": {"type": "integer"}, "c": DEC},
                },
            },
        },
    },
    "newton": {
        "type": "object",
        "required": ["vertices", "lattice_points", "diagonals"],
        "properties": {
            "vertices": {"type": "array", "items": POINT, "minItems": 4, "maxItems": 4},
            "lattice_points": {"type": "array", "items": POINT},
            "diagonals": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["c", "kind", "leftmost"],
                    "properties": {"c": {"type": "integer"}, "kind": {"enum": ["full", "partial"]}, "leftmost": POINT},
                },
            },
        },
    },
    "match": {
        "type": "object",
        "required": ["point", "monomial", "edges", "ops"],
        "properties": {
            "point": POINT,
            "monomial": {
                "type": "object",
                "required": ["ex", "ey", "ez"],
                "properties": {k: {"type": "integer", "minimum": 0} for k in ("ex", "ey", "ez")},
            },
            "edges": {"type": "array"},
            "ops": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        },
    },
    "saturate": {
        "type": "object",
        "required": ["rho", "pass", "points", "lattice_count", "support_count"],
        "properties": {
            "pass": {"type": "boolean"},
            "points": {
                "type": "array",
                "items": {"type": "object", "required": ["point", "coefficient", "ok"], "properties": {"coefficient": DEC}},
            },
        },
    },
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "cmd, argv",
    [
        ("word", ["word", "4/7", "--json"]),
        ("snake", ["snake", "3/5", "--json"]),
        ("poly", ["poly", "4/7", "--json"]),
        ("poly", ["poly", "2/3", "--method", "enumerate", "--json"]),
        ("poly", ["poly", "2/3", "--method", "mutation", "--json"]),
        ("newton", ["newton", "4/7", "--json"]),
        ("match", ["match", "4/7", "--point", "4,2", "--json"]),
        ("saturate", ["saturate", "2/5", "--json"]),
    ],
)
def test_json_outputs_validate(capsys, cmd, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    jsonschema.validate(json.loads(out), SCHEMAS[cmd])


def test_poly_4_7_has_71(capsys):
    code, out, _ = run(capsys, "poly", "4/7", "--method", "dp", "--json")
    assert code == 0
    assert {"i": 4, "j": 2, "k": 4, "c": "71"} in json.loads(out)["terms"]


def test_poly_methods_agree(capsys):
    outs = {m: run(capsys, "poly", "2/5", "--method", m, "--json")[1] for m in ("dp", "enumerate", "mutation")}
    assert len(set(outs.values())) == 1


def test_poly_enumeration_cap_fails(capsys):
    code, out, _ = run(capsys, "poly", "4/7", "--method", "enumerate", "--cap", "5")
    assert code == 1 and out == ""


def test_word_text(capsys):
    assert run(capsys, "word", "3/5")[:2] == (0, "aabaabab / ABABB\n")


def test_match_json(capsys):
    d = json.loads(run(capsys, "match", "4/7", "--point", "4,2", "--json")[1])
    assert d["monomial"] == {"ex": 8, "ey": 4, "ez": 8}
    assert d["ops"] == ["IPM", "Swap(1)", "Swap(2)", "Swap(3)", "InitialStep(1)", "PullBack", "Twist"]


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "2/3", "--json")
    d = json.loads(out)
    assert code == 0 and d["pass"] and d["markov_number"] == 29


def test_saturate_sweep_exit_zero(capsys, tmp_path):
    code, out, _ = run(capsys, "saturate", "--sweep", "--max-sum", "3", "--out", str(tmp_path))
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["1_1.json", "1_2.json"]


def test_saturate_sweep_uses_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("MARKOV_SNAKE_RESULTS", str(tmp_path / "env"))
    assert run(capsys, "saturate", "--sweep", "--max-sum", "4", "--json")[0] == 0
    assert (tmp_path / "env" / "1_3.json").exists()


def test_out_file(capsys, tmp_path):
    target = tmp_path / "w.json"
    assert run(capsys, "word", "1/2", "--json", "--out", str(target))[:2] == (0, "")
    assert json.loads(target.read_text())["modified"] == "AB"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["word", "2/4"],
        ["word", "3/2"],
        ["word", "x"],
        ["match", "4/7"],
        ["match", "4/7", "--point", "0,6"],
        ["match", "4/7", "--point", "zz"],
        ["saturate"],
        ["saturate", "--sweep"],
        ["saturate", "--sweep", "--max-sum", "1"],
        ["snake", "1/1", "--svg", "--tikz"],
        ["bogus"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == "" and "usage" in err


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["snake", "1/1", "--svg"], "snake_1_1.svg"),
        (["snake", "3/5", "--tikz"], "snake_3_5.tikz"),
        (["match", "4/7", "--point", "4,2", "--svg"], "match_4_7_4_2.svg"),
        (["newton", "4/7", "--point", "4,2", "--svg"], "newton_4_7_path.svg"),
        (["newton", "1/1", "--tikz"], "newton_1_1.tikz"),
        (["newton", "3/5", "--svg"], "newton_3_5.svg"),
    ],
)
def test_render_goldens(capsys, argv, golden):
    first = run(capsys, *argv)[1]
    assert first == run(capsys, *argv)[1]
    assert first == (DATA / golden).read_text()


def test_snake_1_1_colors():
    root = ET.fromstring(render_snake(build_snake("1/1"), RenderSpec("svg")))
    strokes = sorted(line.get("class") for line in root.iter(SVG + "line"))
    assert strokes == ["x", "x", "y", "y"]


def test_snake_3_5_tikz_tiles():
    text = render_snake(build_snake("3/5"), RenderSpec("tikz"))
    corners = [tuple(map(int, m)) for m in re.findall(r"\\draw\[lightgray\] \((\d+), (\d+)\) rectangle", text)]
    assert len(corners) == 13
    runs, prev = [1], (corners[1][0] - corners[0][0], corners[1][1] - corners[0][1])
    for p, q in zip(corners[1:], corners[2:]):
        step = (q[0] - p[0], q[1] - p[1])
        if step == prev:
            runs[-1] += 1
        else:
            runs.append(1)
            prev = step
    # each turn tile is counted with the stretch it ends, so only the first stretch gains its start tile
    assert [runs[0] + 1] + runs[1:] == [3, 2, 4, 2, 2]


def test_highlight_matches_golden_final_stage():
    g = build_snake("4/7")
    final = GOLDEN["stages"][-1]
    expected = {edge_key(tuple(e["from"]), tuple(e["to"])) for e in final["edges"]}
    root = ET.fromstring(render_snake(g, RenderSpec("svg", highlight=frozenset(match_for_point("4/7", (4, 2))))))
    s, maxy = 40.0, max(y for _, y in g.tiles) + 1

    def back(x, y):
        return round((float(x) - s / 2) / s), round(maxy - (float(y) - s / 2) / s)

    thick = {
        edge_key(back(l.get("x1"), l.get("y1")), back(l.get("x2"), l.get("y2")))
        for l in root.iter(SVG + "line")
        if "match" in l.get("class")
    }
    assert thick == expected


def test_highlight_rejects_foreign_edge():
    with pytest.raises(UnknownEdge):
        render_snake(build_snake("1/1"), RenderSpec("svg", highlight=frozenset({((7, 7), (7, 8))})))


def test_newton_path_points():
    path = [(0, 10), (0, 9), (0, 8), (0, 7), (2, 4), (3, 3), (4, 2)]
    root = ET.fromstring(render_newton("4/7", path, RenderSpec("svg")))
    circles = [c for c in root.iter(SVG + "circle") if c.get("class") == "path-point"]
    assert len(circles) == 7
    with pytest.raises(PointOutsidePolygon):
        render_newton("4/7", [(0, 6)])


def test_newton_1_1_is_segment():
    text = render_newton("1/1", spec=RenderSpec("tikz"))
    assert "\\filldraw[blue!25] (1, 0) -- (0, 1) -- cycle;" in text


def test_newton_3_5_vertices():
    root = ET.fromstring(render_newton("3/5", spec=RenderSpec("svg")))
    labels = [t.text for t in root.iter(SVG + "text")]
    assert labels == ["a=3", "a+b-1=7", "a+b-1=7", "b=5"]
    assert json.loads(render_newton("3/5", spec=RenderSpec("json")))["vertices"] == [[3, 0], [7, 0], [0, 7], [0, 5]]


def test_render_spec_validation():
    with pytest.raises(ValueError):
        RenderSpec("png")
    with pytest.raises(ValueError):
        RenderSpec("svg", scale=0)
