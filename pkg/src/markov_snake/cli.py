"""Command-line front end: ``markov-snake <command> a/b ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from . import constructor, matchings, newton, oracle, render, saturation
from .snake import build_snake
from .words import RationalIndex, word_data

log = logging.getLogger("markov_snake")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rho(text: str) -> RationalIndex:
    try:
        return RationalIndex.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _point(text: str) -> Tuple[int, int]:
    try:
        i, j = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j, got {text!r}")
    return i, j


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _fmt(args) -> str:
    if getattr(args, "svg", False):
        return "svg"
    if getattr(args, "tikz", False):
        return "tikz"
    return "json" if args.json else "text"


def numerator_json(rho: RationalIndex, p) -> dict:
    return {
        "rho": str(rho),
        "deg": rho.degree,
        "terms": [{"i": i, "j": j, "k": k, "c": str(c)} for (i, j, k), c in p],
    }


def cmd_word(args) -> int:
    d = word_data(args.rho)
    if args.json:
        _emit(_dump({"word": d["word"], "modified": d["modified"], "runs": d["runs"]}), args.out)
    else:
        _emit(f"{d['word']} / {d['modified']}", args.out)
    return EXIT_OK


def cmd_snake(args) -> int:
    g = build_snake(args.rho)
    fmt = _fmt(args)
    if fmt == "text":
        _emit(f"{args.rho}: T={g.T} dirs={g.dirs or '-'} edges={len(g.weights)}", args.out)
    else:
        _emit(render.render_snake(g, render.RenderSpec(fmt, args.scale, show_weights=args.weights)), args.out)
    return EXIT_OK


def cmd_poly(args) -> int:
    g = build_snake(args.rho)
    if args.method == "dp":
        p = matchings.numerator_dp(g)
    elif args.method == "enumerate":
        try:
            p = matchings.numerator_from_matchings(g, matchings.enumerate_matchings(g, args.cap))
        except matchings.CapExceeded as exc:
            log.error("%s", exc)
            return EXIT_FAIL
    else:
        p = oracle.numerator_from_mutation(args.rho)
    if args.json:
        _emit(_dump(numerator_json(args.rho, p)), args.out)
    else:
        text = " + ".join(
            f"{c}*u^{i}*v^{j}*w^{k}" for (i, j, k), c in sorted(p, reverse=True)
        )
        _emit(text, args.out)
    return EXIT_OK


def cmd_newton(args) -> int:
    fmt = _fmt(args)
    path = constructor.path_points(args.rho, args.point) if args.point else None
    if fmt == "json":
        data = newton.newton_data(args.rho)
        if path:
            data["path"] = [list(p) for p in path]
        _emit(_dump(data), args.out)
    elif fmt == "text":
        d = newton.newton_data(args.rho)
        lines = [f"vertices: {d['vertices']}", f"lattice points: {len(d['lattice_points'])}"]
        lines += [f"  c={x['c']:3d} {x['kind']:7s} leftmost={tuple(x['leftmost'])}" for x in d["diagonals"]]
        _emit("\n".join(lines), args.out)
    else:
        _emit(render.render_newton(args.rho, path, render.RenderSpec(fmt, args.scale)), args.out)
    return EXIT_OK


def cmd_match(args) -> int:
    state = constructor.construct(args.rho, args.point)
    fmt = _fmt(args)
    if fmt == "json":
        _emit(_dump(state.to_json()), args.out)
    elif fmt == "text":
        lines = [f"{r.name:16s} -> {r.point}  x^{r.exponents[0]} y^{r.exponents[1]} z^{r.exponents[2]}"
                 for r in state.history]
        _emit("\n".join(lines), args.out)
    else:
        spec = render.RenderSpec(fmt, args.scale, highlight=frozenset(state.matching), show_weights=args.weights)
        _emit(render.render_snake(state.graph, spec), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    res = oracle.three_way(args.rho, args.cap)
    ok = res["mutation_equal"] and res["identity"] and res["enumeration_equal"] is not False
    res["pass"] = ok
    if args.json:
        _emit(_dump(res), args.out)
    else:
        enum = {None: "skipped (cap)", True: "equal", False: "DIFFERENT"}[res["enumeration_equal"]]
        _emit(
            "\n".join([
                f"rho {res['rho']}: markov number {res['markov_number']}, {res['dp_terms']} terms",
                f"  enumeration vs dp: {enum}",
                f"  mutation vs dp:    {'equal' if res['mutation_equal'] else 'DIFFERENT'}",
                f"  markov identity:   {'holds' if res['identity'] else 'FAILS'}",
            ]),
            args.out,
        )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_saturate(args) -> int:
    if args.sweep:
        if args.max_sum is None:
            raise UsageError("--sweep needs --max-sum")
        summary = saturation.sweep(args.max_sum, saturation.results_dir(args.out), args.workers)
        if args.json:
            _emit(_dump(summary), None)
        else:
            _emit(
                f"{summary['count']} rationals, {len(summary['failures'])} failures, "
                f"{summary['seconds']} s" + (f": {summary['failures']}" if summary["failures"] else ""),
                None,
            )
        return EXIT_OK if summary["pass"] else EXIT_FAIL
    if args.rho is None:
        raise UsageError("give a/b or --sweep")
    rep = saturation.saturation_report(args.rho)
    if args.json:
        _emit(_dump(rep.to_json()), args.out)
    else:
        bad = [r for r in rep.points if not r.ok]
        _emit(
            f"rho {rep.rho}: {rep.lattice_count} lattice points, {rep.support_count} support terms, "
            f"{len(bad)} construction failures -> {'PASS' if rep.passed else 'FAIL'}",
            args.out,
        )
    return EXIT_OK if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="markov-snake", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, rho_required=True, figures=False):
        if rho_required:
            p.add_argument("rho", type=_rho, help="rational index a/b with 1 <= a <= b")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--out", help="write to FILE instead of stdout")
        if figures:
            g = p.add_mutually_exclusive_group()
            g.add_argument("--svg", action="store_true")
            g.add_argument("--tikz", action="store_true")
            p.add_argument("--scale", type=float, default=40.0)
            p.add_argument("--weights", action="store_true", help="label edge weights")

    common(sub.add_parser("word", help="Christoffel and modified words"))
    common(sub.add_parser("snake", help="weighted snake graph"), figures=True)

    p = sub.add_parser("poly", help="numerator polynomial P(u, v, w)")
    common(p)
    p.add_argument("--method", choices=["dp", "enumerate", "mutation"], default="dp")
    p.add_argument("--cap", type=int, default=matchings.DEFAULT_CAP)

    p = sub.add_parser("newton", help="Newton polygon and diagonals")
    common(p, figures=True)
    p.add_argument("--point", type=_point, help="overlay the construction path to i,j")

    p = sub.add_parser("match", help="construct a matching for a lattice point")
    common(p, figures=True)
    p.add_argument("--point", type=_point, required=True)

    p = sub.add_parser("verify", help="three-way oracle comparison")
    common(p)
    p.add_argument("--cap", type=int, default=matchings.DEFAULT_CAP)

    p = sub.add_parser("saturate", help="saturation check for one rational or a sweep")
    p.add_argument("rho", type=_rho, nargs="?")
    p.add_argument("--json", action="store_true")
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--max-sum", type=int)
    p.add_argument("--out", help="report file, or results directory with --sweep")
    p.add_argument("--workers", type=int)
    return ap


COMMANDS = {
    "word": cmd_word,
    "snake": cmd_snake,
    "poly": cmd_poly,
    "newton": cmd_newton,
    "match": cmd_match,
    "verify": cmd_verify,
    "saturate": cmd_saturate,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, constructor.PointOutsidePolygon, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
