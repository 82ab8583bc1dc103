"""End-to-end saturation checks: support of the numerator versus the
lattice points of the Newton polygon, plus a constructed matching per point.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd
from pathlib import Path
from typing import Dict, Iterator, List, Optional

from .constructor import construct
from .matchings import is_perfect, lattice_point, numerator_dp
from .newton import lattice_points, newton_polygon
from .snake import build_snake
from .words import RationalIndex, coerce

log = logging.getLogger(__name__)

RESULTS_ENV = "MARKOV_SNAKE_RESULTS"
DEFAULT_RESULTS_DIR = "markov_snake_results"


@dataclass
class PointResult:
    point: List[int]
    coefficient: str
    ok: bool
    ops: int = 0
    monomial: Optional[List[int]] = None
    error: Optional[str] = None


@dataclass
class SaturationReport:
    rho: str
    vertices: List[List[int]]
    lattice_count: int
    support_count: int
    support_outside_polygon: List[List[int]]
    polygon_outside_support: List[List[int]]
    points: List[PointResult] = field(default_factory=list)
    passed: bool = False

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d

    @classmethod
    def from_json(cls, d: dict) -> "SaturationReport":
        d = dict(d)
        d["passed"] = d.pop("pass")
        d["points"] = [PointResult(**p) for p in d["points"]]
        return cls(**d)


def saturation_report(rho) -> SaturationReport:
    rho = coerce(rho)
    g = build_snake(rho)
    numerator = numerator_dp(g)
    coeffs = {(i, j): c for (i, j, _), c in numerator}
    support = frozenset(coeffs)
    polygon = lattice_points(rho)

    report = SaturationReport(
        rho=str(rho),
        vertices=[list(v) for v in newton_polygon(rho).vertices],
        lattice_count=len(polygon),
        support_count=len(support),
        support_outside_polygon=sorted(list(p) for p in support - polygon),
        polygon_outside_support=sorted(list(p) for p in polygon - support),
    )
    for p in sorted(polygon):
        res = PointResult(point=list(p), coefficient=str(coeffs.get(p, 0)), ok=False)
        try:
            state = construct(rho, p)
            if not is_perfect(g, state.matching):
                raise AssertionError("constructed edge set is not a perfect matching")
            got = lattice_point(state.monomial())
            if got != p:
                raise AssertionError(f"constructed matching maps to {got}")
            res.ok = True
            res.ops = len(state.history)
            res.monomial = list(state.history[-1].exponents)
        except Exception as exc:  # per-point failures are reported, not raised
            res.error = f"{type(exc).__name__}: {exc}"
        report.points.append(res)

    report.passed = (
        not report.support_outside_polygon
        and not report.polygon_outside_support
        and all(r.ok for r in report.points)
    )
    return report


def rationals_up_to(max_sum: int) -> Iterator[RationalIndex]:
    for s in range(2, max_sum + 1):
        for a in range(1, s // 2 + 1):
            b = s - a
            if gcd(a, b) == 1:
                yield RationalIndex(a, b)


def results_dir(out: Optional[str] = None) -> Path:
    return Path(out or os.environ.get(RESULTS_ENV) or DEFAULT_RESULTS_DIR)


def _report_path(directory: Path, rho: RationalIndex) -> Path:
    return directory / f"{rho.a}_{rho.b}.json"


def _write_atomic(path: Path, data: dict) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(data, fh, indent=1, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _report_for(args) -> dict:
    a, b = args
    return saturation_report(RationalIndex(a, b)).to_json()


def sweep(max_sum: int, out: Optional[str | Path] = None, workers: Optional[int] = None) -> Dict:
    """Saturation reports for every ``a/b`` with ``a + b <= max_sum``.

    With ``out`` set, each report is persisted as ``a_b.json`` and existing
    files are reused, so an interrupted sweep can be resumed.
    """
    if max_sum < 2:
        raise ValueError("max_sum must be at least 2")
    t0 = time.perf_counter()
    directory = Path(out) if out is not None else None
    if directory is not None:
        directory.mkdir(parents=True, exist_ok=True)

    reports: Dict[str, dict] = {}
    todo: List[RationalIndex] = []
    for rho in rationals_up_to(max_sum):
        if directory is not None and _report_path(directory, rho).exists():
            try:
                reports[str(rho)] = json.loads(_report_path(directory, rho).read_text())
                continue
            except (OSError, json.JSONDecodeError):
                log.warning("discarding unreadable report for %s", rho)
        todo.append(rho)

    def store(rho: RationalIndex, rep: dict) -> None:
        reports[str(rho)] = rep
        if directory is not None:
            _write_atomic(_report_path(directory, rho), rep)

    if workers == 1 or len(todo) < 8:
        for rho in todo:
            store(rho, _report_for((rho.a, rho.b)))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for rho, rep in zip(todo, pool.map(_report_for, [(r.a, r.b) for r in todo])):
                store(rho, rep)

    order = [str(r) for r in rationals_up_to(max_sum)]
    failures = [k for k in order if not reports[k]["pass"]]
    return {
        "max_sum": max_sum,
        "count": len(order),
        "rhos": order,
        "reused": len(order) - len(todo),
        "failures": failures,
        "pass": not failures,
        "seconds": round(time.perf_counter() - t0, 3),
    }
