"""Phase timings for the native operator and the comparison approaches.

Config files use INI syntax with a single ``[bench]`` section::

    [bench]
    approaches = native, nested, nested_indexed, sorted_stream, traditional
    axis = events_via_merge          # or activities_via_relabel
    points = 100000, 200000, 500000  # target events (or activities) per point
    seed = 42
    repetitions = 3
    base_cases = 1
    base_activities = 30
    base_len = 100

For ``events_via_merge`` every case of the base log is repeated
``round(point / base_events)`` times; for ``activities_via_relabel`` the
activities are split into ``round(point / base_activities)`` partitions.
"""

from __future__ import annotations

import configparser
import csv
import gc
import logging
import math
import os
import statistics
import tempfile
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .baselines import FlatTable, nested_join_dfr, nested_join_dfr_indexed, sort_stage, stream_stage
from .core import directly_follows
from .dfg import assemble_dfg, boundary_counts
from .ingest import read_csv, write_csv
from .model import Dfr, EventLog, dfr_to_rows
from .synth import gen_merge_cases, gen_relabel, synth_base_log

logger = logging.getLogger(__name__)

APPROACHES = ("native", "nested", "nested_indexed", "sorted_stream", "traditional")
AXES = ("events_via_merge", "activities_via_relabel")
REPORT_COLUMNS = (
    "approach",
    "axis",
    "size",
    "events",
    "activities",
    "abstraction_s",
    "retrieval_rows",
    "retrieval_s",
    "dfg_s",
    "export_s",
    "conversion_s",
)


class BenchError(RuntimeError):
    pass


@dataclass(frozen=True)
class BenchConfig:
    approaches: tuple[str, ...] = ("native",)
    axis: str = "events_via_merge"
    points: tuple[int, ...] = (1000,)
    seed: int = 42
    repetitions: int = 3
    base_cases: int = 1
    base_activities: int = 30
    base_len: int = 100

    def __post_init__(self):
        unknown = set(self.approaches) - set(APPROACHES)
        if unknown or not self.approaches:
            raise ValueError(f"approaches must be a non-empty subset of {APPROACHES}, got {self.approaches}")
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not self.points or any(p < 1 for p in self.points):
            raise ValueError("scale points must be positive integers")
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise ValueError(f"scale points must be strictly increasing, got {self.points}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if min(self.base_cases, self.base_activities, self.base_len) < 1:
            raise ValueError("base log parameters must be >= 1")


def load_config(path: str | os.PathLike) -> BenchConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh)
    if not parser.has_section("bench"):
        raise ValueError(f"{os.fspath(path)}: missing [bench] section")
    sec = parser["bench"]
    known = {"approaches", "axis", "points", "seed", "repetitions", "base_cases", "base_activities", "base_len"}
    extra = set(sec) - known
    if extra:
        raise ValueError(f"{os.fspath(path)}: unknown keys {sorted(extra)}")

    def ints(text: str) -> tuple[int, ...]:
        return tuple(int(float(x)) for x in text.replace(",", " ").split())

    kw: dict = {}
    if "approaches" in sec:
        kw["approaches"] = tuple(a.strip().replace("-", "_") for a in sec["approaches"].split(",") if a.strip())
    if "axis" in sec:
        kw["axis"] = sec["axis"].strip()
    if "points" in sec:
        kw["points"] = ints(sec["points"])
    for key in ("seed", "repetitions", "base_cases", "base_activities", "base_len"):
        if key in sec:
            kw[key] = sec.getint(key)
    return BenchConfig(**kw)


@dataclass
class BenchRow:
    approach: str
    axis: str
    size: int
    events: int
    activities: int
    abstraction_s: float | None = None
    retrieval_rows: int | None = None
    retrieval_s: float | None = None
    dfg_s: float | None = None
    export_s: float | None = None
    conversion_s: float | None = None
    failed: bool = False

    @property
    def total_s(self) -> float:
        parts = (self.abstraction_s, self.retrieval_s, self.dfg_s, self.export_s, self.conversion_s)
        return sum(p for p in parts if p is not None)


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    r_squared: float


@dataclass
class BenchReport:
    config: BenchConfig
    rows: list[BenchRow] = field(default_factory=list)
    slopes: dict[str, SlopeFit] = field(default_factory=dict)

    def rows_for(self, approach: str) -> list[BenchRow]:
        return [r for r in self.rows if r.approach == approach]


def fit_slope(points: Sequence[tuple[float, float]]) -> SlopeFit:
    """Least-squares fit of log(seconds) against log(size)."""
    if len(points) < 4:
        raise ValueError(f"need at least 4 points, got {len(points)}")
    if any(s <= 0 or t <= 0 for s, t in points):
        raise ValueError("sizes and times must be positive")
    x = np.log([s for s, _ in points])
    y = np.log([t for _, t in points])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return SlopeFit(float(slope), float(intercept), r2)


def _timed(fn: Callable, *args):
    # collector pauses would otherwise land on whichever phase allocates most
    enabled = gc.isenabled()
    gc.disable()
    try:
        t0 = time.perf_counter()
        out = fn(*args)
        return out, time.perf_counter() - t0
    finally:
        if enabled:
            gc.enable()


def _dfg_phase(rows, source: EventLog) -> None:
    starts, ends = boundary_counts(source)
    assemble_dfg(Dfr({(a, b): f for a, b, f in rows}), (), starts, ends)


def run_once(approach: str, source: EventLog, workdir: str) -> tuple[Dfr, dict]:
    """One pass of an approach over a log; returns its DFR and phase measurements."""
    m: dict = {}
    if approach == "traditional":
        path = os.path.join(workdir, "export.csv")
        _, m["export_s"] = _timed(write_csv, source, path)
        loaded, m["conversion_s"] = _timed(read_csv, path)
        dfr, m["abstraction_s"] = _timed(directly_follows, loaded)
        rows = dfr_to_rows(dfr)
        m["retrieval_rows"], m["retrieval_s"] = 0, 0.0
        _, m["dfg_s"] = _timed(_dfg_phase, rows, loaded)
        return dfr, m

    if approach == "sorted_stream":
        table = FlatTable.from_log(source)
        ordered, m["abstraction_s"] = _timed(sort_stage, table)
        (dfr, transferred), m["retrieval_s"] = _timed(stream_stage, ordered)
        m["retrieval_rows"] = transferred
        _, m["dfg_s"] = _timed(_dfg_phase, dfr_to_rows(dfr), source)
        return dfr, m

    if approach == "native":
        dfr, m["abstraction_s"] = _timed(directly_follows, source)
    elif approach == "nested":
        dfr, m["abstraction_s"] = _timed(nested_join_dfr, FlatTable.from_log(source))
    elif approach == "nested_indexed":
        dfr, m["abstraction_s"] = _timed(nested_join_dfr_indexed, FlatTable.from_log(source).with_index())
    else:
        raise ValueError(f"unknown approach {approach!r}")
    rows, m["retrieval_s"] = _timed(dfr_to_rows, dfr)
    m["retrieval_rows"] = len(rows)
    _, m["dfg_s"] = _timed(_dfg_phase, rows, source)
    return dfr, m


def scaled_log(cfg: BenchConfig, base: EventLog, size: int) -> EventLog:
    if cfg.axis == "events_via_merge":
        return gen_merge_cases(base, max(1, round(size / base.n_events)))
    return gen_relabel(base, max(1, round(size / len(base.activities()))))


def run_bench(cfg: BenchConfig) -> BenchReport:
    """Time every approach at every scale point.

    Each point runs a discarded warm-up for approaches not yet exercised, then
    ``repetitions`` measured passes whose median is reported. Before timings
    are kept, all approaches must agree on the DFR at that point. A point that
    runs out of memory is recorded as failed and the run continues.
    """
    base = synth_base_log(cfg.seed, cfg.base_cases, cfg.base_activities, cfg.base_len, fixed_len=True)
    report = BenchReport(cfg)
    warmed: set[str] = set()
    with tempfile.TemporaryDirectory(prefix="dflog-bench-") as workdir:
        for size in cfg.points:
            try:
                scaled = scaled_log(cfg, base, size)
            except MemoryError:
                logger.warning("out of memory generating point %d", size)
                for a in cfg.approaches:
                    report.rows.append(BenchRow(a, cfg.axis, size, 0, 0, failed=True))
                continue
            n_events, n_acts = scaled.n_events, len(scaled.activities())
            reference: Dfr | None = None
            for approach in cfg.approaches:
                row = BenchRow(approach, cfg.axis, size, n_events, n_acts)
                try:
                    if approach not in warmed:
                        run_once(approach, scaled, workdir)
                        warmed.add(approach)
                    runs = [run_once(approach, scaled, workdir) for _ in range(cfg.repetitions)]
                except MemoryError:
                    logger.warning("%s ran out of memory at point %d", approach, size)
                    row.failed = True
                    report.rows.append(row)
                    continue
                dfr = runs[0][0]
                if reference is None:
                    reference = dfr
                elif dfr != reference:
                    raise BenchError(f"{approach} disagrees with {cfg.approaches[0]} at point {size}")
                for key in ("abstraction_s", "retrieval_s", "dfg_s", "export_s", "conversion_s"):
                    if key in runs[0][1]:
                        setattr(row, key, statistics.median(r[1][key] for r in runs))
                row.retrieval_rows = runs[0][1]["retrieval_rows"]
                logger.info("%s size=%d events=%d abstraction=%.4fs", approach, size, n_events, row.abstraction_s)
                report.rows.append(row)
            del scaled

    for approach in cfg.approaches:
        pts = [
            (r.events if cfg.axis == "events_via_merge" else r.activities, r.abstraction_s)
            for r in report.rows_for(approach)
            if not r.failed and r.abstraction_s
        ]
        if len(pts) >= 4:
            report.slopes[approach] = fit_slope(pts)
    return report


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def write_report_csv(report: BenchReport, path: str | os.PathLike) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(REPORT_COLUMNS)
        for r in report.rows:
            w.writerow([_fmt(getattr(r, c)) for c in REPORT_COLUMNS])


def summarize(report: BenchReport) -> str:
    lines = []
    for approach in report.config.approaches:
        rows = report.rows_for(approach)
        ok = [r for r in rows if not r.failed]
        line = f"{approach}: {len(ok)}/{len(rows)} points"
        fit = report.slopes.get(approach)
        if fit is not None:
            line += f", log-log slope {fit.slope:.2f} (r2 {fit.r_squared:.3f})"
        if approach == "traditional" and ok:
            top = ok[-1]
            share = (top.export_s + top.conversion_s) / top.total_s if top.total_s else math.nan
            line += f", export+conversion {share:.1%} of pipeline at {top.events} events"
        lines.append(line)
    return "\n".join(lines)
