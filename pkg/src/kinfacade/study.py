"""
Three-stage facade study: bare baseline, one static optimized skin, and a
kinetic skin re-optimized for every interval of the window.
"""

from __future__ import annotations

import dataclasses
import enum
import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .bbbc import BbbcConfig, Candidate, OptimizationTrace, SearchSpace, TraceRecord, optimize
from .config import ConfigError, StudyConfig, config_to_dict, format_stamp
from .energy import EnergyReport, WindowModel, oec_total
from .facade import FacadeGenotype, decode, genotype_dims
from .weather import WeatherRangeError, WeatherSeries, read_epw, synthesize_window

__all__ = [
    "Stage",
    "StageResult",
    "Comparison",
    "load_series",
    "run_baseline",
    "run_static",
    "run_kinetic",
    "grid_search",
    "interval_seed",
    "compare",
    "compare_values",
    "study_report",
]

SearchFn = Callable[[SearchSpace, Callable[[np.ndarray], float], BbbcConfig],
                    "tuple[Candidate, OptimizationTrace]"]


class Stage(enum.Enum):
    BASELINE = "baseline"
    STATIC = "static"
    KINETIC = "kinetic"


@dataclass(frozen=True, eq=False)
class StageResult:
    stage: Stage
    oec: float
    window: tuple
    genotypes: tuple[FacadeGenotype, ...] = ()
    traces: tuple[OptimizationTrace, ...] = ()
    interval_oecs: tuple[float, ...] = ()
    seeds: tuple[int, ...] = ()
    reports: tuple[EnergyReport, ...] = ()

    def __post_init__(self):
        expected = {Stage.BASELINE: 0, Stage.STATIC: 1}.get(self.stage)
        if expected is not None and len(self.genotypes) != expected:
            raise ValueError(f"{self.stage.value} stage carries {expected} genotype(s)")
        if self.stage is Stage.KINETIC and len(self.genotypes) != len(self.interval_oecs):
            raise ValueError("kinetic stage needs one genotype per interval")

    def __eq__(self, other):
        if not isinstance(other, StageResult):
            return NotImplemented
        return (self.stage is other.stage and self.oec == other.oec
                and self.window == other.window and self.genotypes == other.genotypes
                and self.traces == other.traces and self.interval_oecs == other.interval_oecs
                and self.seeds == other.seeds)

    def to_dict(self, baseline_oec: Optional[float] = None) -> dict:
        d = {
            "stage": self.stage.value,
            "oec": self.oec,
            "reduction_vs_baseline_pct": (
                None if baseline_oec is None else _reduction(baseline_oec, self.oec)
            ),
        }
        if self.stage is Stage.STATIC:
            d["genotype"] = self.genotypes[0].to_dict()
        elif self.stage is Stage.KINETIC:
            d["genotypes"] = [g.to_dict() for g in self.genotypes]
            d["interval_oecs"] = list(self.interval_oecs)
        if self.seeds:
            d["seeds"] = list(self.seeds)
        return d


def load_series(cfg: StudyConfig) -> WeatherSeries:
    """Weather for the configured window, from the EPW file or synthesized."""
    start, end = cfg.window
    if cfg.weather_source is None:
        return synthesize_window(cfg.site, start, end)
    return read_epw(cfg.weather_source).slice(start, end)


def interval_seed(master: int, index: int) -> int:
    """Seed of kinetic interval ``index``; interval 0 reuses the master seed."""
    return (master + index) % 2**64


def _objective(model: WindowModel, cfg: StudyConfig) -> Callable[[np.ndarray], float]:
    def objective(x: np.ndarray) -> float:
        return model.oec(decode(x, cfg.layout, cfg.bounds))

    return objective


def _search_space(cfg: StudyConfig) -> SearchSpace:
    return SearchSpace.uniform(genotype_dims(cfg.layout), *cfg.bounds)


def _series(cfg: StudyConfig, series: Optional[WeatherSeries]) -> WeatherSeries:
    if series is None:
        return load_series(cfg)
    start, end = cfg.window
    s = series.slice(start, end)
    if s.start != start or s.end != end:
        raise WeatherRangeError(
            f"series has no records at the window edges {format_stamp(start)}..{format_stamp(end)}"
        )
    return s


def run_baseline(cfg: StudyConfig, series: Optional[WeatherSeries] = None) -> StageResult:
    """Bare facade over the whole window."""
    s = _series(cfg, series)
    report = WindowModel(s, cfg.building, s.site).report(None)
    return StageResult(Stage.BASELINE, report.oec, cfg.window, reports=(report,))


def _optimize_window(cfg: StudyConfig, s: WeatherSeries, bbbc: BbbcConfig, search: SearchFn):
    model = WindowModel(s, cfg.building, s.site)
    best, trace = search(_search_space(cfg), _objective(model, cfg), bbbc)
    genotype = decode(best.position, cfg.layout, cfg.bounds)
    report = model.report(genotype)
    return genotype, trace, report


def run_static(cfg: StudyConfig, series: Optional[WeatherSeries] = None,
               search: SearchFn = optimize) -> StageResult:
    """One skin optimized for the whole window."""
    s = _series(cfg, series)
    genotype, trace, report = _optimize_window(cfg, s, cfg.bbbc, search)
    return StageResult(Stage.STATIC, report.oec, cfg.window, (genotype,), (trace,),
                       seeds=(cfg.bbbc.seed,), reports=(report,))


def run_kinetic(cfg: StudyConfig, series: Optional[WeatherSeries] = None,
                search: SearchFn = optimize) -> StageResult:
    """
    An independently optimized skin per ``cfg.kinetic_interval`` hours.

    The total is the sum of the per-interval optima. Intervals run on
    ``cfg.workers`` threads; results are merged in interval order.
    """
    s = _series(cfg, series)
    if len(s) < cfg.kinetic_interval or len(s) % cfg.kinetic_interval:
        raise ConfigError(
            f"window of {len(s)} hours does not split into whole "
            f"{cfg.kinetic_interval}-hour intervals"
        )
    parts = s.partition(cfg.kinetic_interval)
    seeds = tuple(interval_seed(cfg.bbbc.seed, i) for i in range(len(parts)))

    def run(i: int):
        bbbc = dataclasses.replace(cfg.bbbc, seed=seeds[i])
        return _optimize_window(cfg, parts[i], bbbc, search)

    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(run, range(len(parts))))
    else:
        results = [run(i) for i in range(len(parts))]

    genotypes, traces, reports = (tuple(col) for col in zip(*results))
    interval_oecs = tuple(r.oec for r in reports)
    return StageResult(Stage.KINETIC, oec_total(interval_oecs), cfg.window, genotypes, traces,
                       interval_oecs, seeds, reports)


def grid_search(points: int) -> SearchFn:
    """
    Exhaustive search over a regular grid of ``points`` values per dimension.

    Drop-in replacement for :func:`kinfacade.bbbc.optimize` on tiny
    instances; the returned trace holds a single record.
    """
    if points < 2:
        raise ValueError("grid needs at least two points per dimension")

    def search(space: SearchSpace, objective, config: BbbcConfig = None):
        axes = [np.linspace(lo, hi, points) for lo, hi in zip(space.lower, space.upper)]
        best = None
        for x in itertools.product(*axes):
            x = np.array(x)
            f = float(objective(x))
            if best is None or f < best.fitness:
                best = Candidate(x, f)
        trace = OptimizationTrace([TraceRecord(1, best.fitness, best.position, best.fitness)])
        return best, trace

    return search


def _reduction(reference: float, value: float) -> Optional[float]:
    if reference == 0:
        return 0.0 if value == 0 else None
    return (reference - value) / reference * 100.0


@dataclass(frozen=True)
class Comparison:
    baseline: float
    static: float
    kinetic: float
    window: Optional[tuple] = None

    @property
    def static_vs_baseline_pct(self) -> Optional[float]:
        return _reduction(self.baseline, self.static)

    @property
    def kinetic_vs_baseline_pct(self) -> Optional[float]:
        return _reduction(self.baseline, self.kinetic)

    @property
    def kinetic_vs_static_pct(self) -> Optional[float]:
        return _reduction(self.static, self.kinetic)

    def to_dict(self) -> dict:
        d = {
            "oec_kwh_m2": {"baseline": self.baseline, "static": self.static,
                           "kinetic": self.kinetic},
            "reduction_pct": {
                "static_vs_baseline": self.static_vs_baseline_pct,
                "kinetic_vs_baseline": self.kinetic_vs_baseline_pct,
                "kinetic_vs_static": self.kinetic_vs_static_pct,
            },
        }
        if self.window is not None:
            d["window"] = {"start": format_stamp(self.window[0]), "end": format_stamp(self.window[1])}
        return d

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def to_table(self) -> str:
        def pct(v):
            return "n/a" if v is None else f"{v:.2f}%"

        rows = [
            ("stage", "OEC [kWh/m2]", "vs baseline", "vs static"),
            ("baseline", f"{self.baseline:.3f}", "", ""),
            ("static", f"{self.static:.3f}", pct(self.static_vs_baseline_pct), ""),
            ("kinetic", f"{self.kinetic:.3f}", pct(self.kinetic_vs_baseline_pct),
             pct(self.kinetic_vs_static_pct)),
        ]
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        lines.insert(1, "  ".join("-" * w for w in widths))
        return "\n".join(lines)


def compare_values(baseline: float, static: float, kinetic: float) -> Comparison:
    return Comparison(float(baseline), float(static), float(kinetic))


def compare(baseline: StageResult, static: StageResult, kinetic: StageResult) -> Comparison:
    """Percentage reductions between the three stages of one study."""
    stages = (baseline.stage, static.stage, kinetic.stage)
    if stages != (Stage.BASELINE, Stage.STATIC, Stage.KINETIC):
        raise ValueError(f"expected baseline, static, kinetic results, got {stages}")
    if not baseline.window == static.window == kinetic.window:
        raise ValueError("stage results cover different windows")
    return Comparison(baseline.oec, static.oec, kinetic.oec, baseline.window)


def study_report(cfg: StudyConfig, results: Sequence[StageResult]) -> dict:
    """JSON-ready report: window, per-stage results, config echo and seeds."""
    baseline = next((r.oec for r in results if r.stage is Stage.BASELINE), None)
    for r in results:
        if r.window != cfg.window:
            raise ValueError(f"{r.stage.value} result covers a different window")
    report = {
        "window": {"start": format_stamp(cfg.window[0]), "end": format_stamp(cfg.window[1])},
        "stages": [r.to_dict(baseline) for r in results],
        "config": config_to_dict(cfg),
        "seeds": {r.stage.value: list(r.seeds) for r in results if r.seeds},
    }
    by_stage = {r.stage: r for r in results}
    if len(by_stage) == 3:
        report["comparison"] = compare(
            by_stage[Stage.BASELINE], by_stage[Stage.STATIC], by_stage[Stage.KINETIC]
        ).to_dict()
    return report
