"""Command-line entry point: ``kinfacade {baseline,optimize,bench,epw,report}``.

Exit codes: 0 success, 1 runtime or data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import __version__
from .bbbc import BbbcConfig, optimize
from .benchmarks import BENCHMARKS
from .config import ConfigError, StudyConfig, load_config, parse_stamp
from .study import (compare, load_series, run_baseline, run_kinetic, run_static,
                    study_report)
from .weather import EpwFormatError, WeatherRangeError, read_epw


class UsageError(Exception):
    pass


def _u64(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {value}")
    return value


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _study_config(args) -> StudyConfig:
    cfg = load_config(args.config) if args.config else StudyConfig()
    changes = {}
    if args.epw:
        changes["weather_source"] = args.epw
    start, end = cfg.window
    try:
        if args.from_:
            start = parse_stamp(args.from_)
        if args.to:
            end = parse_stamp(args.to)
    except ConfigError as exc:
        raise UsageError(f"--from/--to: {exc}") from None
    if start > end:
        raise UsageError(f"--from {args.from_ or start} is after --to {args.to or end}")
    changes["window"] = (start, end)
    if getattr(args, "seed", None) is not None:
        changes["bbbc"] = dataclasses.replace(cfg.bbbc, seed=args.seed)
    if getattr(args, "workers", None) is not None:
        changes["workers"] = args.workers
    return dataclasses.replace(cfg, **changes)


def _add_study_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="sectioned key-value config file")
    p.add_argument("--epw", help="EPW weather file (default: clear-sky synthesis)")
    p.add_argument("--from", dest="from_", metavar="MM-DD:HH", help="window start hour")
    p.add_argument("--to", metavar="MM-DD:HH", help="window end hour (inclusive)")


def cmd_baseline(args) -> int:
    cfg = _study_config(args)
    result = run_baseline(cfg)
    report = result.reports[0]
    if args.out:
        out = Path(args.out)
        _write(out, _dump(report.to_dict()))
        _write(out.with_suffix(".csv"), report.to_csv())
    print(f"baseline OEC: {result.oec:.6f} kWh/m2 over {len(report.hourly_loads)} hours")
    return 0


def cmd_optimize(args) -> int:
    cfg = _study_config(args)
    out = Path(args.out)
    series = load_series(cfg)
    baseline = run_baseline(cfg, series)
    if args.mode == "static":
        result = run_static(cfg, series)
        _write(out / "genotype.json", _dump(result.genotypes[0].to_dict()))
        _write(out / "trace.csv", result.traces[0].to_csv())
    else:
        result = run_kinetic(cfg, series)
        for i, (g, t) in enumerate(zip(result.genotypes, result.traces), start=1):
            _write(out / f"genotype_{i}.json", _dump(g.to_dict()))
            _write(out / f"trace_{i}.csv", t.to_csv())
    _write(out / "report.json", _dump(study_report(cfg, [baseline, result])))
    print(f"baseline OEC: {baseline.oec:.6f} kWh/m2")
    for i, v in enumerate(result.interval_oecs, start=1):
        print(f"  interval {i} OEC: {v:.6f} kWh/m2")
    print(f"{args.mode} OEC: {result.oec:.6f} kWh/m2")
    return 0


def cmd_report(args) -> int:
    cfg = _study_config(args)
    series = load_series(cfg)
    results = [run_baseline(cfg, series), run_static(cfg, series), run_kinetic(cfg, series)]
    comparison = compare(*results)
    if args.out:
        _write(Path(args.out), _dump(study_report(cfg, results)))
    print(comparison.to_table())
    return 0


def cmd_bench(args) -> int:
    bench = BENCHMARKS[args.function]
    if args.dims < 1:
        raise UsageError(f"--dims must be a positive integer, got {args.dims}")
    if args.check:
        x = bench.optimum(args.dims)
        print(f"{bench.name}({bench.argmin:g}, ...) = {bench.func(x):g}")
        return 0
    try:
        config = BbbcConfig(population_size=args.pop, iterations=args.iters, alpha=args.alpha,
                            seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    best, trace = optimize(bench.space(args.dims), bench.func, config)
    if args.out:
        _write(Path(args.out), trace.to_csv())
    print(f"best fitness: {best.fitness:.6e}")
    print("best position: " + " ".join(f"{v:.6g}" for v in best.position))
    return 0


def cmd_epw(args) -> int:
    series = read_epw(args.path)
    s = series.site
    temps = series.column("dry_bulb")
    print(f"site: latitude {s.latitude:g}, longitude {s.longitude:g}, UTC{s.timezone_offset:+g}")
    print(f"{len(series)} records")
    print(f"dry bulb: min {temps.min():.1f} C, max {temps.max():.1f} C")
    print(f"max dni: {series.column('dni').max():.1f} W/m2")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kinfacade",
        description="Big Bang-Big Crunch optimization of a kinetic facade.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("baseline", help="stage 1: bare facade energy")
    _add_study_flags(p)
    p.add_argument("--out", help="report JSON path; hourly CSV goes next to it")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("optimize", help="stage 2 (static) or stage 3 (kinetic) optimization")
    _add_study_flags(p)
    p.add_argument("--mode", choices=("static", "kinetic"), required=True)
    p.add_argument("--seed", type=_u64, help="master seed (default: config value, 0)")
    p.add_argument("--workers", type=int, help="parallel kinetic intervals")
    p.add_argument("--out", default="out", help="output directory (default: ./out)")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("report", help="run all three stages and print the comparison")
    _add_study_flags(p)
    p.add_argument("--seed", type=_u64)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", help="study report JSON path")
    p.set_defaults(func=cmd_report)

    optima = "\n".join("  " + b.describe() for b in BENCHMARKS.values())
    p = sub.add_parser(
        "bench", help="run the optimizer on a test function",
        description="Run the optimizer on a standard test function.",
        epilog="known optima:\n" + optima,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--function", choices=sorted(BENCHMARKS), required=True)
    p.add_argument("--dims", type=int, default=2)
    p.add_argument("--pop", type=int, default=50)
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--alpha", type=float, default=0.3)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--out", default="bench_trace.csv", help="trace CSV path ('' to skip)")
    p.add_argument("--check", action="store_true",
                   help="evaluate the function at its known optimum and exit")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("epw", help="EPW weather file tools")
    p.add_argument("action", choices=("inspect",))
    p.add_argument("path")
    p.set_defaults(func=cmd_epw)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits 2
    except (ConfigError, EpwFormatError, WeatherRangeError, ValueError, OSError) as exc:
        print(f"kinfacade: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
