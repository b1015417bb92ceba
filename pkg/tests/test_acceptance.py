"""
Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (visible with ``-s`` or in
the captured output of a failure). Run the file directly for just the
summary lines::

    python tests/test_acceptance.py
"""

import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from kinfacade.bbbc import BbbcConfig, Candidate, Population, SearchSpace, crunch, optimize
from kinfacade.benchmarks import sphere
from kinfacade.cli import main as cli_main
from kinfacade.config import StudyConfig
from kinfacade.energy import oec_total
from kinfacade.facade import FOLD_LIMIT, FacadeLayout, decode, element_direct_block, encode, genotype_dims
from kinfacade.solar import SitePosition, clear_sky_irradiance, declination, sun_state
from kinfacade.study import compare_values, grid_search, run_baseline, run_kinetic, run_static
from kinfacade.weather import EpwFormatError, parse_epw, read_subset, synthesize_clear_sky, write_subset

sys.path.insert(0, str(Path(__file__).parent))
from epw_fixtures import HEADER, epw_row, epw_text, year_rows  # noqa: E402


def verdict(number, title, checks, elapsed=None, limit=None):
    """Print the criterion's line and return whether every check held."""
    failed = [name for name, ok in checks if not ok]
    if limit is not None and elapsed is not None and elapsed >= limit:
        failed.append(f"runtime {elapsed:.2f}s >= {limit}s")
    timing = "" if elapsed is None else f" ({elapsed:.2f}s)"
    status = "PASS" if not failed else "FAIL"
    detail = "" if not failed else " : " + "; ".join(failed)
    print(f"{status} criterion {number}: {title}{timing}{detail}")
    return not failed


def criterion_1():
    total = oec_total([0.630, 0.652, 0.658])
    c = compare_values(2.76, 2.02, total)
    return verdict(1, "interval sum and stage reductions", [
        ("oec_total == 1.940", total == 1.940),
        ("static reduction 26.8% +- 0.1", abs(c.static_vs_baseline_pct - 26.8) <= 0.1),
        ("kinetic vs static 3.96% +- 0.05", abs(c.kinetic_vs_static_pct - 3.96) <= 0.05),
        ("table shows both", "26.81%" in c.to_table() and "3.96%" in c.to_table()),
    ])


def criterion_2():
    t0 = time.perf_counter()
    best, _ = optimize(SearchSpace.uniform(2, -5, 5), sphere,
                       BbbcConfig(population_size=50, iterations=200, seed=0, elitism=True))
    dt = time.perf_counter() - t0
    return verdict(2, f"sphere benchmark best {best.fitness:.3e}",
                   [("best <= 1e-2", best.fitness <= 1e-2)], dt, 1.0)


def criterion_3():
    t0 = time.perf_counter()
    cfg = StudyConfig(window=((8, 10, 1), (8, 10, 24)), layout=FacadeLayout.uniform(1, 1, 1),
                      bbbc=BbbcConfig(population_size=50, iterations=100, seed=0))
    series = synthesize_clear_sky(month=8, days=(10, 10))
    found = run_static(cfg, series).oec
    oracle = run_static(cfg, series, search=grid_search(2001)).oec
    dt = time.perf_counter() - t0
    gap = (found - oracle) / oracle
    return verdict(3, f"one-element optimum vs 2001-point grid, gap {gap:+.2e}",
                   [("within 2%", found <= oracle * 1.02)], dt, 10.0)


def criterion_4():
    t0 = time.perf_counter()
    cfg = StudyConfig(layout=FacadeLayout.uniform(1, 1, 1))
    series = synthesize_clear_sky(month=8, days=(10, 12))
    grid = grid_search(11)
    per_day = run_kinetic(cfg, series, grid).oec
    fixed = run_static(cfg, series, grid).oec
    bare = run_baseline(cfg, series).oec
    dt = time.perf_counter() - t0
    return verdict(4, f"exhaustive dominance {per_day:.4f} <= {fixed:.4f} <= {bare:.4f}", [
        ("per-day <= fixed", per_day <= fixed),
        ("fixed <= bare", fixed <= bare),
    ], dt, 5.0)


def criterion_5():
    rng = np.random.default_rng(2024)
    hull = mean = True
    for _ in range(1000):
        n, d = rng.integers(1, 20), rng.integers(1, 6)
        x = rng.uniform(-100, 100, (n, d))
        f = rng.uniform(0, 10, n) * (rng.random(n) > 0.1)
        c = crunch(Population([Candidate(xi, float(fi)) for xi, fi in zip(x, f)]))
        lo, hi = x.min(axis=0), x.max(axis=0)
        slack = 1e-9 * np.maximum(np.abs(lo), np.abs(hi))
        hull &= bool(np.all(c >= lo - slack) and np.all(c <= hi + slack))
        same = Population([Candidate(xi, 0.7) for xi in x])
        mean &= bool(np.allclose(crunch(same), x.mean(axis=0), rtol=1e-9, atol=0))

    space = SearchSpace.uniform(3, -2, 2)
    monotone = closed = True
    for seed in range(100):
        seen = []

        def f(v):
            seen.append(v.copy())
            return sphere(v)

        _, trace = optimize(space, f, BbbcConfig(5, 20, seed=seed))
        monotone &= bool(np.all(np.diff(trace.best_so_far) <= 0))
        closed &= all(space.contains(v) for v in seen)

    cfg = BbbcConfig(6, 25, seed=31337)
    traces = [optimize(space, sphere, BbbcConfig(6, 25, seed=cfg.seed, workers=w))[1]
              for w in (1, 2, 4, 8)]
    identical = all(t == traces[0] and t.to_csv() == traces[0].to_csv() for t in traces)
    return verdict(5, "optimizer properties", [
        ("crunch inside convex hull", hull),
        ("equal-fitness crunch is the mean", mean),
        ("elitist best-so-far non-increasing", monotone),
        ("candidates inside bounds", closed),
        ("traces identical across worker counts", identical),
    ])


def criterion_6():
    rng = np.random.default_rng(6)
    r = rng.uniform(0, FOLD_LIMIT, 10**5)
    g = rng.uniform(-math.pi / 2 + 1e-9, math.pi / 2 - 1e-9, 10**5)
    b = element_direct_block(r, g)
    sweep = element_direct_block(np.linspace(0, FOLD_LIMIT, 10**4), 0.0)
    round_trip = True
    layout = FacadeLayout(2, 2, (1, 2, 3, 2))
    for _ in range(1000):
        v = rng.uniform(0.5, 1.57, genotype_dims(layout))
        round_trip &= bool(np.array_equal(encode(decode(v, layout)), v))
    return verdict(6, "facade geometry", [
        ("R=0 blocks fully", all(element_direct_block(0.0, x) == 1.0 for x in np.linspace(-1.5, 1.5, 31))),
        ("R=pi/2 at normal sun blocks nothing", abs(element_direct_block(math.pi / 2, 0.0)) <= 1e-15),
        ("clamped to [0, 1]", bool(b.min() >= 0.0 and b.max() <= 1.0)),
        ("monotone in R at normal sun", bool(np.all(np.diff(sweep) <= 0))),
        ("encode/decode round trip", round_trip),
    ])


def criterion_7():
    shiraz = SitePosition(29.56, 52.59, 3.5)
    deg = math.degrees
    rng = np.random.default_rng(7)
    symmetric = all(
        abs(sun_state(site, day, 12 - t).altitude - sun_state(site, day, 12 + t).altitude) <= 1e-9
        for site, day, t in ((SitePosition(rng.uniform(-89, 89), 0.0, 0.0), int(rng.integers(1, 366)),
                              rng.uniform(0, 12)) for _ in range(1000))
    )
    consistent = True
    for day in range(1, 366, 7):
        for hour in np.arange(0.0, 24.0, 0.25):
            sun = sun_state(shiraz, day, float(hour))
            dni, dhi = clear_sky_irradiance(sun)
            consistent &= (dni > 0 and dhi > 0) if sun.is_up else (dni == 0 and dhi == 0)
    return verdict(7, "solar geometry", [
        ("summer solstice +23.45", abs(deg(declination(172)) - 23.45) <= 0.5),
        ("winter solstice -23.45", abs(deg(declination(355)) + 23.45) <= 0.5),
        ("equinox ~0", abs(deg(declination(81))) <= 0.5),
        ("equinox noon altitude 90 - lat", abs(deg(sun_state(shiraz, 81, 12.0).altitude) - (90 - 29.56)) <= 0.5),
        ("hour symmetry", symmetric),
        ("irradiance zero exactly at night", consistent),
    ])


def criterion_8():
    year = parse_epw(epw_text(year_rows()))
    rows = parse_epw(epw_text([epw_row(8, 10, 12, 36.4, 845, 112),
                               epw_row(8, 10, 13, 99.9, 9999, 9999),
                               epw_row(8, 10, 14, 37.2, 790, 120)]))
    fields = (rows[0].stamp, rows[0].dry_bulb, rows[0].dni, rows[0].dhi) == ((8, 10, 12), 36.4, 845.0, 112.0)
    sentinels = (rows[1].dni, rows[1].dhi) == (0.0, 0.0) and abs(rows[1].dry_bulb - 36.8) <= 1e-9
    truncated = True
    for n in (0, 4, 7):
        try:
            parse_epw("\n".join(HEADER[:n]))
            truncated = False
        except EpwFormatError as exc:
            truncated &= f"{n} of 8 header lines" in str(exc)
    return verdict(8, "weather file ingestion", [
        ("year fixture has 8760 records", len(year) == 8760),
        ("fields extracted", fields),
        ("sentinels replaced", sentinels),
        ("subset round trip", read_subset(write_subset(year), year.site) == year),
        ("truncated header diagnosed", truncated),
    ])


def criterion_9(out_dir):
    t0 = time.perf_counter()
    code = cli_main(["optimize", "--mode", "kinetic", "--out", str(out_dir)])
    dt = time.perf_counter() - t0
    out = Path(out_dir)
    genotypes = sorted(out.glob("genotype_*.json"))
    traces = sorted(out.glob("trace_*.csv"))
    report = json.loads((out / "report.json").read_text()) if code == 0 else {"stages": []}
    oec = {s["stage"]: s["oec"] for s in report["stages"]}
    return verdict(9, "kinetic run end to end", [
        ("exit 0", code == 0),
        ("3 genotypes", len(genotypes) == 3),
        ("3 traces of 15 generations", len(traces) == 3
         and all(len(t.read_text().splitlines()) == 16 for t in traces)),
        ("kinetic <= baseline", oec.get("kinetic", math.inf) <= oec.get("baseline", -math.inf)),
    ], dt, 60.0)


def test_criterion_1_interval_arithmetic():
    assert criterion_1()


def test_criterion_2_sphere_benchmark():
    assert criterion_2()


def test_criterion_3_grid_oracle():
    assert criterion_3()


def test_criterion_4_exhaustive_dominance():
    assert criterion_4()


def test_criterion_5_optimizer_properties():
    assert criterion_5()


def test_criterion_6_facade_geometry():
    assert criterion_6()


def test_criterion_7_solar_geometry():
    assert criterion_7()


def test_criterion_8_weather_ingestion():
    assert criterion_8()


def test_criterion_9_end_to_end(tmp_path, capsys):
    ok = criterion_9(tmp_path / "kinetic")
    line = capsys.readouterr().out.splitlines()[-1]
    print(line)
    assert ok


if __name__ == "__main__":
    import contextlib
    import io
    import tempfile

    results = [criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(),
               criterion_6(), criterion_7(), criterion_8()]
    with tempfile.TemporaryDirectory() as tmp:
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            ok9 = criterion_9(Path(tmp) / "kinetic")
        print(buf.getvalue().splitlines()[-1])
        results.append(ok9)
    sys.exit(0 if all(results) else 1)
