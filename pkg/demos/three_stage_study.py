"""
Bare, static and kinetic skins
==============================

The same three August days are scored three ways: without a second skin,
with one skin optimized for the whole window, and with a skin
re-optimized every day.
"""

import dataclasses

from kinfacade import BbbcConfig, FacadeGenotype, StudyConfig
from kinfacade.energy import evaluate_oec
from kinfacade.study import compare, load_series, run_baseline, run_kinetic, run_static, study_report

# defaults: clear-sky weather for Aug 10-12 in Shiraz, 256 fold angles in [0.50, 1.57]
cfg = StudyConfig(bbbc=BbbcConfig(population_size=3, iterations=15, alpha=0.3, seed=0))

baseline = run_baseline(cfg)
static = run_static(cfg)
kinetic = run_kinetic(cfg)

print(compare(baseline, static, kinetic).to_table())
print("per-day kinetic OEC", [round(v, 4) for v in kinetic.interval_oecs])

# the model has no daylight term, so the most-closed skin is the floor
closed = FacadeGenotype.constant(cfg.layout, cfg.bounds[0], cfg.bounds)
print("all panels at the lower bound:", round(evaluate_oec(load_series(cfg), closed).oec, 4))

# more search effort moves the static skin toward that floor
better = dataclasses.replace(cfg, bbbc=BbbcConfig(population_size=20, iterations=60, seed=0))
print("static with 20 x 60:", round(run_static(better).oec, 4))

# the JSON report echoes the config, so a run can be repeated from it
report = study_report(cfg, [baseline, static, kinetic])
print(sorted(report))
