"""
Big Bang-Big Crunch on a sphere
===============================

A population is scattered over the box, pulled in to its fitness-weighted
centre of mass, then re-scattered around that centre with a radius that
shrinks every generation.
"""

import numpy as np

from kinfacade import BbbcConfig, SearchSpace, optimize
from kinfacade.benchmarks import BENCHMARKS

# a 2-d sphere on [-5, 5]^2, minimum 0 at the origin
bench = BENCHMARKS["sphere"]
space = bench.space(2)
config = BbbcConfig(population_size=50, iterations=200, alpha=0.3, seed=0)
best, trace = optimize(space, bench.func, config)

print("best fitness", best.fitness)
print("best position", best.position)

# the elitist best never gets worse; look at a few generations
for k in (1, 10, 50, 200):
    print(f"generation {k:3d}: best so far {trace.best_so_far[k - 1]:.3e}")

# the bang radius at generation k is alpha * span / (k + 1)
span = space.span[0]
print("radius at k=0 and k=199:", 0.3 * span, 0.3 * span / 200)

# rastrigin is multimodal; a larger population helps
rastrigin = BENCHMARKS["rastrigin"]
best, _ = optimize(rastrigin.space(2), rastrigin.func, BbbcConfig(100, 300, seed=1))
print("rastrigin best", best.fitness, np.round(best.position, 3))

# same seed, same trace, whatever the thread count
a = optimize(space, bench.func, BbbcConfig(10, 30, seed=7))[1]
b = optimize(space, bench.func, BbbcConfig(10, 30, seed=7, workers=4))[1]
print("identical traces:", a == b)

# a search space need not be a cube
box = SearchSpace([0.5, -1.0], [1.57, 1.0])
print("span", box.span)
