"""Standard test functions for exercising the optimizer.

All three have a global minimum of 0, so they satisfy the optimizer's
non-negative objective contract without shifting. :func:`shifted` covers
functions whose minimum is known but non-zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bbbc import SearchSpace


def sphere(x):
    x = np.asarray(x, dtype=float)
    return float(np.sum(x**2))


def rastrigin(x):
    x = np.asarray(x, dtype=float)
    return float(10.0 * x.size + np.sum(x**2 - 10.0 * np.cos(2.0 * np.pi * x)))


def rosenbrock(x):
    x = np.asarray(x, dtype=float)
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))


def shifted(func: Callable[[np.ndarray], float], minimum: float) -> Callable[[np.ndarray], float]:
    """Wrap ``func`` so its known ``minimum`` maps to 0."""

    def wrapped(x):
        # rounding may dip a hair below the known minimum
        return max(0.0, func(x) - minimum)

    wrapped.__name__ = getattr(func, "__name__", "shifted")
    return wrapped


@dataclass(frozen=True)
class Benchmark:
    name: str
    func: Callable[[np.ndarray], float]
    lower: float
    upper: float
    argmin: float  # the optimum sits at this value in every coordinate
    minimum: float = 0.0

    def space(self, dims: int) -> SearchSpace:
        return SearchSpace.uniform(dims, self.lower, self.upper)

    def optimum(self, dims: int) -> np.ndarray:
        return np.full(dims, self.argmin)

    def describe(self) -> str:
        return (f"{self.name}: f(x*)={self.minimum:g} at x*={self.argmin:g} in every "
                f"coordinate, bounds [{self.lower:g}, {self.upper:g}]")


BENCHMARKS: dict[str, Benchmark] = {
    "sphere": Benchmark("sphere", sphere, -5.0, 5.0, 0.0),
    "rastrigin": Benchmark("rastrigin", rastrigin, -5.12, 5.12, 0.0),
    "rosenbrock": Benchmark("rosenbrock", rosenbrock, -5.0, 10.0, 1.0),
}
