"""
Big Bang-Big Crunch optimizer for bound-constrained real vectors.

The algorithm alternates two phases. The Big Crunch contracts an evaluated
population to its centre of mass, weighting every member by the inverse of
its fitness. The Big Bang scatters a fresh population around that centre
with a radius that shrinks as ``1 / (k + 1)``.

Nothing in here knows about facades; the objective is any callable mapping
a position array to a finite, non-negative float (lower is better).
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

__all__ = [
    "SearchSpace",
    "Candidate",
    "BbbcConfig",
    "Population",
    "TraceRecord",
    "OptimizationTrace",
    "EvaluationError",
    "EvaluationOrderError",
    "crunch",
    "bang",
    "bang_radius",
    "optimize",
]

_MAX_SEED = 2**64 - 1


class EvaluationError(ValueError):
    """Objective returned a value the optimizer cannot use."""

    def __init__(self, message: str, position: np.ndarray):
        super().__init__(message)
        self.position = np.array(position, dtype=float)


class EvaluationOrderError(RuntimeError):
    """A crunch was requested on a population with unevaluated members."""


@dataclass(frozen=True)
class SearchSpace:
    """Axis-aligned box ``lower <= x <= upper``."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float))
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise ValueError("lower and upper must be 1-D and of equal length")
        if lower.size == 0:
            raise ValueError("search space needs at least one dimension")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise ValueError("bounds must be finite")
        if np.any(lower >= upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def uniform(cls, dims: int, lower: float, upper: float) -> "SearchSpace":
        if dims < 1:
            raise ValueError(f"dims must be a positive integer, got {dims}")
        return cls(np.full(dims, float(lower)), np.full(dims, float(upper)))

    @property
    def dims(self) -> int:
        return int(self.lower.size)

    @property
    def span(self) -> np.ndarray:
        return self.upper - self.lower

    def clip(self, x: np.ndarray) -> np.ndarray:
        return np.minimum(np.maximum(x, self.lower), self.upper)

    def contains(self, x: np.ndarray) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


@dataclass(eq=False)
class Candidate:
    """A position in the search space and, once evaluated, its fitness."""

    position: np.ndarray
    fitness: Optional[float] = None

    @property
    def evaluated(self) -> bool:
        return self.fitness is not None


@dataclass(frozen=True)
class BbbcConfig:
    """
    Optimizer settings.

    Parameters
    ----------
    population_size : int
        Candidates generated per Big Bang.
    iterations : int
        Number of crunch/bang cycles after the initial random population.
    alpha : float
        Scales the explosion radius relative to the bound span.
    seed : int
        Seed of the random source, ``0 <= seed < 2**64``.
    elitism : bool
        Carry the best point found so far into every new population,
        replacing the worst offspring.
    fitness_floor : float
        Fitness values below this are raised to it before inversion.
    distribution : {"normal", "uniform"}
        Law of the per-dimension explosion draws. ``"uniform"`` samples
        from ``U(-1, 1)``.
    workers : int
        Threads used to evaluate a population. Results do not depend on it.
    """

    population_size: int = 3
    iterations: int = 15
    alpha: float = 0.3
    seed: int = 0
    elitism: bool = True
    fitness_floor: float = 1e-12
    distribution: str = "normal"
    workers: int = 1

    def __post_init__(self):
        if int(self.population_size) != self.population_size or self.population_size < 1:
            raise ValueError(f"population_size must be >= 1, got {self.population_size}")
        if int(self.iterations) != self.iterations or self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if not self.fitness_floor > 0:
            raise ValueError(f"fitness_floor must be > 0, got {self.fitness_floor}")
        if int(self.seed) != self.seed or not 0 <= self.seed <= _MAX_SEED:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.distribution not in ("normal", "uniform"):
            raise ValueError(f"unknown distribution {self.distribution!r}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass
class Population:
    members: list[Candidate]
    generation: int = 0

    def __len__(self) -> int:
        return len(self.members)

    @property
    def evaluated(self) -> bool:
        return all(m.evaluated for m in self.members)

    def best_index(self) -> int:
        # np.argmin keeps the lowest index on ties
        return int(np.argmin([m.fitness for m in self.members]))

    def worst_index(self) -> int:
        fit = np.array([m.fitness for m in self.members])
        # highest index among the worst, so elitism never displaces an earlier tie
        return int(fit.size - 1 - np.argmax(fit[::-1]))


@dataclass(frozen=True)
class TraceRecord:
    generation: int
    best_so_far: float
    center: np.ndarray
    population_best: float


@dataclass
class OptimizationTrace:
    """One record per crunch/bang cycle, in generation order."""

    records: list[TraceRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def best_so_far(self) -> np.ndarray:
        return np.array([r.best_so_far for r in self.records])

    @property
    def population_best(self) -> np.ndarray:
        return np.array([r.population_best for r in self.records])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["generation", "best_so_far", "population_best"])
        for r in self.records:
            writer.writerow([r.generation, repr(float(r.best_so_far)), repr(float(r.population_best))])
        return buf.getvalue()

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv())

    @classmethod
    def from_csv(cls, text: str) -> "OptimizationTrace":
        """Read a trace written by :meth:`to_csv`. Centres are not stored."""
        rows = list(csv.DictReader(io.StringIO(text)))
        return cls([
            TraceRecord(int(r["generation"]), float(r["best_so_far"]),
                        np.empty(0), float(r["population_best"]))
            for r in rows
        ])

    def __eq__(self, other) -> bool:
        if not isinstance(other, OptimizationTrace):
            return NotImplemented
        return len(self) == len(other) and all(
            a.generation == b.generation
            and a.best_so_far == b.best_so_far
            and a.population_best == b.population_best
            and np.array_equal(a.center, b.center)
            for a, b in zip(self.records, other.records)
        )


def crunch(pop: Population | Sequence[Candidate], fitness_floor: float = 1e-12) -> np.ndarray:
    """
    Inverse-fitness weighted centre of mass of an evaluated population.

    Each member contributes with weight ``1 / max(f_i, fitness_floor)``, so
    the result is a convex combination of the member positions.

    Raises
    ------
    ValueError
        If the population is empty.
    EvaluationOrderError
        If any member has not been evaluated yet.
    """
    members = pop.members if isinstance(pop, Population) else list(pop)
    if not members:
        raise ValueError("cannot crunch an empty population")
    if not all(m.evaluated for m in members):
        raise EvaluationOrderError("every member must be evaluated before the crunch")
    fitness = np.array([m.fitness for m in members], dtype=float)
    if not np.all(np.isfinite(fitness)) or np.any(fitness < 0):
        raise ValueError("fitness values must be finite and non-negative")
    positions = np.array([m.position for m in members], dtype=float)
    weights = 1.0 / np.maximum(fitness, fitness_floor)
    # dividing weights by their max first keeps huge 1/floor weights from overflowing
    weights = weights / weights.max()
    center = weights @ positions / weights.sum()
    # rounding can push a convex combination an ulp outside the hull
    return np.clip(center, positions.min(axis=0), positions.max(axis=0))


def bang_radius(space: SearchSpace, generation: int, alpha: float) -> np.ndarray:
    """Per-dimension explosion scale ``alpha * (upper - lower) / (k + 1)``."""
    if generation < 0:
        raise ValueError(f"generation must be >= 0, got {generation}")
    return alpha * space.span / (generation + 1)


def _draws(rng, count: int, dims: int, distribution: str) -> np.ndarray:
    if distribution == "normal":
        r = rng.standard_normal((count, dims))
    elif distribution == "uniform":
        r = rng.uniform(-1.0, 1.0, (count, dims))
    else:
        raise ValueError(f"unknown distribution {distribution!r}")
    return np.asarray(r, dtype=float).reshape(count, dims)


def bang(center, space: SearchSpace, generation: int, alpha: float, rng,
         count: int, distribution: str = "normal") -> list[Candidate]:
    """
    Scatter ``count`` unevaluated candidates around ``center``.

    ``position = clip(center + r * alpha * (upper - lower) / (k + 1))`` with an
    independent draw ``r`` per candidate and dimension. ``rng`` only needs a
    ``standard_normal(size)`` (or ``uniform(low, high, size)``) method.
    """
    center = np.asarray(center, dtype=float)
    if center.shape != (space.dims,):
        raise ValueError(f"center has shape {center.shape}, expected ({space.dims},)")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    radius = bang_radius(space, generation, alpha)
    r = _draws(rng, count, space.dims, distribution)
    positions = space.clip(center + r * radius)
    return [Candidate(p) for p in positions]


def _evaluate(objective: Callable[[np.ndarray], float], candidates: list[Candidate],
              executor: Optional[ThreadPoolExecutor]) -> None:
    pending = [c for c in candidates if not c.evaluated]
    # hand the objective a copy so it cannot mutate the stored position
    args = [c.position.copy() for c in pending]
    values = executor.map(objective, args) if executor else map(objective, args)
    for cand, value in zip(pending, values):
        try:
            value = float(value)
        except (TypeError, ValueError):
            raise EvaluationError(f"objective returned non-numeric {value!r}", cand.position)
        if not math.isfinite(value):
            raise EvaluationError(f"objective returned non-finite value {value}", cand.position)
        if value < 0:
            raise EvaluationError(
                f"objective returned {value} < 0; shift the objective so its minimum is >= 0",
                cand.position,
            )
        cand.fitness = value


def optimize(space: SearchSpace, objective: Callable[[np.ndarray], float],
             config: BbbcConfig = BbbcConfig()) -> tuple[Candidate, OptimizationTrace]:
    """
    Minimize ``objective`` over ``space``.

    A uniform random population is drawn and evaluated, then
    ``config.iterations`` cycles of crunch, bang and evaluation follow. With
    elitism the incumbent best replaces the worst offspring of every cycle.

    Returns
    -------
    best : Candidate
        Best point evaluated during the run (earliest one on ties).
    trace : OptimizationTrace
        ``config.iterations`` records, generations numbered from 1.

    Raises
    ------
    EvaluationError
        If the objective returns a non-finite or negative value.
    """
    rng = np.random.default_rng(config.seed)
    n = config.population_size
    init = rng.uniform(space.lower, space.upper, (n, space.dims))
    pop = Population([Candidate(space.clip(p)) for p in init], generation=0)

    executor = ThreadPoolExecutor(config.workers) if config.workers > 1 else None
    try:
        _evaluate(objective, pop.members, executor)
        best = pop.members[pop.best_index()]
        trace = OptimizationTrace()
        for k in range(config.iterations):
            center = crunch(pop, config.fitness_floor)
            offspring = bang(center, space, k, config.alpha, rng, n, config.distribution)
            _evaluate(objective, offspring, executor)
            pop = Population(offspring, generation=k + 1)
            pop_best = pop.members[pop.best_index()]
            if pop_best.fitness < best.fitness:
                best = pop_best
            if config.elitism and not any(m is best for m in pop.members):
                pop.members[pop.worst_index()] = Candidate(best.position.copy(), best.fitness)
            trace.records.append(TraceRecord(k + 1, best.fitness, center, pop_best.fitness))
    finally:
        if executor is not None:
            executor.shutdown()
    return Candidate(best.position.copy(), best.fitness), trace
