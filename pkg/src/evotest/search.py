"""Metaheuristic search over fixed-length integer input vectors.

All algorithms minimize a non-negative cost function under a budget of
cost evaluations, counted centrally so no algorithm can exceed it, and
stop early when a zero-cost vector is found. Each algorithm draws from
its own named random stream derived from (algorithm name, seed), so
identical (problem, config, seed) always reproduces the identical
result, and adding one algorithm never perturbs another's sequence.

History semantics: the population-based GA records the best cost in the
current population once per generation (non-increasing when elitism is
on); the point-based algorithms record the best cost seen so far once
per evaluation.
"""

from __future__ import annotations

import math
import random
import time
from collections import deque
from dataclasses import dataclass
from typing import Callable, Sequence


class SearchError(Exception):
    pass


@dataclass(frozen=True)
class Problem:
    """A search space (per-gene inclusive bounds) plus a cost function.

    Success is cost == 0. The cost callable must be reentrant; it is
    called with a tuple of ints and must return a non-negative number.
    """

    ranges: tuple[tuple[int, int], ...]
    cost: Callable[[tuple[int, ...]], float]

    def __post_init__(self) -> None:
        if len(self.ranges) < 1:
            raise SearchError("problem needs at least one gene")
        for low, high in self.ranges:
            if low > high:
                raise SearchError(f"empty gene range [{low}, {high}]")

    @property
    def dimension(self) -> int:
        return len(self.ranges)


@dataclass(frozen=True)
class Individual:
    genes: tuple[int, ...]
    cost: float


@dataclass(frozen=True)
class SearchResult:
    best: Individual
    evaluations_used: int
    success: bool
    seed: int
    wall_time: float
    history: tuple[float, ...]


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 20
    max_generations: int | None = None  # None: run until success or budget
    crossover_probability: float = 0.9
    mutation_probability: float | None = None  # None: 1 / dimension
    tournament_size: int = 2
    elitism: int = 1

    def __post_init__(self) -> None:
        if self.population_size < 2:
            raise SearchError("population_size must be >= 2")
        if not 0 <= self.elitism < self.population_size:
            raise SearchError("elitism must be in [0, population_size)")
        if not 0.0 <= self.crossover_probability <= 1.0:
            raise SearchError("crossover_probability must be in [0, 1]")
        if self.mutation_probability is not None and not 0.0 <= self.mutation_probability <= 1.0:
            raise SearchError("mutation_probability must be in [0, 1]")
        if self.tournament_size < 1:
            raise SearchError("tournament_size must be >= 1")


@dataclass(frozen=True)
class SaSchedule:
    initial_temperature: float = 100.0
    cooling: float = 0.95
    floor: float = 1e-9

    def __post_init__(self) -> None:
        if self.initial_temperature <= 0:
            raise SearchError("initial temperature must be > 0")
        if not 0.0 < self.cooling < 1.0:
            raise SearchError("cooling factor must be in (0, 1)")
        if self.floor <= 0:
            raise SearchError("temperature floor must be > 0")


HILL_CLIMB_STEPS = (1, 10, 100)


def _stream(name: str, seed: int) -> random.Random:
    # String seeding is hash-independent and stable across processes.
    return random.Random(f"{name}:{seed}")


def _random_point(rng: random.Random, problem: Problem) -> tuple[int, ...]:
    return tuple(rng.randint(low, high) for low, high in problem.ranges)


class _StopSearch(Exception):
    pass


class _Run:
    """Central evaluation counter: enforces the budget, tracks the best
    individual (earliest wins ties), and stops the search at cost 0."""

    def __init__(self, problem: Problem, budget: int, auto_history: bool):
        if budget < 1:
            raise SearchError("budget must be >= 1")
        self.problem = problem
        self.budget = budget
        self.auto_history = auto_history
        self.evaluations = 0
        self.best: Individual | None = None
        self.history: list[float] = []
        self.started = time.perf_counter()

    def evaluate(self, genes: tuple[int, ...]) -> Individual:
        if self.evaluations >= self.budget:
            raise _StopSearch()
        self.evaluations += 1
        individual = Individual(genes=genes, cost=float(self.problem.cost(genes)))
        if self.best is None or individual.cost < self.best.cost:
            self.best = individual
        if self.auto_history:
            self.history.append(self.best.cost)
        if individual.cost == 0.0:
            raise _StopSearch()
        return individual

    def result(self, seed: int) -> SearchResult:
        assert self.best is not None
        return SearchResult(
            best=self.best,
            evaluations_used=self.evaluations,
            success=self.best.cost == 0.0,
            seed=seed,
            wall_time=time.perf_counter() - self.started,
            history=tuple(self.history),
        )


# ---------------------------------------------------------------------------
# Operators
# ---------------------------------------------------------------------------


def crossover(
    parent_a: Sequence[int], parent_b: Sequence[int], cut_point: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Single-point crossover; children swap gene tails at the cut."""
    a = tuple(parent_a)
    b = tuple(parent_b)
    if len(a) != len(b):
        raise SearchError("parents must have equal length")
    if not 1 <= cut_point < len(a):
        raise SearchError(f"cut point {cut_point} not in [1, {len(a) - 1}]")
    return a[:cut_point] + b[cut_point:], b[:cut_point] + a[cut_point:]


def mutate_genes(
    genes: Sequence[int],
    ranges: Sequence[tuple[int, int]],
    pm: float,
    rng: random.Random,
) -> tuple[int, ...]:
    out = list(genes)
    for i, (low, high) in enumerate(ranges):
        if rng.random() < pm:
            out[i] = rng.randint(low, high)
    return tuple(out)


def mutate(
    genes: Sequence[int], ranges: Sequence[tuple[int, int]], pm: float, seed: int
) -> tuple[int, ...]:
    """Reset mutation: each gene redrawn uniformly with probability pm."""
    if not 0.0 <= pm <= 1.0:
        raise SearchError("mutation probability must be in [0, 1]")
    return mutate_genes(genes, ranges, pm, _stream("mutate", seed))


# ---------------------------------------------------------------------------
# Algorithms
# ---------------------------------------------------------------------------


def random_search(problem: Problem, budget: int, seed: int) -> SearchResult:
    """Uniform independent sampling of the search space."""
    rng = _stream("random", seed)
    run = _Run(problem, budget, auto_history=True)
    try:
        while True:
            run.evaluate(_random_point(rng, problem))
    except _StopSearch:
        pass
    return run.result(seed)


def hill_climb(
    problem: Problem,
    budget: int,
    seed: int,
    steps: tuple[int, ...] = HILL_CLIMB_STEPS,
) -> SearchResult:
    """First-improvement hill climbing with multi-scale steps and random
    restarts at local optima."""
    rng = _stream("hill-climb", seed)
    run = _Run(problem, budget, auto_history=True)
    try:
        while True:
            current = run.evaluate(_random_point(rng, problem))
            improved = True
            while improved:
                improved = False
                for step in steps:
                    for i in range(problem.dimension):
                        for delta in (step, -step):
                            value = current.genes[i] + delta
                            low, high = problem.ranges[i]
                            if not low <= value <= high:
                                continue
                            candidate = run.evaluate(
                                current.genes[:i] + (value,) + current.genes[i + 1 :]
                            )
                            if candidate.cost < current.cost:
                                current = candidate
                                improved = True
                                break
                        if improved:
                            break
                    if improved:
                        break
            # No strictly better neighbor: restart from a fresh point.
    except _StopSearch:
        pass
    return run.result(seed)


def acceptance_probability(delta: float, temperature: float) -> float:
    """Metropolis rule: 1 for non-worsening moves, exp(-delta/T) otherwise."""
    if temperature <= 0:
        raise SearchError("temperature must be > 0")
    if delta <= 0:
        return 1.0
    return math.exp(-delta / temperature)


def simulated_annealing(
    problem: Problem,
    schedule: SaSchedule,
    budget: int,
    seed: int,
) -> SearchResult:
    """Single-gene perturbation with Metropolis acceptance and geometric
    cooling floored at schedule.floor."""
    rng = _stream("annealing", seed)
    run = _Run(problem, budget, auto_history=True)
    temperature = schedule.initial_temperature
    try:
        current = run.evaluate(_random_point(rng, problem))
        while True:
            i = rng.randrange(problem.dimension)
            low, high = problem.ranges[i]
            delta_value = rng.choice((1, -1)) * rng.choice(HILL_CLIMB_STEPS)
            value = min(high, max(low, current.genes[i] + delta_value))
            candidate = run.evaluate(current.genes[:i] + (value,) + current.genes[i + 1 :])
            delta = candidate.cost - current.cost
            if rng.random() < acceptance_probability(delta, temperature):
                current = candidate
            temperature = max(schedule.floor, temperature * schedule.cooling)
    except _StopSearch:
        pass
    return run.result(seed)


def tabu_search(
    problem: Problem,
    tenure: int,
    budget: int,
    seed: int,
    visit_log: list | None = None,
) -> SearchResult:
    """Best-admissible neighborhood walk with a FIFO move tabu list.

    Moves are (gene index, signed delta); taking a move makes its
    reverse tabu for ``tenure`` steps, which forbids immediate returns.
    A tabu move is still admissible when it improves the global best
    (aspiration). With no admissible neighbor the walk restarts from a
    random point with a cleared list. ``visit_log``, when given, gets
    one dict per accepted point (diagnostic hook for tests).
    """
    if tenure < 1:
        raise SearchError("tenure must be >= 1")
    rng = _stream("tabu", seed)
    run = _Run(problem, budget, auto_history=True)
    try:
        while True:
            current = run.evaluate(_random_point(rng, problem))
            tabu: deque[tuple[int, int]] = deque(maxlen=tenure)
            if visit_log is not None:
                visit_log.append(
                    {"point": current.genes, "move": None, "tabu": False, "aspired": False}
                )
            while True:
                assert len(tabu) <= tenure  # FIFO bound
                best_before = run.best.cost if run.best is not None else math.inf
                chosen: Individual | None = None
                chosen_move: tuple[int, int] | None = None
                chosen_tabu = False
                for step in HILL_CLIMB_STEPS:
                    for i in range(problem.dimension):
                        for delta in (step, -step):
                            value = current.genes[i] + delta
                            low, high = problem.ranges[i]
                            if not low <= value <= high:
                                continue
                            move = (i, delta)
                            candidate = run.evaluate(
                                current.genes[:i] + (value,) + current.genes[i + 1 :]
                            )
                            is_tabu = move in tabu
                            if is_tabu and not candidate.cost < best_before:
                                continue  # tabu and no aspiration
                            if chosen is None or candidate.cost < chosen.cost:
                                chosen = candidate
                                chosen_move = move
                                chosen_tabu = is_tabu
                if chosen is None:
                    break  # nowhere admissible: restart
                current = chosen
                gene, delta = chosen_move
                tabu.append((gene, -delta))
                if visit_log is not None:
                    visit_log.append(
                        {
                            "point": current.genes,
                            "move": chosen_move,
                            "tabu": chosen_tabu,
                            "aspired": chosen_tabu,
                        }
                    )
    except _StopSearch:
        pass
    return run.result(seed)


def genetic_algorithm(
    problem: Problem,
    config: GaConfig,
    budget: int,
    seed: int,
) -> SearchResult:
    """Generational GA: random initial pool, tournament selection,
    single-point crossover, per-gene reset mutation, elitism."""
    rng = _stream("ga", seed)
    run = _Run(problem, budget, auto_history=False)
    pm = (
        config.mutation_probability
        if config.mutation_probability is not None
        else 1.0 / problem.dimension
    )
    try:
        population = [
            run.evaluate(_random_point(rng, problem)) for _ in range(config.population_size)
        ]
        run.history.append(min(ind.cost for ind in population))
        generation = 0
        while config.max_generations is None or generation < config.max_generations:
            order = sorted(range(len(population)), key=lambda idx: (population[idx].cost, idx))
            next_population: list[Individual] = [
                population[idx] for idx in order[: config.elitism]
            ]
            while len(next_population) < config.population_size:
                parent_a = _tournament(rng, population, config.tournament_size)
                parent_b = _tournament(rng, population, config.tournament_size)
                genes_a, genes_b = parent_a.genes, parent_b.genes
                if problem.dimension > 1 and rng.random() < config.crossover_probability:
                    cut = rng.randint(1, problem.dimension - 1)
                    genes_a, genes_b = crossover(genes_a, genes_b, cut)
                for child in (genes_a, genes_b):
                    if len(next_population) >= config.population_size:
                        break
                    next_population.append(
                        run.evaluate(mutate_genes(child, problem.ranges, pm, rng))
                    )
            population = next_population
            generation += 1
            run.history.append(min(ind.cost for ind in population))
    except _StopSearch:
        pass
    return run.result(seed)


def _tournament(rng: random.Random, population: list[Individual], size: int) -> Individual:
    entrants = [rng.randrange(len(population)) for _ in range(size)]
    winner = min(entrants, key=lambda idx: (population[idx].cost, idx))
    return population[winner]
