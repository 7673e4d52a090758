"""Multi-objective evolutionary engine over circuit genomes.

Each generation keeps the non-dominated elite (thinned so no two elites sit
within a Manhattan fitness distance of each other, capped by overall error),
fills the population with children produced by one of twelve operators applied
to rank-weighted parents, merges adjacent compatible gates in every child,
evaluates, removes fitness and structural duplicates, and re-ranks.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .gates import (
    Gate,
    GateKind,
    Genome,
    invert_gate,
    merge_adjacent,
    mutate_continuous,
    mutate_discrete,
    random_gate,
    random_genome,
    structure_key,
)
from .pareto import dominates, nondominated_sort, selection_probabilities
from .problems import Problem, total_gates


@dataclass
class EvolutionParams:
    population_size: int = 1000
    elite_capacity: int = 100
    emc: float = 2.0  # expected mutation count per genome
    esl: float = 2.0  # expected stretch / insertion length
    selection_pressure: float = 1.0
    init_length_mean: float = 30.0
    dedup_distance: float = 0.1

    def __post_init__(self) -> None:
        if self.population_size < 1:
            raise ValueError("population_size must be >= 1")
        if not 1 <= self.elite_capacity <= self.population_size:
            raise ValueError("elite_capacity must be in 1..population_size")
        if self.emc <= 0 or self.esl <= 0:
            raise ValueError("emc and esl must be positive")
        if self.selection_pressure < 0:
            raise ValueError("selection_pressure must be >= 0")
        if self.init_length_mean < 0:
            raise ValueError("init_length_mean must be >= 0")
        if self.dedup_distance < 0:
            raise ValueError("dedup_distance must be >= 0")


@dataclass
class Threshold:
    """A success criterion: strict error bounds, optional count bounds."""

    name: str
    max_overall: float
    max_worst: float
    max_gates: int | None = None
    max_oracles: int | None = None

    def mask(self, fitness_matrix: np.ndarray, problem: Problem) -> np.ndarray:
        ok = (fitness_matrix[:, 0] < self.max_overall) & (
            fitness_matrix[:, 1] < self.max_worst
        )
        if self.max_gates is not None:
            ok &= fitness_matrix[:, 2:].sum(axis=1) <= self.max_gates
        if self.max_oracles is not None:
            if problem.oracle_index is None:
                return np.zeros(len(fitness_matrix), dtype=bool)
            ok &= fitness_matrix[:, problem.oracle_index] <= self.max_oracles
        return ok


@dataclass
class Individual:
    genome: Genome
    fitness: np.ndarray
    rank: int = -1


@dataclass
class Generation:
    index: int
    members: list[Individual]
    fitness_matrix: np.ndarray
    probabilities: np.ndarray
    _cumulative: np.ndarray = field(repr=False, default=None)


@dataclass
class GenerationStats:
    generation: int
    best_overall: float
    best_worst: float
    wall_ms: float
    size: int


@dataclass
class EvolutionResult:
    problem_name: str
    n_qubits: int
    params: EvolutionParams
    generations_run: int
    final: Generation
    stats: list[GenerationStats]
    first_hit: dict[str, int | None]

    @property
    def front(self) -> list[Individual]:
        return [m for m in self.final.members if m.rank == 0]


class _Ctx(NamedTuple):
    n: int
    kinds: tuple[GateKind, ...]
    emc: float
    esl: float
    rng: np.random.Generator


def _geometric(rng: np.random.Generator, mean: float) -> int:
    """Geometric draw on {1, 2, ...} with the given mean (clamped to >= 1)."""
    return int(rng.geometric(min(1.0, 1.0 / mean)))


def _geometric0(rng: np.random.Generator, mean: float) -> int:
    """Geometric draw on {0, 1, ...} with the given mean."""
    return int(rng.geometric(1.0 / (mean + 1.0))) - 1


def _stretch(genome: Genome, ctx: _Ctx) -> tuple[int, int]:
    """Uniform start, geometric length (mean ESL), truncated at the end."""
    start = int(ctx.rng.integers(0, len(genome)))
    return start, min(start + _geometric(ctx.rng, ctx.esl), len(genome))


def op_discrete_mutation(genome: Genome, ctx: _Ctx) -> Genome:
    """1: each gate rewires with probability min(1, EMC/len)."""
    if not genome:
        return genome
    p = min(1.0, ctx.emc / len(genome))
    return tuple(
        mutate_discrete(g, ctx.n, ctx.rng) if ctx.rng.random() < p else g
        for g in genome
    )


def op_continuous_mutation(genome: Genome, ctx: _Ctx) -> Genome:
    """2: each gate's angle jitters with probability min(1, EMC/len)."""
    if not genome:
        return genome
    p = min(1.0, ctx.emc / len(genome))
    return tuple(
        mutate_continuous(g, ctx.n, ctx.rng) if ctx.rng.random() < p else g
        for g in genome
    )


def op_insert_sequence(genome: Genome, ctx: _Ctx) -> Genome:
    """3: random sequence (geometric length, mean ESL) at a uniform point."""
    at = int(ctx.rng.integers(0, len(genome) + 1))
    seq = random_genome(ctx.n, ctx.kinds, _geometric(ctx.rng, ctx.esl), ctx.rng)
    return genome[:at] + seq + genome[at:]


def op_insert_inverse_pair(genome: Genome, ctx: _Ctx) -> Genome:
    """4: random sequence followed by its reversed element-wise inverse.

    The pair acts as the identity, so both error objectives are preserved
    exactly; only the count objectives grow.
    """
    at = int(ctx.rng.integers(0, len(genome) + 1))
    seq = random_genome(ctx.n, ctx.kinds, _geometric(ctx.rng, ctx.esl), ctx.rng)
    inverse = tuple(invert_gate(g) for g in reversed(seq))
    return genome[:at] + seq + inverse + genome[at:]


def op_insert_mutate_invert(genome: Genome, ctx: _Ctx) -> Genome:
    """5: wrap one discretely mutated gate between a random gate and its inverse."""
    if not genome:
        return genome
    at = int(ctx.rng.integers(0, len(genome)))
    mutated = mutate_discrete(genome[at], ctx.n, ctx.rng)
    wrapper = random_gate(ctx.n, ctx.kinds, ctx.rng)
    return genome[:at] + (wrapper, mutated, invert_gate(wrapper)) + genome[at + 1 :]


def op_swap_qubit_roles(genome: Genome, ctx: _Ctx) -> Genome:
    """6: exchange the roles of two qubits (targets and controls) in a stretch."""
    if not genome or ctx.n < 2:
        return genome
    start, stop = _stretch(genome, ctx)
    q1 = int(ctx.rng.integers(1, ctx.n + 1))
    q2 = int(ctx.rng.integers(1, ctx.n))
    if q2 >= q1:
        q2 += 1

    def relabel(q: int) -> int:
        return q2 if q == q1 else q1 if q == q2 else q

    out = list(genome)
    for i in range(start, stop):
        g = genome[i]
        if g.kind is GateKind.ORACLE:
            continue
        if g.kind is GateKind.SWAP:
            out[i] = Gate(g.kind, target=relabel(g.target), target2=relabel(g.target2))
        else:
            out[i] = Gate(
                g.kind,
                target=relabel(g.target),
                angle=g.angle,
                controls=frozenset(relabel(c) for c in g.controls),
            )
    return tuple(out)


def op_delete_stretch(genome: Genome, ctx: _Ctx) -> Genome:
    """7: delete a stretch."""
    if not genome:
        return genome
    start, stop = _stretch(genome, ctx)
    return genome[:start] + genome[stop:]


def op_replace_stretch(genome: Genome, ctx: _Ctx) -> Genome:
    """8: replace a stretch with a fresh random sequence of independent length."""
    if genome:
        start, stop = _stretch(genome, ctx)
    else:
        start = stop = 0
    seq = random_genome(ctx.n, ctx.kinds, _geometric(ctx.rng, ctx.esl), ctx.rng)
    return genome[:start] + seq + genome[stop:]


def op_exchange_stretches(genome: Genome, ctx: _Ctx) -> Genome:
    """9: swap two non-overlapping non-empty stretches (four uniform points)."""
    if len(genome) < 2:
        return genome
    while True:
        p1, p2, p3, p4 = sorted(
            int(ctx.rng.integers(0, len(genome) + 1)) for _ in range(4)
        )
        if p1 < p2 and p3 < p4:
            break
    return (
        genome[:p1]
        + genome[p3:p4]
        + genome[p2:p3]
        + genome[p1:p2]
        + genome[p4:]
    )


def op_permute_stretch(genome: Genome, ctx: _Ctx) -> Genome:
    """10: scramble the gate order within a stretch."""
    if not genome:
        return genome
    start, stop = _stretch(genome, ctx)
    perm = ctx.rng.permutation(stop - start)
    middle = tuple(genome[start + int(i)] for i in perm)
    return genome[:start] + middle + genome[stop:]


def op_move_gate(genome: Genome, ctx: _Ctx) -> Genome:
    """11: move one gate to a different uniform position."""
    if len(genome) < 2:
        return genome
    src = int(ctx.rng.integers(0, len(genome)))
    dst = int(ctx.rng.integers(0, len(genome) - 1))
    if dst >= src:
        dst += 1
    gate = genome[src]
    rest = genome[:src] + genome[src + 1 :]
    return rest[:dst] + (gate,) + rest[dst:]


def op_crossover(first: Genome, second: Genome, ctx: _Ctx) -> Genome:
    """12: alternate chunks between aligned parent cursors.

    Each phase draws one geometric chunk length with mean len(donor)/EMC,
    copies that many gates from the donor and discards the same span of the
    other parent; donors alternate until both parents are exhausted.
    """
    end = max(len(first), len(second))
    child: list[Gate] = []
    cursor = 0
    donor_first = True
    while cursor < end:
        donor = first if donor_first else second
        length = _geometric0(ctx.rng, len(donor) / ctx.emc)
        if length:
            child.extend(donor[cursor : cursor + length])
        cursor += length
        donor_first = not donor_first
    return tuple(child)


UNARY_OPERATORS: tuple[Callable[[Genome, _Ctx], Genome], ...] = (
    op_discrete_mutation,
    op_continuous_mutation,
    op_insert_sequence,
    op_insert_inverse_pair,
    op_insert_mutate_invert,
    op_swap_qubit_roles,
    op_delete_stretch,
    op_replace_stretch,
    op_exchange_stretches,
    op_permute_stretch,
    op_move_gate,
)
N_OPERATORS = len(UNARY_OPERATORS) + 1  # + crossover


def apply_operator(
    index: int, parents: tuple[Genome, ...], n: int, kinds, emc: float, esl: float, rng
) -> Genome:
    """Apply operator `index` (0-based; 11 = crossover) to the parent genome(s)."""
    ctx = _Ctx(n, tuple(kinds), emc, esl, rng)
    if index == N_OPERATORS - 1:
        return op_crossover(parents[0], parents[1], ctx)
    return UNARY_OPERATORS[index](parents[0], ctx)


def _prune_duplicates(members: list[Individual]) -> list[Individual]:
    """Drop repeated fitness vectors, then resolve structural twins.

    For a structural pair the dominated entry is removed; if neither
    dominates, the later one goes. Earlier entries keep their position.
    """
    seen_fitness: set[bytes] = set()
    unique: list[Individual] = []
    for m in members:
        key = m.fitness.tobytes()
        if key in seen_fitness:
            continue
        seen_fitness.add(key)
        unique.append(m)
    by_structure: dict[tuple, int] = {}
    result: list[Individual] = []
    for m in unique:
        key = structure_key(m.genome)
        slot = by_structure.get(key)
        if slot is None:
            by_structure[key] = len(result)
            result.append(m)
        elif dominates(m.fitness, result[slot].fitness):
            result[slot] = m
    return result


def _prune_elites(elites: list[Individual], threshold: float) -> list[Individual]:
    """Thin crowded elites: of any pair closer than `threshold` (Manhattan
    distance over the fitness vector) the larger overall error goes, ties
    dropping the later entry."""
    if len(elites) < 2 or threshold <= 0:
        return list(elites)
    f = np.array([m.fitness for m in elites])
    dist = np.abs(f[:, None, :] - f[None, :, :]).sum(axis=2)
    alive = [True] * len(elites)
    for i in range(len(elites)):
        if not alive[i]:
            continue
        for j in range(i + 1, len(elites)):
            if alive[j] and dist[i, j] < threshold:
                if f[i, 0] > f[j, 0]:
                    alive[i] = False
                    break
                alive[j] = False
    return [m for m, keep in zip(elites, alive) if keep]


def _ranked(index: int, members: list[Individual], params: EvolutionParams) -> Generation:
    fitness_matrix = np.array([m.fitness for m in members])
    ranks = nondominated_sort(fitness_matrix)
    for m, r in zip(members, ranks):
        m.rank = int(r)
    probabilities = selection_probabilities(ranks, params.selection_pressure)
    return Generation(index, members, fitness_matrix, probabilities, np.cumsum(probabilities))


def _draw_member(generation: Generation, rng: np.random.Generator) -> Individual:
    i = int(np.searchsorted(generation._cumulative, rng.random(), side="right"))
    if i >= len(generation.members):  # guard against cumulative rounding short of 1.0
        i = len(generation.members) - 1
    return generation.members[i]


def initialize(
    problem: Problem, params: EvolutionParams, rng: np.random.Generator
) -> Generation:
    """Random starting population: geometric lengths on {0,1,...} around the mean."""
    p = 1.0 / (params.init_length_mean + 1.0)
    genomes = [
        random_genome(
            problem.n_qubits,
            problem.gate_kinds,
            int(rng.geometric(p)) - 1,
            rng,
        )
        for _ in range(params.population_size)
    ]
    fitness = problem.evaluate_many(genomes)
    members = [Individual(g, f) for g, f in zip(genomes, fitness)]
    return _ranked(0, _prune_duplicates(members), params)


def step(
    generation: Generation,
    problem: Problem,
    params: EvolutionParams,
    rng: np.random.Generator,
) -> Generation:
    """Advance one generation."""
    elites = [m for m in generation.members if m.rank == 0]
    elites = _prune_elites(elites, params.dedup_distance)
    if len(elites) > params.elite_capacity:
        order = np.argsort([m.fitness[0] for m in elites], kind="stable")
        keep = np.sort(order[: params.elite_capacity])
        elites = [elites[i] for i in keep]

    ctx = _Ctx(problem.n_qubits, problem.gate_kinds, params.emc, params.esl, rng)
    children: list[Genome] = []
    for _ in range(params.population_size - len(elites)):
        op = int(rng.integers(0, N_OPERATORS))
        if op == N_OPERATORS - 1:
            a = _draw_member(generation, rng)
            b = _draw_member(generation, rng)
            child = op_crossover(a.genome, b.genome, ctx)
        else:
            parent = _draw_member(generation, rng)
            child = UNARY_OPERATORS[op](parent.genome, ctx)
        children.append(merge_adjacent(child))

    child_fitness = problem.evaluate_many(children)
    members = [Individual(m.genome, m.fitness) for m in elites]
    members += [Individual(g, f) for g, f in zip(children, child_fitness)]
    return _ranked(generation.index + 1, _prune_duplicates(members), params)


def _record_hits(
    generation: Generation,
    thresholds: tuple[Threshold, ...],
    first_hit: dict[str, int | None],
    problem: Problem,
) -> None:
    for t in thresholds:
        if first_hit[t.name] is None and t.mask(generation.fitness_matrix, problem).any():
            first_hit[t.name] = generation.index


def evolve(
    problem: Problem,
    params: EvolutionParams,
    generations: int,
    rng: np.random.Generator,
    thresholds: tuple[Threshold, ...] = (),
    stop_threshold: Threshold | None = None,
    on_generation: Callable[[Generation, GenerationStats], None] | None = None,
) -> EvolutionResult:
    """Run a full search: initialize, then `generations` steps.

    `thresholds` are success criteria whose first-hit generation index is
    recorded; `stop_threshold` (optional, off by default) ends the run early
    once some entry satisfies it.
    """
    if generations < 0:
        raise ValueError("generations must be >= 0")
    first_hit: dict[str, int | None] = {t.name: None for t in thresholds}
    t0 = time.perf_counter()
    generation = initialize(problem, params, rng)
    stats = [_stats_for(generation, time.perf_counter() - t0)]
    _record_hits(generation, thresholds, first_hit, problem)
    if on_generation is not None:
        on_generation(generation, stats[-1])
    ran = 0
    for _ in range(generations):
        t0 = time.perf_counter()
        generation = step(generation, problem, params, rng)
        ran += 1
        stats.append(_stats_for(generation, time.perf_counter() - t0))
        _record_hits(generation, thresholds, first_hit, problem)
        if on_generation is not None:
            on_generation(generation, stats[-1])
        if stop_threshold is not None and stop_threshold.mask(
            generation.fitness_matrix, problem
        ).any():
            break
    return EvolutionResult(
        problem_name=problem.name,
        n_qubits=problem.n_qubits,
        params=params,
        generations_run=ran,
        final=generation,
        stats=stats,
        first_hit=first_hit,
    )


def _stats_for(generation: Generation, seconds: float) -> GenerationStats:
    f = generation.fitness_matrix
    return GenerationStats(
        generation=generation.index,
        best_overall=float(f[:, 0].min()),
        best_worst=float(f[:, 1].min()),
        wall_ms=seconds * 1000.0,
        size=len(generation.members),
    )


def best_by_overall(members: list[Individual]) -> Individual:
    """Entry with the smallest overall error; ties prefer fewer gates."""
    return min(members, key=lambda m: (m.fitness[0], total_gates(m.fitness)))


def best_by_worst(members: list[Individual]) -> Individual:
    """Entry with the smallest worst-case error; ties prefer fewer gates."""
    return min(members, key=lambda m: (m.fitness[1], total_gates(m.fitness)))
