"""The four-step generation loop, scenario setup and replicate execution.

Each generation runs, in order: play public goods games (fitness is rebuilt
from zero), update strategies by payoff-biased imitation, prune at the
carrying capacity when fluctuation is enabled, then grow by random
attachment. Per-generation data is recorded after the strategy update,
before any turnover.

Randomness comes from one numpy PCG64 generator per replicate, seeded with
base_seed + replicate_index; the generator identity and the draw order are
part of the reproducibility contract.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

import numpy as np

from .dynamics import DynamicsParams, grow, prune
from .errors import ConfigError
from .evolution import update_strategies
from .game import GameParams, accumulate_fitness
from .graph import (
    Graph,
    Strategy,
    gen_barabasi_albert,
    gen_er_random,
    gen_founders,
    gen_ring_lattice,
)
from .metrics import aggregate_ci, cooperator_fraction, final_cooperation


class Topology(Enum):
    REGULAR = "regular"
    RANDOM = "random"
    SCALE_FREE = "scalefree"


@dataclass(frozen=True)
class FoundersScenario:
    """Grow from a small founding clique sharing one strategy."""

    count: int = 3
    strategy: Strategy = Strategy.COOPERATE

    def __post_init__(self) -> None:
        if self.count < 2:
            raise ConfigError("scenario.count must be >= 2")


@dataclass(frozen=True)
class PreExistingScenario:
    """Start from a full-size network with uniformly random strategies."""

    topology: Topology = Topology.REGULAR


Scenario = Union[FoundersScenario, PreExistingScenario]

# Pre-existing networks are built with mean degree ~4: ring degree, ER edge
# multiple (M = 2N) and BA edges-per-node (2m) all pin it.
REGULAR_DEGREE = 4
ER_EDGE_MULTIPLE = 2
BA_EDGES_PER_NODE = 2


@dataclass(frozen=True)
class SimConfig:
    scenario: Scenario
    game: GameParams
    dynamics: DynamicsParams
    generations: int = 20000
    replicates: int = 25
    base_seed: int = 0
    record_window: int = 20

    def __post_init__(self) -> None:
        if self.generations < 1:
            raise ConfigError("generations must be >= 1")
        if self.record_window < 1:
            raise ConfigError("record_window must be >= 1")
        if self.generations < self.record_window:
            raise ConfigError("generations must be >= record_window")
        if self.replicates < 1:
            raise ConfigError("replicates must be >= 1")
        if self.base_seed < 0:
            raise ConfigError("base_seed must be a non-negative integer")
        if isinstance(self.scenario, FoundersScenario):
            if self.scenario.count < self.dynamics.m:
                raise ConfigError(
                    "scenario.count must be >= dynamics.m so growth can attach"
                )


@dataclass(frozen=True)
class GenerationRecord:
    generation: int
    n: int
    cooperator_fraction: float
    mean_degree: float
    changed_strategies: int
    nodes_added: int
    nodes_removed: int


@dataclass
class TimeSeries:
    """Per-generation records of one replicate, plus its final graph.

    records[0] is a synthetic snapshot of the initial state before any game
    play; records[g] for g >= 1 covers simulated generation g.
    """

    config: SimConfig
    seed: int
    records: list[GenerationRecord]
    final_graph: Graph


@dataclass
class ReplicateSet:
    config: SimConfig
    series: list[TimeSeries] = field(default_factory=list)
    final_cooperation: list[float] = field(default_factory=list)
    mean: float = 0.0
    ci95: float = 0.0


def run_generation(
    graph: Graph, config: SimConfig, rng: np.random.Generator, generation: int = 0
) -> GenerationRecord:
    """Advance the simulation by one generation and return its record."""
    accumulate_fitness(graph, config.game)
    update = update_strategies(graph, rng)

    # data is recorded here, after selection but before turnover
    n = graph.node_count
    coop = cooperator_fraction(graph)
    mean_degree = graph.mean_degree()

    removed = 0
    dyn = config.dynamics
    if dyn.fluctuation_enabled and n >= dyn.max_size:
        removed = prune(graph, dyn, rng).removed
    added = grow(graph, dyn, rng)

    return GenerationRecord(
        generation=generation,
        n=n,
        cooperator_fraction=coop,
        mean_degree=mean_degree,
        changed_strategies=update.changed,
        nodes_added=added,
        nodes_removed=removed,
    )


def build_initial_graph(config: SimConfig, rng: np.random.Generator) -> Graph:
    """Construct the generation-0 network for the configured scenario.

    Pre-existing networks start at the carrying capacity and draw every
    node's strategy uniformly at random (cooperate/defect equiprobable)
    after the topology is built.
    """
    scenario = config.scenario
    if isinstance(scenario, FoundersScenario):
        return gen_founders(scenario.count, scenario.strategy)
    n = config.dynamics.max_size
    if scenario.topology is Topology.REGULAR:
        graph = gen_ring_lattice(n, REGULAR_DEGREE)
    elif scenario.topology is Topology.RANDOM:
        graph = gen_er_random(n, ER_EDGE_MULTIPLE * n, rng)
    else:
        graph = gen_barabasi_albert(n, BA_EDGES_PER_NODE, rng)
    codes = rng.integers(0, 2, size=graph.node_count)
    graph._store_strategy_codes(codes)
    return graph


def run_simulation(config: SimConfig, replicate_index: int) -> TimeSeries:
    """One full replicate: deterministic given (config, replicate_index)."""
    seed = config.base_seed + replicate_index
    rng = np.random.Generator(np.random.PCG64(seed))
    graph = build_initial_graph(config, rng)
    records = [
        GenerationRecord(
            generation=0,
            n=graph.node_count,
            cooperator_fraction=cooperator_fraction(graph),
            mean_degree=graph.mean_degree(),
            changed_strategies=0,
            nodes_added=0,
            nodes_removed=0,
        )
    ]
    for generation in range(1, config.generations + 1):
        records.append(run_generation(graph, config, rng, generation))
    return TimeSeries(config=config, seed=seed, records=records, final_graph=graph)


def _replicate_worker(args: tuple[SimConfig, int]) -> TimeSeries:
    config, index = args
    return run_simulation(config, index)


def run_replicates(config: SimConfig, threads: int | None = None) -> ReplicateSet:
    """Run all replicates, optionally across processes.

    Results are keyed by replicate index, so the outcome is identical
    whatever the worker count or scheduling.
    """
    count = config.replicates
    if threads is None:
        threads = os.cpu_count() or 1
    jobs = [(config, i) for i in range(count)]
    if threads <= 1 or count == 1:
        series = [_replicate_worker(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=min(threads, count)) as pool:
            series = list(pool.map(_replicate_worker, jobs))
    finals = [final_cooperation(ts, config.record_window) for ts in series]
    if count >= 2:
        mean, ci95 = aggregate_ci(finals)
    else:
        mean, ci95 = finals[0], 0.0
    return ReplicateSet(
        config=config,
        series=series,
        final_cooperation=finals,
        mean=mean,
        ci95=ci95,
    )
