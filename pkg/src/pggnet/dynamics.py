"""Network turnover: random-attachment growth and tournament-selected attrition.

Growth adds a fixed batch of new nodes per generation, each wiring m edges to
uniformly chosen distinct existing nodes, until a carrying capacity is hit.
At the capacity, fluctuating runs prune the least fit fraction of the
population via repeated tournament selection, then regrow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, PreconditionError
from .graph import Graph, Strategy


@dataclass(frozen=True)
class DynamicsParams:
    nodes_per_generation: int = 10
    m: int = 2  # edges per new node
    max_size: int = 1000  # carrying capacity
    shrink_fraction: float = 0.025  # X, fraction culled when the cap is hit
    tournament_fraction: float = 0.01
    fluctuation_enabled: bool = False

    def __post_init__(self) -> None:
        if self.nodes_per_generation < 1:
            raise ConfigError("dynamics.nodes_per_generation must be >= 1")
        if self.m < 1:
            raise ConfigError("dynamics.m must be >= 1")
        if self.max_size <= self.m:
            raise ConfigError("dynamics.max_size must exceed m")
        if not 0.0 <= self.shrink_fraction < 1.0:
            raise ConfigError("dynamics.shrink_fraction must lie in [0, 1)")
        if not 0.0 < self.tournament_fraction <= 1.0:
            raise ConfigError("dynamics.tournament_fraction must lie in (0, 1]")
        if self.fluctuation_enabled and self.shrink_fraction * self.max_size < 1.0:
            raise ConfigError(
                "dynamics.shrink_fraction too small: no node would ever be pruned"
            )


@dataclass(frozen=True)
class AttritionReport:
    shortlisted: int
    cascaded: int
    survivors: int

    @property
    def removed(self) -> int:
        return self.shortlisted + self.cascaded


def grow(graph: Graph, params: DynamicsParams, rng: np.random.Generator) -> int:
    """Add up to nodes_per_generation new nodes, never exceeding the capacity.

    Each new node gets a strategy chosen uniformly at random, fitness 0 and m
    uniform-random distinct attachment targets. Nodes are inserted one at a
    time, so a node added earlier in the batch is a valid target for later
    ones. Returns the number added.
    """
    if graph.node_count < params.m:
        raise PreconditionError(
            f"growth needs at least m={params.m} existing nodes"
        )
    budget = min(params.nodes_per_generation, params.max_size - graph.node_count)
    for _ in range(max(0, budget)):
        strategy = Strategy.COOPERATE if rng.random() < 0.5 else Strategy.DEFECT
        graph.add_node(strategy, params.m, rng)
    return max(0, budget)


def tournament_shortlist(
    graph: Graph, params: DynamicsParams, rng: np.random.Generator
) -> set[int]:
    """Pick floor(shrink_fraction * N) distinct nodes for deletion.

    One tournament per slot: ceil(tournament_fraction * N) distinct members
    are sampled uniformly from the nodes not yet shortlisted, and the member
    with the lowest fitness wins. Ties are broken uniformly at random.
    """
    if not params.fluctuation_enabled:
        raise PreconditionError("attrition is disabled (fluctuation_enabled=False)")
    n = graph.node_count
    if n < params.max_size:
        raise PreconditionError(
            f"attrition fires at the capacity: N={n} < max_size={params.max_size}"
        )
    quota = int(params.shrink_fraction * n)
    if quota == 0:
        raise ConfigError("shrink_fraction yields an empty shortlist")
    t_size = math.ceil(params.tournament_fraction * n)

    shortlist: set[int] = set()
    pool = graph.nodes()  # shrinks by swap-remove as winners are shortlisted
    pool_pos = {u: i for i, u in enumerate(pool)}
    for _ in range(quota):
        size = min(t_size, len(pool))
        picks = rng.choice(len(pool), size=size, replace=False)
        members = [pool[int(i)] for i in picks]
        low = min(graph.fitness(u) for u in members)
        tied = [u for u in members if graph.fitness(u) == low]
        winner = tied[0] if len(tied) == 1 else tied[int(rng.integers(len(tied)))]
        shortlist.add(winner)
        w = pool_pos.pop(winner)
        last = pool.pop()
        if last != winner:
            pool[w] = last
            pool_pos[last] = w
    return shortlist


def prune(graph: Graph, params: DynamicsParams, rng: np.random.Generator) -> AttritionReport:
    """Delete the tournament shortlist plus any nodes isolated as a result."""
    shortlist = tournament_shortlist(graph, params, rng)
    report = graph.remove_nodes(shortlist)
    return AttritionReport(
        shortlisted=report.listed,
        cascaded=report.cascaded,
        survivors=graph.node_count,
    )
