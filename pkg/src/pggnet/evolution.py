"""Payoff-biased strategy imitation, applied network-wide once per generation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .graph import Graph


@dataclass(frozen=True)
class UpdateReport:
    changed: int  # strategy values that actually flipped
    evaluated: int  # nodes processed this update


def replacement_probability(f_i: float, f_j: float, k_i: int, k_j: int) -> float:
    """Probability that node i adopts neighbor j's strategy.

    Zero when i is at least as fit as j; otherwise the fitness gap normalised
    by max(k_i, k_j), the largest fitness difference the two degrees admit.
    The quotient can exceed 1 for strong payoffs, so it is clamped to [0, 1].
    """
    if k_i < 1 or k_j < 1:
        raise PreconditionError("degrees must be >= 1")
    if f_i >= f_j:
        return 0.0
    return min(1.0, (f_j - f_i) / max(k_i, k_j))


def update_strategies(graph: Graph, rng: np.random.Generator) -> UpdateReport:
    """Synchronous imitation sweep over every node.

    Each node compares itself against one uniformly chosen neighbor using a
    frozen pre-update snapshot of all strategies and fitness values; all
    replacements are applied at once afterwards, so the outcome distribution
    does not depend on node iteration order. Isolated nodes have nobody to
    imitate and keep their strategy.

    RNG stream per call: one vectorised integer draw (neighbor choice, one
    per node) followed by one vectorised uniform draw (acceptance, one per
    node).
    """
    n = graph.node_count
    if n == 0:
        raise PreconditionError("cannot update strategies on an empty graph")
    degrees, flat, offsets, _ = graph.adjacency_csr()
    if graph.edge_count == 0:
        return UpdateReport(changed=0, evaluated=n)
    s = graph.strategy_codes()
    f = graph.fitness_values()

    playing = degrees > 0
    draw = rng.integers(0, np.maximum(degrees, 1))
    j_at = offsets[:-1] + draw
    j_at[~playing] = 0  # dummy slot, masked out below
    j = flat[j_at]

    gap = f[j] - f
    denom = np.maximum(degrees, degrees[j]).astype(np.float64)
    np.maximum(denom, 1.0, out=denom)
    prob = np.clip(gap / denom, 0.0, 1.0)
    accept = rng.random(n) < prob
    accept &= playing

    new_s = np.where(accept, s[j], s)
    changed = int(np.count_nonzero(new_s != s))
    graph._store_strategy_codes(new_s)
    return UpdateReport(changed=changed, evaluated=n)
