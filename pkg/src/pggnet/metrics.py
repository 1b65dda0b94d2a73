"""Observables: cooperation levels, degree histograms, path lengths, CIs."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .errors import PreconditionError
from .graph import Graph

if TYPE_CHECKING:
    from .engine import TimeSeries


@dataclass(frozen=True)
class ASPLResult:
    """Mean shortest path over reachable ordered pairs, plus connectivity."""

    mean_path: float
    component_count: int
    connected: bool


@dataclass(frozen=True)
class DegreeHistogram:
    counts: dict[int, int]  # degree -> node count
    n: int
    mean_degree: float


def cooperator_fraction(graph: Graph) -> float:
    if graph.node_count == 0:
        raise PreconditionError("cooperator fraction is undefined on an empty graph")
    return graph.cooperator_count() / graph.node_count


def final_cooperation(series: "TimeSeries", window: int) -> float:
    """Mean cooperator fraction over the last `window` recorded generations."""
    if window < 1:
        raise PreconditionError("window must be >= 1")
    records = series.records
    if window > len(records):
        raise PreconditionError(
            f"window {window} exceeds series length {len(records)}"
        )
    tail = records[-window:]
    return sum(rec.cooperator_fraction for rec in tail) / window


def degree_distribution(graph: Graph) -> DegreeHistogram:
    if graph.node_count == 0:
        raise PreconditionError("degree distribution is undefined on an empty graph")
    counts = Counter(graph.degree(u) for u in graph.nodes())
    return DegreeHistogram(
        counts=dict(sorted(counts.items())),
        n=graph.node_count,
        mean_degree=graph.mean_degree(),
    )


def average_shortest_path(graph: Graph) -> ASPLResult:
    """All-sources BFS; mean hop count over reachable ordered pairs.

    Unreachable pairs are excluded rather than reported as infinite; the
    connected flag (component_count == 1) lets callers annotate such graphs.
    """
    n = graph.node_count
    if n < 2:
        raise PreconditionError("path lengths need at least 2 nodes")
    pos = {u: i for i, u in enumerate(graph.nodes())}
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in graph.edges():
        iu, iv = pos[u], pos[v]
        adj[iu].append(iv)
        adj[iv].append(iu)

    # component count via one flood fill pass
    comp = [-1] * n
    component_count = 0
    for src in range(n):
        if comp[src] != -1:
            continue
        comp[src] = component_count
        frontier = [src]
        while frontier:
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if comp[v] == -1:
                        comp[v] = component_count
                        nxt.append(v)
            frontier = nxt
        component_count += 1

    # level-synchronous BFS from every source; seen[] holds the last source
    # that reached the node, so no per-source reinitialisation is needed
    total = 0
    pairs = 0
    seen = [-1] * n
    for src in range(n):
        seen[src] = src
        frontier = [src]
        dist = 0
        while frontier:
            nxt = []
            dist += 1
            for u in frontier:
                for v in adj[u]:
                    if seen[v] != src:
                        seen[v] = src
                        nxt.append(v)
            total += dist * len(nxt)
            pairs += len(nxt)
            frontier = nxt

    mean_path = total / pairs if pairs else 0.0
    return ASPLResult(
        mean_path=mean_path,
        component_count=component_count,
        connected=component_count == 1,
    )


def aggregate_ci(values: Sequence[float]) -> tuple[float, float]:
    """Sample mean and 95% normal-approximation half-width (1.96 * SE)."""
    k = len(values)
    if k < 2:
        raise PreconditionError("confidence interval needs at least 2 values")
    if min(values) == max(values):
        return values[0], 0.0  # constant sample: exactly zero width
    mean = sum(values) / k
    var = sum((v - mean) ** 2 for v in values) / (k - 1)
    half_width = 1.96 * math.sqrt(var) / math.sqrt(k)
    return mean, half_width
