"""Undirected simple-graph state and network generators.

The graph carries the entire evolving state of a simulation: adjacency, one
strategy per node and one fitness score per node. Node ids come from a
monotone counter and are never reused after deletion, so ids stay meaningful
across snapshots taken at different times.

Neighbor iteration is O(degree), edge tests are O(1) expected and uniform
node sampling is O(1) via a dense order table. Strategy and fitness live in
lists aligned with that order, which keeps the bulk numpy exports used by
the per-generation hot path cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .errors import ConfigError, InvariantError, PreconditionError, SnapshotParseError


class Strategy(Enum):
    """The two pure strategies: contribute to the pot, or free-ride."""

    DEFECT = 0
    COOPERATE = 1

    @classmethod
    def from_label(cls, label: str) -> "Strategy":
        key = str(label).strip().lower()
        if key in ("c", "cooperate", "cooperator"):
            return cls.COOPERATE
        if key in ("d", "defect", "defector"):
            return cls.DEFECT
        raise ConfigError(f"unknown strategy label {label!r}")

    @property
    def label(self) -> str:
        return "cooperate" if self is Strategy.COOPERATE else "defect"

    @property
    def code(self) -> str:
        return "C" if self is Strategy.COOPERATE else "D"


@dataclass(frozen=True)
class RemovalReport:
    """Deletion counts from remove_nodes: explicitly listed vs isolation cascade."""

    listed: int
    cascaded: int

    @property
    def total(self) -> int:
        return self.listed + self.cascaded


class Graph:
    """Mutable undirected simple graph with per-node strategy and fitness.

    No self-edges, no duplicate edges, adjacency kept symmetric. Deleted node
    ids are never reassigned within the lifetime of the instance.
    """

    __slots__ = (
        "_adj",
        "_order",
        "_pos",
        "_strat",
        "_fit",
        "_next_id",
        "_edge_count",
        "_topo_version",
        "_csr_cache",
    )

    def __init__(self) -> None:
        self._adj: dict[int, set[int]] = {}
        self._order: list[int] = []  # dense id list, enables O(1) sampling
        self._pos: dict[int, int] = {}  # id -> index into _order
        self._strat: list[int] = []  # aligned with _order; 1 = cooperate
        self._fit: list[float] = []  # aligned with _order
        self._next_id = 0
        self._edge_count = 0
        self._topo_version = 0
        self._csr_cache: tuple | None = None

    def __repr__(self) -> str:
        return f"Graph(N={self.node_count}, E={self.edge_count})"

    # ------------------------------------------------------------------
    # queries

    @property
    def node_count(self) -> int:
        return len(self._order)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def nodes(self) -> list[int]:
        """Node ids in internal (dense) order, aligned with the array exports."""
        return list(self._order)

    def has_node(self, node: int) -> bool:
        return node in self._pos

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def neighbors(self, node: int) -> Iterator[int]:
        self._require(node)
        return iter(self._adj[node])

    def degree(self, node: int) -> int:
        self._require(node)
        return len(self._adj[node])

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (min_id, max_id) pairs, sorted; canonical for export."""
        out = []
        for u, nbrs in self._adj.items():
            for v in nbrs:
                if u < v:
                    out.append((u, v))
        out.sort()
        return out

    def strategy(self, node: int) -> Strategy:
        self._require(node)
        return Strategy(self._strat[self._pos[node]])

    def set_strategy(self, node: int, strategy: Strategy) -> None:
        self._require(node)
        self._strat[self._pos[node]] = strategy.value

    def fitness(self, node: int) -> float:
        self._require(node)
        return self._fit[self._pos[node]]

    def set_fitness(self, node: int, value: float) -> None:
        self._require(node)
        self._fit[self._pos[node]] = float(value)

    def cooperator_count(self) -> int:
        return sum(self._strat)

    def mean_degree(self) -> float:
        if not self._order:
            return 0.0
        return 2.0 * self._edge_count / len(self._order)

    def min_degree(self) -> int:
        if not self._order:
            return 0
        return min(len(nbrs) for nbrs in self._adj.values())

    # ------------------------------------------------------------------
    # bulk array views (aligned with nodes())

    def strategy_codes(self) -> np.ndarray:
        """int8 array, 1 = cooperate, aligned with nodes()."""
        return np.array(self._strat, dtype=np.int8)

    def fitness_values(self) -> np.ndarray:
        return np.array(self._fit, dtype=np.float64)

    def _store_fitness(self, values: np.ndarray) -> None:
        self._fit[:] = values.tolist()

    def _store_strategy_codes(self, codes: np.ndarray) -> None:
        self._strat[:] = codes.tolist()

    def adjacency_csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Compressed adjacency: (degrees, flat, offsets, row_idx).

        flat[offsets[i]:offsets[i+1]] holds the neighbor positions (indices
        into nodes(), sorted ascending) of the i-th node; row_idx repeats i
        once per neighbor, sized for segment sums via bincount. Cached until
        the topology next changes; the per-generation game and update steps
        reuse it, which is what makes static-network runs cheap.
        """
        cached = self._csr_cache
        if cached is not None and cached[0] == self._topo_version:
            return cached[1], cached[2], cached[3], cached[4]
        n = len(self._order)
        pos = self._pos
        eu: list[int] = []
        ev: list[int] = []
        for i, u in enumerate(self._order):
            for v in self._adj[u]:
                j = pos[v]
                if j > i:
                    eu.append(i)
                    ev.append(j)
        if eu:
            a = np.array(eu, dtype=np.int64)
            b = np.array(ev, dtype=np.int64)
            src = np.concatenate([a, b])
            dst = np.concatenate([b, a])
            perm = np.lexsort((dst, src))
            flat = dst[perm]
            row_idx = src[perm]
            degrees = np.bincount(src, minlength=n)
        else:
            flat = np.empty(0, dtype=np.int64)
            row_idx = np.empty(0, dtype=np.int64)
            degrees = np.zeros(n, dtype=np.int64)
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degrees, out=offsets[1:])
        self._csr_cache = (self._topo_version, degrees, flat, offsets, row_idx)
        return degrees, flat, offsets, row_idx

    # ------------------------------------------------------------------
    # mutation

    def add_node(self, strategy: Strategy, m: int, rng: np.random.Generator) -> int:
        """Insert one node attached to m distinct existing nodes chosen uniformly.

        Every existing node is equiprobable (sampling without replacement);
        the new node starts with fitness 0. Returns the new id.
        """
        if m < 1:
            raise PreconditionError("m must be >= 1")
        if self.node_count < m:
            raise PreconditionError(
                f"cannot attach {m} edges: graph has only {self.node_count} nodes"
            )
        picks = rng.choice(self.node_count, size=m, replace=False)
        targets = sorted(self._order[int(i)] for i in picks)
        node = self._new_node(strategy)
        for t in targets:
            self._add_edge(node, t)
        return node

    def remove_nodes(self, ids: Iterable[int]) -> RemovalReport:
        """Delete the listed nodes, then sweep every node left with degree 0.

        Removing a degree-0 node cannot isolate anything else, so the sweep
        converges in one pass; it also collects nodes that were already
        isolated before the call. Afterwards the minimum degree over the
        whole graph is >= 1 (or the graph is empty).
        """
        listed = sorted(set(ids))
        for u in listed:
            if u not in self._pos:
                raise PreconditionError(f"unknown node id {u}")
        for u in listed:
            self._remove_single(u)
        cascaded = 0
        while True:
            stranded = sorted(u for u in self._order if not self._adj[u])
            if not stranded:
                break
            for u in stranded:
                self._remove_single(u)
            cascaded += len(stranded)
        return RemovalReport(listed=len(listed), cascaded=cascaded)

    def _new_node(self, strategy: Strategy) -> int:
        node = self._next_id
        self._next_id += 1
        self._adj[node] = set()
        self._pos[node] = len(self._order)
        self._order.append(node)
        self._strat.append(strategy.value)
        self._fit.append(0.0)
        self._topo_version += 1
        return node

    def _add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise PreconditionError(f"self-edge on node {u}")
        if v in self._adj[u]:
            raise PreconditionError(f"duplicate edge {u}-{v}")
        self._adj[u].add(v)
        self._adj[v].add(u)
        self._edge_count += 1
        self._topo_version += 1

    def _remove_single(self, u: int) -> None:
        nbrs = self._adj[u]
        for v in nbrs:
            self._adj[v].discard(u)
        self._edge_count -= len(nbrs)
        del self._adj[u]
        i = self._pos.pop(u)
        last = self._order.pop()
        last_s = self._strat.pop()
        last_f = self._fit.pop()
        if last != u:
            self._order[i] = last
            self._strat[i] = last_s
            self._fit[i] = last_f
            self._pos[last] = i
        self._topo_version += 1

    # ------------------------------------------------------------------
    # construction helpers

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int]],
        strategies: dict[int, Strategy] | None = None,
        default: Strategy = Strategy.DEFECT,
        isolated: Iterable[int] = (),
    ) -> "Graph":
        """Build a graph from explicit (u, v) pairs with caller-chosen ids."""
        g = cls()
        seen: dict[int, int] = {}

        def intern(node: int) -> None:
            if node not in seen:
                strat = (strategies or {}).get(node, default)
                g._adj[node] = set()
                g._pos[node] = len(g._order)
                g._order.append(node)
                g._strat.append(strat.value)
                g._fit.append(0.0)
                seen[node] = 1

        for u in isolated:
            intern(int(u))
        for u, v in edges:
            intern(int(u))
            intern(int(v))
            g._add_edge(int(u), int(v))
        g._next_id = max(g._order, default=-1) + 1
        g._topo_version += 1
        return g

    def validate(self) -> None:
        """Check structural invariants; raises InvariantError on corruption."""
        if set(self._adj) != set(self._order):
            raise InvariantError("adjacency keys and node order disagree")
        if len(self._order) != len(self._strat) or len(self._order) != len(self._fit):
            raise InvariantError("aligned arrays have inconsistent lengths")
        for node, i in self._pos.items():
            if self._order[i] != node:
                raise InvariantError(f"position table corrupt at node {node}")
        degree_sum = 0
        for u, nbrs in self._adj.items():
            if u in nbrs:
                raise InvariantError(f"self-edge on node {u}")
            for v in nbrs:
                if v not in self._adj or u not in self._adj[v]:
                    raise InvariantError(f"asymmetric edge {u}-{v}")
            degree_sum += len(nbrs)
        if degree_sum != 2 * self._edge_count:
            raise InvariantError("degree sum does not match twice the edge count")

    def _require(self, node: int) -> None:
        if node not in self._pos:
            raise PreconditionError(f"unknown node id {node}")


# ----------------------------------------------------------------------
# generators


def gen_founders(count: int, strategy: Strategy) -> Graph:
    """Complete graph on `count` founder nodes, all sharing one strategy.

    A clique is the minimal symmetric wiring in which every founder plays in
    every other founder's game from the first generation.
    """
    if count < 2:
        raise ConfigError("founder count must be >= 2 (a lone node cannot play)")
    g = Graph()
    ids = [g._new_node(strategy) for _ in range(count)]
    for i, u in enumerate(ids):
        for v in ids[i + 1 :]:
            g._add_edge(u, v)
    return g


def gen_ring_lattice(n: int, k: int) -> Graph:
    """Circulant ring: every node tied to its k/2 nearest neighbors per side."""
    if k < 2 or k % 2 != 0:
        raise ConfigError(f"ring lattice degree k must be even and >= 2, got {k}")
    if k >= n:
        raise ConfigError(f"ring lattice needs n > k, got n={n}, k={k}")
    g = Graph()
    for _ in range(n):
        g._new_node(Strategy.DEFECT)
    for i in range(n):
        for d in range(1, k // 2 + 1):
            j = (i + d) % n
            if not g.has_edge(i, j):
                g._add_edge(i, j)
    return g


def gen_er_random(n: int, m_edges: int, rng: np.random.Generator) -> Graph:
    """G(N, M): exactly m_edges distinct edges uniform over unordered pairs.

    Isolated nodes are expected at the densities used here and are kept; the
    simulation treats them as non-playing until growth reconnects them or
    attrition sweeps them out.
    """
    max_edges = n * (n - 1) // 2
    if m_edges > max_edges:
        raise ConfigError(
            f"edge count {m_edges} exceeds maximum {max_edges} for {n} nodes"
        )
    g = Graph()
    for _ in range(n):
        g._new_node(Strategy.DEFECT)
    placed = 0
    while placed < m_edges:
        u = int(rng.integers(n))
        v = int(rng.integers(n))
        if u == v or g.has_edge(u, v):
            continue
        g._add_edge(u, v)
        placed += 1
    return g


def gen_barabasi_albert(n: int, m: int, rng: np.random.Generator) -> Graph:
    """Preferential attachment from a small complete seed; mean degree -> 2m.

    Targets are drawn proportionally to current degree by sampling a repeated
    edge-endpoint list, deduplicating until m distinct targets are found.
    """
    if m < 1:
        raise ConfigError("m must be >= 1")
    if n <= m:
        raise ConfigError(f"need n > m, got n={n}, m={m}")
    g = Graph()
    seed = min(n, max(m + 1, 3))
    ids = [g._new_node(Strategy.DEFECT) for _ in range(seed)]
    endpoints: list[int] = []
    for i, u in enumerate(ids):
        for v in ids[i + 1 :]:
            g._add_edge(u, v)
            endpoints.append(u)
            endpoints.append(v)
    for _ in range(seed, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(endpoints[int(rng.integers(len(endpoints)))])
        node = g._new_node(Strategy.DEFECT)
        for t in sorted(targets):
            g._add_edge(node, t)
            endpoints.append(node)
            endpoints.append(t)
    return g


# ----------------------------------------------------------------------
# snapshot export / import


def write_edge_list(graph: Graph, path: str | Path) -> None:
    """One `u v` pair per line, endpoints ascending, lines sorted."""
    lines = [f"{u} {v}\n" for u, v in graph.edges()]
    Path(path).write_text("".join(lines), encoding="utf-8")


def write_node_table(graph: Graph, path: str | Path) -> None:
    """CSV `id,strategy,fitness` sorted by id; strategy encoded C/D."""
    rows = ["id,strategy,fitness\n"]
    for node in sorted(graph.nodes()):
        strat = graph.strategy(node).code
        rows.append(f"{node},{strat},{graph.fitness(node):.17g}\n")
    Path(path).write_text("".join(rows), encoding="utf-8")


def read_edge_list(path: str | Path) -> Graph:
    """Parse a `u v` edge-list snapshot back into a graph (topology only)."""
    edges: list[tuple[int, int]] = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise SnapshotParseError(
                f"expected two whitespace-separated ids, got {raw!r}", lineno
            )
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise SnapshotParseError(f"non-integer node id in {raw!r}", lineno) from None
        if u == v:
            raise SnapshotParseError(f"self-edge {u}-{v}", lineno)
        edges.append((u, v))
    try:
        return Graph.from_edges(edges)
    except PreconditionError as exc:
        raise SnapshotParseError(str(exc)) from None
