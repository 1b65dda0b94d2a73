"""Public goods game payoffs and per-generation fitness accumulation.

Every node initiates one game among itself and its direct neighbors, so a
degree-k node takes part in k+1 games per generation. Two cost schemes are
supported: FCPG, where a cooperator pays the cost c in every game it joins
(total outlay c(k+1)), and FCPI, where a cooperator's total outlay is c,
split as c/(k+1) per game.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigError, PreconditionError
from .graph import Graph

# Nominal mean neighborhood size used to normalise the reward multiplier:
# r = eta * NOMINAL_NEIGHBOURHOOD.
NOMINAL_NEIGHBOURHOOD = 5.0


class GameVariant(Enum):
    FCPG = "FCPG"  # fixed cost per game
    FCPI = "FCPI"  # fixed cost per individual


@dataclass(frozen=True)
class GameParams:
    """Cost c, reward multiplier r and its normalised form eta = r / g_bar.

    Exactly one of eta and r may be supplied; the other is derived so the
    identity r = eta * g_bar holds by construction.
    """

    variant: GameVariant
    eta: float | None = None
    r: float | None = None
    c: float = 1.0
    g_bar: float = NOMINAL_NEIGHBOURHOOD

    def __post_init__(self) -> None:
        if self.g_bar <= 0:
            raise ConfigError(f"game.g_bar must be > 0, got {self.g_bar}")
        if self.eta is None and self.r is None:
            raise ConfigError("game: one of eta or r is required")
        if self.eta is None:
            object.__setattr__(self, "eta", self.r / self.g_bar)
        elif self.r is None:
            object.__setattr__(self, "r", self.eta * self.g_bar)
        elif not math.isclose(self.r, self.eta * self.g_bar, rel_tol=1e-12, abs_tol=1e-12):
            raise ConfigError(
                f"game: r={self.r} conflicts with eta*g_bar={self.eta * self.g_bar}"
            )
        if self.c <= 0:
            raise ConfigError(f"game.c must be > 0, got {self.c}")
        if self.eta < 0 or self.r < 0:
            raise ConfigError("game: eta and r must be >= 0")


def fcpg_game_payoff(is_cooperator: bool, n_c: int, k_x: int, params: GameParams) -> float:
    """Single-game payoff under fixed cost per game.

    n_c cooperators each invest c; the pot c*n_c is multiplied by r and split
    among the k_x+1 members of the initiating node's game.
    """
    if params.variant is not GameVariant.FCPG:
        raise PreconditionError("fcpg_game_payoff requires the FCPG variant")
    if n_c < 0 or k_x < 0:
        raise PreconditionError("n_c and k_x must be non-negative")
    if n_c > k_x + 1:
        raise PreconditionError(
            f"{n_c} cooperators cannot fit in a game of {k_x + 1} members"
        )
    defector_share = params.c * params.r * n_c / (k_x + 1)
    return defector_share - params.c if is_cooperator else defector_share


def fcpi_game_payoff(graph: Graph, x: int, y: int, params: GameParams) -> float:
    """Payoff to member y from the game initiated by x, fixed cost per individual.

    Every cooperating member i contributes c/(k_i+1); the summed pot is
    multiplied by r and split among the k_x+1 members.
    """
    if params.variant is not GameVariant.FCPI:
        raise PreconditionError("fcpi_game_payoff requires the FCPI variant")
    members = set(graph.neighbors(x))
    members.add(x)
    if y not in members:
        raise PreconditionError(f"node {y} is not a member of {x}'s game")
    pot = 0.0
    for i in members:
        if graph.strategy(i).value:
            pot += params.c / (graph.degree(i) + 1)
    share = params.r * pot / (graph.degree(x) + 1)
    cost = params.c / (graph.degree(y) + 1) if graph.strategy(y).value else 0.0
    return share - cost


def _neighbor_sum(values: np.ndarray, flat: np.ndarray, row_idx: np.ndarray, n: int) -> np.ndarray:
    """out[i] = sum of values[j] over neighbors j of node i."""
    return np.bincount(row_idx, weights=values[flat], minlength=n)


def accumulate_fitness(graph: Graph, params: GameParams) -> dict[int, float]:
    """Recompute every node's fitness as the sum over its k+1 game payoffs.

    Previous fitness values are discarded; the table is written back onto the
    graph and also returned keyed by node id. Isolated nodes take part in no
    games and are assigned fitness 0 (they sit out until reconnected or
    removed).
    """
    n = graph.node_count
    if n == 0:
        raise PreconditionError("cannot accumulate fitness on an empty graph")
    degrees, flat, _, row_idx = graph.adjacency_csr()
    s = graph.strategy_codes().astype(np.float64)
    kp1 = degrees.astype(np.float64) + 1.0
    c, r = params.c, params.r
    if params.variant is GameVariant.FCPG:
        # n_c of the game initiated by x counts x itself plus its neighbors.
        n_c = s + _neighbor_sum(s, flat, row_idx, n)
        game_share = c * r * n_c / kp1
        fit = game_share + _neighbor_sum(game_share, flat, row_idx, n) - c * kp1 * s
    else:
        stake = c * s / kp1
        pot = stake + _neighbor_sum(stake, flat, row_idx, n)
        game_share = r * pot / kp1
        fit = game_share + _neighbor_sum(game_share, flat, row_idx, n) - c * s
    isolated = degrees == 0
    if isolated.any():
        fit[isolated] = 0.0
    graph._store_fitness(fit)
    return dict(zip(graph.nodes(), fit.tolist()))
