"""Seed-reproducible public goods games on growing, fluctuating networks."""

from .dynamics import AttritionReport, DynamicsParams, grow, prune, tournament_shortlist
from .engine import (
    FoundersScenario,
    GenerationRecord,
    PreExistingScenario,
    ReplicateSet,
    SimConfig,
    TimeSeries,
    Topology,
    build_initial_graph,
    run_generation,
    run_replicates,
    run_simulation,
)
from .errors import (
    ConfigError,
    InvariantError,
    PggNetError,
    PreconditionError,
    SnapshotParseError,
)
from .evolution import UpdateReport, replacement_probability, update_strategies
from .game import (
    GameParams,
    GameVariant,
    accumulate_fitness,
    fcpg_game_payoff,
    fcpi_game_payoff,
)
from .graph import (
    Graph,
    RemovalReport,
    Strategy,
    gen_barabasi_albert,
    gen_er_random,
    gen_founders,
    gen_ring_lattice,
    read_edge_list,
    write_edge_list,
    write_node_table,
)
from .metrics import (
    ASPLResult,
    DegreeHistogram,
    aggregate_ci,
    average_shortest_path,
    cooperator_fraction,
    degree_distribution,
    final_cooperation,
)

__version__ = "0.1.0"

__all__ = [
    "ASPLResult",
    "AttritionReport",
    "ConfigError",
    "DegreeHistogram",
    "DynamicsParams",
    "FoundersScenario",
    "GameParams",
    "GameVariant",
    "GenerationRecord",
    "Graph",
    "InvariantError",
    "PggNetError",
    "PreExistingScenario",
    "PreconditionError",
    "RemovalReport",
    "ReplicateSet",
    "SimConfig",
    "SnapshotParseError",
    "Strategy",
    "TimeSeries",
    "Topology",
    "UpdateReport",
    "accumulate_fitness",
    "aggregate_ci",
    "average_shortest_path",
    "build_initial_graph",
    "cooperator_fraction",
    "degree_distribution",
    "fcpg_game_payoff",
    "fcpi_game_payoff",
    "final_cooperation",
    "gen_barabasi_albert",
    "gen_er_random",
    "gen_founders",
    "gen_ring_lattice",
    "grow",
    "prune",
    "read_edge_list",
    "replacement_probability",
    "run_generation",
    "run_replicates",
    "run_simulation",
    "tournament_shortlist",
    "update_strategies",
    "write_edge_list",
    "write_node_table",
]
