"""Batch front-end: JSON configs, replicate runs, eta sweeps, snapshot stats.

Commands:
    run <config.json>       execute one configuration, write per-replicate
                            time series, final snapshots and a summary row
    sweep <sweep.json>      one run per eta value plus a combined sweep.csv
    netstats <edges.txt>    degree histogram and path-length summary of a
                            saved edge-list snapshot

Every CSV has a header row and a fixed column order; floats are written
with up to 17 significant digits so re-ingestion is lossless. Outputs are
byte-stable for a fixed config and seed, whatever the worker count.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path
from typing import Any, Mapping, Sequence

from .dynamics import DynamicsParams
from .engine import (
    FoundersScenario,
    PreExistingScenario,
    ReplicateSet,
    Scenario,
    SimConfig,
    TimeSeries,
    Topology,
    run_replicates,
)
from .errors import ConfigError, PggNetError
from .game import GameParams, GameVariant
from .graph import Strategy, read_edge_list, write_edge_list, write_node_table
from .metrics import average_shortest_path, degree_distribution

SUMMARY_COLUMNS = "eta,variant,scenario,topology,fluctuation,mean_coop,ci95,n_replicates"
TIMESERIES_COLUMNS = (
    "generation,n,cooperator_fraction,mean_degree,"
    "changed_strategies,nodes_added,nodes_removed"
)
NETSTATS_COLUMNS = "n,edges,mean_degree,mean_path,component_count,connected"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


# ----------------------------------------------------------------------
# config parsing; every error names the offending field


def _require_mapping(obj: Any, path: str) -> Mapping[str, Any]:
    if not isinstance(obj, Mapping):
        raise ConfigError(f"{path}: expected a JSON object")
    return obj


def _reject_unknown(obj: Mapping[str, Any], allowed: set[str], path: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        field = sorted(unknown)[0]
        raise ConfigError(f"{path}.{field}: unknown field")


def _get_int(obj: Mapping[str, Any], key: str, path: str, default: int | None = None) -> int:
    if key not in obj:
        if default is None:
            raise ConfigError(f"{path}.{key}: required field is missing")
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}.{key}: expected an integer, got {value!r}")
    return value

def _get_float(
    obj: Mapping[str, Any], key: str, path: str, default: float | None = None
) -> float:
    if key not in obj:
        if default is None:
            raise ConfigError(f"{path}.{key}: required field is missing")
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}: expected a number, got {value!r}")
    return float(value)


def _get_bool(obj: Mapping[str, Any], key: str, path: str, default: bool | None = None) -> bool:
    if key not in obj:
        if default is None:
            raise ConfigError(f"{path}.{key}: required field is missing")
        return default
    value = obj[key]
    if not isinstance(value, bool):
        raise ConfigError(f"{path}.{key}: expected true/false, got {value!r}")
    return value


def _get_str(obj: Mapping[str, Any], key: str, path: str) -> str:
    if key not in obj:
        raise ConfigError(f"{path}.{key}: required field is missing")
    value = obj[key]
    if not isinstance(value, str):
        raise ConfigError(f"{path}.{key}: expected a string, got {value!r}")
    return value


def parse_scenario(obj: Any, path: str = "scenario") -> Scenario:
    obj = _require_mapping(obj, path)
    kind = _get_str(obj, "type", path).lower()
    if kind == "founders":
        _reject_unknown(obj, {"type", "count", "strategy"}, path)
        count = _get_int(obj, "count", path, default=3)
        label = obj.get("strategy", "cooperate")
        try:
            strat = Strategy.from_label(label)
        except ConfigError:
            raise ConfigError(
                f"{path}.strategy: must be 'cooperate' or 'defect', got {label!r}"
            ) from None
        return FoundersScenario(count=count, strategy=strat)
    if kind == "preexisting":
        _reject_unknown(obj, {"type", "topology"}, path)
        label = _get_str(obj, "topology", path).lower()
        try:
            topo = Topology(label)
        except ValueError:
            raise ConfigError(
                f"{path}.topology: must be one of regular/random/scalefree, got {label!r}"
            ) from None
        return PreExistingScenario(topology=topo)
    raise ConfigError(f"{path}.type: must be 'founders' or 'preexisting', got {kind!r}")


def parse_game(obj: Any, path: str = "game", require_rate: bool = True) -> GameParams:
    obj = _require_mapping(obj, path)
    _reject_unknown(obj, {"variant", "eta", "r", "c", "g_bar"}, path)
    label = _get_str(obj, "variant", path).upper()
    try:
        variant = GameVariant(label)
    except ValueError:
        raise ConfigError(f"{path}.variant: must be FCPG or FCPI, got {label!r}") from None
    eta_given = "eta" in obj
    r_given = "r" in obj
    if not eta_given and not r_given and require_rate:
        raise ConfigError(f"{path}.eta: required field is missing (or give {path}.r)")
    kwargs: dict[str, Any] = {
        "c": _get_float(obj, "c", path, default=1.0),
        "g_bar": _get_float(obj, "g_bar", path, default=5.0),
    }
    if eta_given:
        kwargs["eta"] = _get_float(obj, "eta", path)
        if kwargs["eta"] < 0:
            raise ConfigError(f"{path}.eta: must be >= 0, got {kwargs['eta']}")
    if r_given:
        kwargs["r"] = _get_float(obj, "r", path)
        if kwargs["r"] < 0:
            raise ConfigError(f"{path}.r: must be >= 0, got {kwargs['r']}")
    if not eta_given and not r_given:
        kwargs["eta"] = 0.0  # sweep base: eta is supplied per run
    return GameParams(variant, **kwargs)


def parse_dynamics(obj: Any, path: str = "dynamics") -> DynamicsParams:
    obj = _require_mapping(obj, path)
    allowed = {
        "nodes_per_generation",
        "m",
        "max_size",
        "shrink_fraction",
        "tournament_fraction",
        "fluctuation_enabled",
    }
    _reject_unknown(obj, allowed, path)
    return DynamicsParams(
        nodes_per_generation=_get_int(obj, "nodes_per_generation", path, default=10),
        m=_get_int(obj, "m", path, default=2),
        max_size=_get_int(obj, "max_size", path, default=1000),
        shrink_fraction=_get_float(obj, "shrink_fraction", path, default=0.025),
        tournament_fraction=_get_float(obj, "tournament_fraction", path, default=0.01),
        fluctuation_enabled=_get_bool(obj, "fluctuation_enabled", path, default=False),
    )


def parse_sim_config(obj: Any, path: str = "", require_rate: bool = True) -> SimConfig:
    prefix = f"{path}." if path else ""
    label = path or "config"
    obj = _require_mapping(obj, label)
    allowed = {
        "scenario",
        "game",
        "dynamics",
        "generations",
        "replicates",
        "base_seed",
        "record_window",
    }
    _reject_unknown(obj, allowed, label)
    if "scenario" not in obj:
        raise ConfigError(f"{prefix}scenario: required field is missing")
    if "game" not in obj:
        raise ConfigError(f"{prefix}game: required field is missing")
    return SimConfig(
        scenario=parse_scenario(obj["scenario"], f"{prefix}scenario"),
        game=parse_game(obj["game"], f"{prefix}game", require_rate=require_rate),
        dynamics=parse_dynamics(obj.get("dynamics", {}), f"{prefix}dynamics"),
        generations=_get_int(obj, "generations", label, default=20000),
        replicates=_get_int(obj, "replicates", label, default=25),
        base_seed=_get_int(obj, "base_seed", label, default=0),
        record_window=_get_int(obj, "record_window", label, default=20),
    )


@dataclasses.dataclass(frozen=True)
class SweepSpec:
    eta_values: tuple[float, ...]
    base: SimConfig
    output_dir: str | None


def parse_sweep_spec(obj: Any) -> SweepSpec:
    obj = _require_mapping(obj, "sweep")
    _reject_unknown(obj, {"eta_values", "base", "output_dir"}, "sweep")
    raw = obj.get("eta_values")
    if not isinstance(raw, list) or not raw:
        raise ConfigError("eta_values: must be a non-empty list of numbers")
    values: list[float] = []
    for i, v in enumerate(raw):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"eta_values[{i}]: expected a number, got {v!r}")
        if v < 0:
            raise ConfigError(f"eta_values[{i}]: eta must be >= 0, got {v}")
        values.append(float(v))
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigError("eta_values: must be strictly increasing")
    if "base" not in obj:
        raise ConfigError("base: required field is missing")
    base = parse_sim_config(obj["base"], "base", require_rate=False)
    out = obj.get("output_dir")
    if out is not None and not isinstance(out, str):
        raise ConfigError(f"output_dir: expected a string path, got {out!r}")
    return SweepSpec(eta_values=tuple(values), base=base, output_dir=out)


def load_json(path: Path) -> Any:
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None


# ----------------------------------------------------------------------
# CSV emission


def _scenario_columns(config: SimConfig) -> tuple[str, str]:
    scenario = config.scenario
    if isinstance(scenario, FoundersScenario):
        return "founders", scenario.strategy.label
    return "preexisting", scenario.topology.value


def summary_row(config: SimConfig, result: ReplicateSet) -> str:
    kind, condition = _scenario_columns(config)
    return ",".join(
        [
            _fmt(config.game.eta),
            config.game.variant.value,
            kind,
            condition,
            "true" if config.dynamics.fluctuation_enabled else "false",
            _fmt(result.mean),
            _fmt(result.ci95),
            str(config.replicates),
        ]
    )


def write_timeseries_csv(series: TimeSeries, path: Path) -> None:
    lines = [TIMESERIES_COLUMNS + "\n"]
    for rec in series.records:
        lines.append(
            f"{rec.generation},{rec.n},{_fmt(rec.cooperator_fraction)},"
            f"{_fmt(rec.mean_degree)},{rec.changed_strategies},"
            f"{rec.nodes_added},{rec.nodes_removed}\n"
        )
    path.write_text("".join(lines), encoding="utf-8")


def write_run_outputs(result: ReplicateSet, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for i, series in enumerate(result.series):
        write_timeseries_csv(series, out_dir / f"timeseries_{i}.csv")
        write_edge_list(series.final_graph, out_dir / f"snapshot_{i}_edges.txt")
        write_node_table(series.final_graph, out_dir / f"snapshot_{i}_nodes.csv")
    summary = SUMMARY_COLUMNS + "\n" + summary_row(result.config, result) + "\n"
    (out_dir / "summary.csv").write_text(summary, encoding="utf-8")


# ----------------------------------------------------------------------
# commands


def cmd_run(
    config_path: Path,
    out_dir: Path,
    seed: int | None = None,
    threads: int | None = None,
) -> int:
    config = parse_sim_config(load_json(config_path))
    if seed is not None:
        config = dataclasses.replace(config, base_seed=seed)
    result = run_replicates(config, threads=threads)
    write_run_outputs(result, out_dir)
    print(f"run complete: {summary_row(config, result)}")
    return 0


def cmd_sweep(
    sweep_path: Path,
    out_dir: Path | None = None,
    seed: int | None = None,
    threads: int | None = None,
) -> int:
    spec = parse_sweep_spec(load_json(sweep_path))
    if out_dir is None:
        if spec.output_dir is None:
            raise ConfigError("output_dir: required (set it in the sweep file or pass --out)")
        out_dir = Path(spec.output_dir)
    base = spec.base
    if seed is not None:
        base = dataclasses.replace(base, base_seed=seed)
    rows = []
    for eta in spec.eta_values:
        game = GameParams(base.game.variant, eta=eta, c=base.game.c, g_bar=base.game.g_bar)
        config = dataclasses.replace(base, game=game)
        result = run_replicates(config, threads=threads)
        write_run_outputs(result, out_dir / f"eta_{eta:g}")
        rows.append(summary_row(config, result))
    sweep_csv = SUMMARY_COLUMNS + "\n" + "\n".join(rows) + "\n"
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "sweep.csv").write_text(sweep_csv, encoding="utf-8")
    print(f"sweep complete: {len(rows)} rows -> {out_dir / 'sweep.csv'}")
    return 0


def cmd_netstats(snapshot_path: Path, out_dir: Path) -> int:
    graph = read_edge_list(snapshot_path)
    hist = degree_distribution(graph)
    aspl = average_shortest_path(graph)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = snapshot_path.stem

    hist_lines = ["k,count\n"]
    for k, count in hist.counts.items():
        hist_lines.append(f"{k},{count}\n")
    (out_dir / f"{stem}_degree_hist.csv").write_text("".join(hist_lines), encoding="utf-8")

    summary = (
        f"{graph.node_count},{graph.edge_count},{_fmt(hist.mean_degree)},"
        f"{_fmt(aspl.mean_path)},{aspl.component_count},"
        f"{'true' if aspl.connected else 'false'}"
    )
    (out_dir / f"{stem}_netstats.csv").write_text(
        NETSTATS_COLUMNS + "\n" + summary + "\n", encoding="utf-8"
    )
    print(NETSTATS_COLUMNS)
    print(summary)
    return 0


# ----------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pggnet",
        description="Public goods games coevolving with growing, fluctuating networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one configuration")
    p_run.add_argument("config", type=Path, help="SimConfig JSON file")

    p_sweep = sub.add_parser("sweep", help="run a sweep over eta values")
    p_sweep.add_argument("sweep", type=Path, help="SweepSpec JSON file")

    p_net = sub.add_parser("netstats", help="degree/path stats of an edge-list snapshot")
    p_net.add_argument("snapshot", type=Path, help="edge-list file, one 'u v' per line")

    for p in (p_run, p_sweep, p_net):
        p.add_argument("--out", type=Path, default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override base_seed")
        p.add_argument(
            "--threads",
            type=int,
            default=None,
            help="replicate worker processes (default: all cores); outputs do not depend on it",
        )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            out = args.out if args.out is not None else Path("pggnet_out")
            return cmd_run(args.config, out, seed=args.seed, threads=args.threads)
        if args.command == "sweep":
            return cmd_sweep(args.sweep, out_dir=args.out, seed=args.seed, threads=args.threads)
        out = args.out if args.out is not None else Path("pggnet_out")
        return cmd_netstats(args.snapshot, out)
    except PggNetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
