"""Acceptance suite: one test per release criterion, one verdict line each.

Run with `pytest -v -s tests/test_acceptance.py` to see the verdict lines.
The heavy shared simulations (fluctuating runs from three initial
topologies) execute once per session. Expect a few minutes of runtime.

Known state: the two static-equilibrium criteria (static heterogeneity
ordering, defector-founder lock-in) fail under the frozen update rule; see
the project notes for the analysis. They are implemented exactly as stated
and left red rather than weakened.
"""

import time
from collections import Counter

import numpy as np
import pytest

import pggnet as pg
from pggnet.cli import main as cli_main

from oracles import brute_force_fitness, random_test_graph

THREADS = None  # default: all cores; results are thread-count independent


def _verdict(name: str, ok: bool, detail: str = "") -> None:
    print(f"\nACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, f"{name} failed: {detail}"


def _normalized_hist(counts: Counter) -> dict[int, float]:
    total = sum(counts.values())
    return {k: v / total for k, v in counts.items()}


def _mean_degree_hist(graphs) -> dict[int, float]:
    acc: Counter = Counter()
    for g in graphs:
        for k, c in pg.degree_distribution(g).counts.items():
            acc[k] += c / len(graphs)
    return _normalized_hist(acc)


def _tv_distance(p: dict[int, float], q: dict[int, float]) -> float:
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


# ----------------------------------------------------------------------
# shared heavy runs: CRA-fluctuation from the three initial topologies
# (used by the degree-convergence, final-path-length and population-envelope
# criteria)


@pytest.fixture(scope="module")
def fluctuation_runs():
    out = {}
    for topology in (pg.Topology.REGULAR, pg.Topology.RANDOM, pg.Topology.SCALE_FREE):
        config = pg.SimConfig(
            scenario=pg.PreExistingScenario(topology),
            game=pg.GameParams(pg.GameVariant.FCPG, eta=0.8),
            dynamics=pg.DynamicsParams(fluctuation_enabled=True),
            generations=2000,
            replicates=5,
            base_seed=2025,
            record_window=20,
        )
        out[topology] = pg.run_replicates(config, threads=THREADS)
    return out


# ----------------------------------------------------------------------
# criteria


def test_c01_payoff_oracle_equivalence():
    # 200 random graphs, both variants, against the brute-force game-by-game
    # oracle, to 1e-12, in under 10 seconds
    rng = np.random.default_rng(99)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        g = random_test_graph(rng, max_nodes=20, min_degree_one=False)
        c = float(rng.uniform(0.01, 2.0))
        r = float(rng.uniform(0.0, 6.0))
        for variant in (pg.GameVariant.FCPG, pg.GameVariant.FCPI):
            params = pg.GameParams(variant, r=r, c=c)
            expected = brute_force_fitness(g, params)
            actual = pg.accumulate_fitness(g, params)
            worst = max(worst, max(abs(expected[u] - actual[u]) for u in expected))
    elapsed = time.perf_counter() - start
    _verdict(
        "C01 payoff-oracle-equivalence",
        worst < 1e-12 and elapsed < 10.0,
        f"worst abs diff {worst:.2e}, {elapsed:.1f}s",
    )


def test_c02_conservation_laws():
    rng = np.random.default_rng(31)
    worst = 0.0
    for _ in range(100):
        g = random_test_graph(rng, max_nodes=25, min_degree_one=True)
        c = float(rng.uniform(0.01, 2.0))
        r = float(rng.uniform(0.0, 6.0))
        total = sum(pg.accumulate_fitness(g, pg.GameParams(pg.GameVariant.FCPG, r=r, c=c)).values())
        coop_memberships = sum(
            g.degree(u) + 1 for u in g.nodes() if g.strategy(u) is pg.Strategy.COOPERATE
        )
        worst = max(worst, abs(total - (r - 1) * c * coop_memberships))
        total = sum(pg.accumulate_fitness(g, pg.GameParams(pg.GameVariant.FCPI, r=r, c=c)).values())
        worst = max(worst, abs(total - (r - 1) * c * g.cooperator_count()))
    _verdict("C02 conservation-laws", worst < 1e-9, f"worst abs violation {worst:.2e}")


def test_c03_path_length_numbers():
    start = time.perf_counter()
    ring = pg.average_shortest_path(pg.gen_ring_lattice(1000, 4))
    ring_ok = 120.0 <= ring.mean_path <= 130.0
    disconnected = sum(
        1
        for seed in range(20)
        if not pg.average_shortest_path(
            pg.gen_er_random(1000, 2000, np.random.default_rng(seed))
        ).connected
    )
    er_ok = disconnected >= 18  # >= 90% of 20 seeds
    ba = pg.average_shortest_path(pg.gen_barabasi_albert(1000, 2, np.random.default_rng(1)))
    ba_ok = 3.3 <= ba.mean_path <= 4.7
    elapsed = time.perf_counter() - start
    _verdict(
        "C03 path-length-numbers",
        ring_ok and er_ok and ba_ok and elapsed < 60.0,
        f"ring {ring.mean_path:.2f}, ER disconnected {disconnected}/20, "
        f"BA {ba.mean_path:.2f}, {elapsed:.0f}s",
    )


def test_c04_fluctuation_degree_convergence(fluctuation_runs):
    hists = {
        topo: _mean_degree_hist([ts.final_graph for ts in rs.series])
        for topo, rs in fluctuation_runs.items()
    }
    ba_initial = _normalized_hist(
        Counter(pg.degree_distribution(pg.gen_barabasi_albert(1000, 2, np.random.default_rng(7))).counts)
    )
    topos = list(hists)
    pairwise = {
        f"{a.value}/{b.value}": _tv_distance(hists[a], hists[b])
        for i, a in enumerate(topos)
        for b in topos[i + 1 :]
    }
    from_ba = {t.value: _tv_distance(hists[t], ba_initial) for t in topos}
    ok = all(v < 0.08 for v in pairwise.values()) and all(v > 0.2 for v in from_ba.values())
    _verdict(
        "C04 fluctuation-degree-convergence",
        ok,
        f"pairwise TV {pairwise}, TV from BA initial {from_ba}",
    )


def test_c05_final_path_lengths(fluctuation_runs):
    paths = []
    for rs in fluctuation_runs.values():
        for ts in rs.series:
            paths.append(pg.average_shortest_path(ts.final_graph).mean_path)
    ok = all(5.0 <= p <= 8.0 for p in paths)
    _verdict(
        "C05 final-path-lengths",
        ok,
        f"range [{min(paths):.2f}, {max(paths):.2f}] over {len(paths)} snapshots",
    )


def test_c06_static_heterogeneity_ordering():
    results = {}
    for topology in (pg.Topology.REGULAR, pg.Topology.RANDOM, pg.Topology.SCALE_FREE):
        config = pg.SimConfig(
            scenario=pg.PreExistingScenario(topology),
            game=pg.GameParams(pg.GameVariant.FCPG, eta=0.8),
            dynamics=pg.DynamicsParams(fluctuation_enabled=False),
            generations=2000,
            replicates=10,
            base_seed=77,
            record_window=20,
        )
        rs = pg.run_replicates(config, threads=THREADS)
        results[topology] = (rs.mean, rs.ci95)
    sf_mean, sf_ci = results[pg.Topology.SCALE_FREE]
    vs_random = sf_mean - results[pg.Topology.RANDOM][0] > sf_ci + results[pg.Topology.RANDOM][1]
    vs_regular = sf_mean - results[pg.Topology.REGULAR][0] > sf_ci + results[pg.Topology.REGULAR][1]
    detail = ", ".join(
        f"{t.value} {m:.3f}+-{ci:.3f}" for t, (m, ci) in results.items()
    )
    _verdict("C06 static-heterogeneity-ordering", vs_random and vs_regular, detail)


def test_c07_defector_founder_lockin():
    outcomes = {}
    for fluctuating in (False, True):
        config = pg.SimConfig(
            scenario=pg.FoundersScenario(3, pg.Strategy.DEFECT),
            game=pg.GameParams(pg.GameVariant.FCPG, eta=1.0),
            dynamics=pg.DynamicsParams(fluctuation_enabled=fluctuating),
            generations=2000,
            replicates=10,
            base_seed=101,
            record_window=20,
        )
        outcomes[fluctuating] = pg.run_replicates(config, threads=THREADS)
    static, fluct = outcomes[False], outcomes[True]
    locked = static.mean < 0.5
    rescued = fluct.mean > static.mean and (fluct.mean - fluct.ci95) > (static.mean + static.ci95)
    _verdict(
        "C07 defector-founder-lockin",
        locked and rescued,
        f"non-fluctuating {static.mean:.3f}+-{static.ci95:.3f} (<0.5: {locked}), "
        f"fluctuating {fluct.mean:.3f}+-{fluct.ci95:.3f} (separated: {rescued})",
    )


def test_c08_zero_reward_limit():
    cases = [
        ("founders-coop fluct FCPG", pg.FoundersScenario(3, pg.Strategy.COOPERATE), True, pg.GameVariant.FCPG),
        ("founders-defect static FCPG", pg.FoundersScenario(3, pg.Strategy.DEFECT), False, pg.GameVariant.FCPG),
        ("regular static FCPG", pg.PreExistingScenario(pg.Topology.REGULAR), False, pg.GameVariant.FCPG),
        ("random fluct FCPI", pg.PreExistingScenario(pg.Topology.RANDOM), True, pg.GameVariant.FCPI),
        ("scalefree static FCPI", pg.PreExistingScenario(pg.Topology.SCALE_FREE), False, pg.GameVariant.FCPI),
    ]
    worst_name, worst = "", -1.0
    for name, scenario, fluctuating, variant in cases:
        config = pg.SimConfig(
            scenario=scenario,
            game=pg.GameParams(variant, eta=0.0),
            dynamics=pg.DynamicsParams(fluctuation_enabled=fluctuating),
            generations=800,
            replicates=3,
            base_seed=5,
            record_window=20,
        )
        rs = pg.run_replicates(config, threads=THREADS)
        if rs.mean > worst:
            worst_name, worst = name, rs.mean
    _verdict(
        "C08 zero-reward-limit",
        worst < 0.05,
        f"highest final cooperation {worst:.4f} ({worst_name})",
    )


def test_c09_cli_determinism(tmp_path):
    import json

    config = {
        "scenario": {"type": "founders", "count": 3, "strategy": "defect"},
        "game": {"variant": "FCPG", "eta": 0.8},
        "dynamics": {"max_size": 120, "fluctuation_enabled": True},
        "generations": 60,
        "replicates": 4,
        "base_seed": 31,
        "record_window": 10,
    }
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps(config))
    payloads = []
    for name, threads in (("a", "1"), ("b", "1"), ("c", "4")):
        out = tmp_path / name
        code = cli_main(["run", str(cfg), "--out", str(out), "--threads", threads])
        assert code == 0
        payloads.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    ok = payloads[0] == payloads[1] == payloads[2]
    _verdict(
        "C09 cli-determinism",
        ok,
        f"{len(payloads[0])} files byte-compared across reruns and thread counts",
    )


def test_c10_population_envelope(fluctuation_runs):
    low, high = 10**9, 0
    for rs in fluctuation_runs.values():
        for ts in rs.series:
            sizes = [rec.n for rec in ts.records]
            at_cap = sizes.index(1000)
            tail = sizes[at_cap:]
            low = min(low, min(tail))
            high = max(high, max(tail))
    ok = low >= 900 and high <= 1000
    _verdict("C10 population-envelope", ok, f"recorded N range after cap [{low}, {high}]")
