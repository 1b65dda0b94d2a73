import json
import subprocess
import sys

import pytest

from pggplots import SchemaError, plot_degree_dist, plot_sweep

SWEEP_HEADER = "eta,variant,scenario,topology,fluctuation,mean_coop,ci95,n_replicates"


def fig1_grid_csv(tmp_path, ci="0.05"):
    # full Fig-1-style grid: 2 variants x static/fluctuating x 3 topologies
    rows = [SWEEP_HEADER]
    for variant in ("FCPG", "FCPI"):
        for fluct in ("false", "true"):
            for topo in ("regular", "random", "scalefree"):
                for i, eta in enumerate((0.2, 0.6, 1.0)):
                    coop = min(1.0, 0.1 + 0.3 * i)
                    rows.append(
                        f"{eta},{variant},preexisting,{topo},{fluct},{coop},{ci},10"
                    )
    path = tmp_path / "sweep.csv"
    path.write_text("\n".join(rows) + "\n")
    return path


def test_fig1_grid_yields_four_panels(tmp_path):
    csv = fig1_grid_csv(tmp_path)
    out = tmp_path / "fig1.svg"
    report = plot_sweep(csv, out)
    assert report.panels == 4
    assert report.curves == 12  # 3 topologies per panel
    assert report.points == 36
    assert report.reference_eta == 0.6
    payload = out.read_bytes()
    assert payload.startswith(b"<?xml")
    assert b"stroke-dasharray" in payload  # the dashed eta reference lines


def test_sweep_reruns_are_byte_identical(tmp_path):
    csv = fig1_grid_csv(tmp_path)
    a = tmp_path / "a.svg"
    b = tmp_path / "b.svg"
    plot_sweep(csv, a)
    plot_sweep(csv, b)
    assert a.read_bytes() == b.read_bytes()


def test_zero_ci_rows_render(tmp_path):
    csv = fig1_grid_csv(tmp_path, ci="0")
    out = tmp_path / "zero.svg"
    report = plot_sweep(csv, out)
    assert report.panels == 4
    assert out.exists()


def test_two_topology_static_sweep_is_single_panel(tmp_path):
    rows = [SWEEP_HEADER]
    for topo in ("regular", "scalefree"):
        for eta in (0.2, 0.8):
            rows.append(f"{eta},FCPG,preexisting,{topo},false,0.4,0.02,5")
    csv = tmp_path / "small.csv"
    csv.write_text("\n".join(rows) + "\n")
    report = plot_sweep(csv, tmp_path / "small.svg")
    assert report.panels == 1
    assert report.curves == 2


def test_missing_column_is_named(tmp_path):
    csv = tmp_path / "bad.csv"
    csv.write_text("eta,variant,scenario,topology,fluctuation,mean_coop,n_replicates\n")
    with pytest.raises(SchemaError) as err:
        plot_sweep(csv, tmp_path / "bad.svg")
    assert "ci95" in str(err.value)


def test_non_numeric_value_reports_row(tmp_path):
    csv = tmp_path / "bad.csv"
    csv.write_text(SWEEP_HEADER + "\n0.2,FCPG,preexisting,regular,false,oops,0.1,5\n")
    with pytest.raises(SchemaError) as err:
        plot_sweep(csv, tmp_path / "bad.svg")
    assert "row 2" in str(err.value)


# ----------------------------------------------------------------------
# degree distributions


def histogram_csv(tmp_path, name, pairs):
    path = tmp_path / name
    path.write_text("k,count\n" + "".join(f"{k},{c}\n" for k, c in pairs))
    return path


def test_degree_figure_three_panels(tmp_path):
    initial = histogram_csv(tmp_path, "initial.csv", [(2, 500), (3, 200), (8, 30), (40, 2)])
    final = histogram_csv(tmp_path, "final.csv", [(1, 40), (2, 180), (4, 300), (6, 120)])
    reference = histogram_csv(tmp_path, "cra.csv", [(2, 330), (4, 220), (7, 60), (12, 8)])
    out = tmp_path / "degree.svg"
    report = plot_degree_dist(
        [initial, final, reference],
        out,
        labels=["initial", "final", "reference"],
    )
    assert report.panels == 3
    assert report.series == 3
    payload = out.read_bytes()
    assert payload.startswith(b"<?xml")
    assert b"stroke-dasharray" in payload  # dashed pure-growth reference


def test_degree_reruns_are_byte_identical(tmp_path):
    hist = histogram_csv(tmp_path, "h.csv", [(2, 10), (3, 5), (4, 2)])
    a = tmp_path / "a.svg"
    b = tmp_path / "b.svg"
    plot_degree_dist([hist], a)
    plot_degree_dist([hist], b)
    assert a.read_bytes() == b.read_bytes()


def test_single_bin_histogram_renders(tmp_path):
    ring = histogram_csv(tmp_path, "ring.csv", [(4, 1000)])
    report = plot_degree_dist([ring], tmp_path / "ring.svg", labels=["ring"])
    assert report.series == 1


def test_degree_missing_column_is_named(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("degree,count\n4,10\n")
    with pytest.raises(SchemaError) as err:
        plot_degree_dist([path], tmp_path / "bad.svg")
    assert "'k'" in str(err.value)


def test_label_count_must_match(tmp_path):
    hist = histogram_csv(tmp_path, "h.csv", [(2, 10)])
    with pytest.raises(SchemaError):
        plot_degree_dist([hist], tmp_path / "x.svg", labels=["a", "b"])


# ----------------------------------------------------------------------
# end to end against the simulator CLI (external CSV interfaces only)


def test_plots_from_real_simulator_outputs(tmp_path):
    sweep_spec = {
        "eta_values": [0.0, 0.8],
        "base": {
            "scenario": {"type": "founders", "count": 3, "strategy": "defect"},
            "game": {"variant": "FCPG"},
            "dynamics": {"max_size": 50, "fluctuation_enabled": True,
                         "shrink_fraction": 0.05, "tournament_fraction": 0.05},
            "generations": 20,
            "replicates": 2,
            "base_seed": 4,
            "record_window": 5,
        },
        "output_dir": str(tmp_path / "runs"),
    }
    spec_path = tmp_path / "sweep.json"
    spec_path.write_text(json.dumps(sweep_spec))
    run = subprocess.run(
        [sys.executable, "-m", "pggnet.cli", "sweep", str(spec_path), "--threads", "1"],
        capture_output=True,
        text=True,
    )
    assert run.returncode == 0, run.stderr
    report = plot_sweep(tmp_path / "runs" / "sweep.csv", tmp_path / "fig.svg")
    assert report.panels == 1
    assert report.curves == 1

    snapshot = tmp_path / "runs" / "eta_0.8" / "snapshot_0_edges.txt"
    stats = subprocess.run(
        [sys.executable, "-m", "pggnet.cli", "netstats", str(snapshot),
         "--out", str(tmp_path / "stats")],
        capture_output=True,
        text=True,
    )
    assert stats.returncode == 0, stats.stderr
    hist_csv = tmp_path / "stats" / "snapshot_0_edges_degree_hist.csv"
    degree_report = plot_degree_dist([hist_csv], tmp_path / "hist.svg", labels=["final"])
    assert degree_report.panels == 3
