"""Cooperation-versus-eta figures from sweep CSVs.

One panel per (game variant, fluctuation mode), one curve per network
condition (topology or founder strategy), error bars from the ci95 column
and a dashed vertical reference at eta = 0.6. A full grid input (two
variants x static/fluctuating) yields the four-panel layout.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib.pyplot as plt

from .common import SchemaError, parse_float, read_csv_rows, save_deterministic_svg

REQUIRED_COLUMNS = [
    "eta",
    "variant",
    "scenario",
    "topology",
    "fluctuation",
    "mean_coop",
    "ci95",
    "n_replicates",
]

REFERENCE_ETA = 0.6

_CURVE_STYLES = ["o-", "x-", "^-", "s-", "d-", "v-"]


@dataclass(frozen=True)
class SweepFigureReport:
    panels: int
    curves: int
    points: int
    reference_eta: float
    output: Path


def _panel_key(row: dict[str, str]) -> tuple[str, str]:
    mode = "fluctuating" if row["fluctuation"].strip().lower() == "true" else "static"
    return row["variant"].strip(), mode


def _curve_key(row: dict[str, str]) -> str:
    return f"{row['scenario'].strip()}:{row['topology'].strip()}"


def plot_sweep(
    sweep_csv: str | Path,
    output_path: str | Path,
    reference_eta: float = REFERENCE_ETA,
) -> SweepFigureReport:
    """Render one sweep CSV to an SVG figure; returns layout metadata."""
    sweep_csv = Path(sweep_csv)
    output_path = Path(output_path)
    rows = read_csv_rows(sweep_csv, REQUIRED_COLUMNS)
    if not rows:
        raise SchemaError(f"{sweep_csv}: no data rows")

    panels: dict[tuple[str, str], dict[str, list[tuple[float, float, float]]]] = {}
    for line, row in enumerate(rows, start=2):
        eta = parse_float(row, "eta", sweep_csv, line)
        mean = parse_float(row, "mean_coop", sweep_csv, line)
        ci = parse_float(row, "ci95", sweep_csv, line)
        panel = panels.setdefault(_panel_key(row), {})
        panel.setdefault(_curve_key(row), []).append((eta, mean, ci))

    # fixed panel ordering: variants alphabetically, static before fluctuating
    order = sorted(panels, key=lambda key: (key[0], key[1] != "static"))
    n_panels = len(order)
    if n_panels == 4:
        n_rows, n_cols = 2, 2
    else:
        n_rows, n_cols = 1, n_panels
    fig, axes = plt.subplots(
        n_rows, n_cols, figsize=(4.2 * n_cols, 3.4 * n_rows), squeeze=False
    )

    curves = 0
    points = 0
    for idx, key in enumerate(order):
        ax = axes[idx // n_cols][idx % n_cols]
        variant, mode = key
        for style_idx, label in enumerate(sorted(panels[key])):
            series = sorted(panels[key][label])
            xs = [p[0] for p in series]
            ys = [p[1] for p in series]
            errs = [p[2] for p in series]
            style = _CURVE_STYLES[style_idx % len(_CURVE_STYLES)]
            ax.errorbar(xs, ys, yerr=errs, fmt=style, markersize=4, capsize=2, label=label)
            curves += 1
            points += len(series)
        ax.axvline(reference_eta, linestyle="--", color="grey", linewidth=1)
        ax.set_ylim(-0.02, 1.02)
        ax.set_xlabel("eta")
        ax.set_ylabel("final fraction of cooperators")
        ax.set_title(f"{variant}, {mode}")
        ax.legend(fontsize=7)
    fig.tight_layout()
    save_deterministic_svg(fig, output_path)
    plt.close(fig)
    return SweepFigureReport(
        panels=n_panels,
        curves=curves,
        points=points,
        reference_eta=reference_eta,
        output=output_path,
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pggplot-sweep", description="Plot cooperation-vs-eta sweep curves."
    )
    parser.add_argument("sweep_csv", type=Path)
    parser.add_argument("-o", "--output", type=Path, required=True, help="output SVG path")
    parser.add_argument(
        "--reference-eta", type=float, default=REFERENCE_ETA, help="dashed reference line"
    )
    args = parser.parse_args(argv)
    try:
        report = plot_sweep(args.sweep_csv, args.output, reference_eta=args.reference_eta)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {report.output} ({report.panels} panels, {report.curves} curves)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
