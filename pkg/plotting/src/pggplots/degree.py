"""Three-panel degree-distribution figures from `k,count` histogram CSVs.

The same distributions are shown on linear, lin-log (exponential decay
appears straight) and log-log (power-law decay appears straight) axes.
Pass histograms in presentation order, e.g. initial network, final network,
pure-growth reference; the last series is drawn dashed when it is labelled
as a reference.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib.pyplot as plt

from .common import SchemaError, parse_float, read_csv_rows, save_deterministic_svg

PANEL_SCALES = [("linear", "linear"), ("linear", "log"), ("log", "log")]
PANEL_TITLES = ["linear", "lin-log", "log-log"]

_SERIES_STYLES = ["o-", "x-", "^-", "s-"]


@dataclass(frozen=True)
class DegreeFigureReport:
    panels: int
    series: int
    output: Path


def _load_histogram(path: Path) -> list[tuple[int, float]]:
    rows = read_csv_rows(path, ["k", "count"])
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    hist = []
    for line, row in enumerate(rows, start=2):
        k = parse_float(row, "k", path, line)
        count = parse_float(row, "count", path, line)
        hist.append((int(k), count))
    total = sum(c for _, c in hist)
    if total <= 0:
        raise SchemaError(f"{path}: histogram has no mass")
    return [(k, c / total) for k, c in sorted(hist)]


def plot_degree_dist(
    histogram_csvs: list[str | Path],
    output_path: str | Path,
    labels: list[str] | None = None,
    reference_label: str = "reference",
) -> DegreeFigureReport:
    """Overlay normalised degree histograms on linear/lin-log/log-log panels."""
    paths = [Path(p) for p in histogram_csvs]
    if not paths:
        raise SchemaError("at least one histogram CSV is required")
    output_path = Path(output_path)
    if labels is None:
        labels = [p.stem for p in paths]
    if len(labels) != len(paths):
        raise SchemaError("labels must match the number of histogram files")
    series = [(label, _load_histogram(path)) for label, path in zip(labels, paths)]

    fig, axes = plt.subplots(1, 3, figsize=(12.6, 3.6), squeeze=False)
    for panel, ((xscale, yscale), title) in enumerate(zip(PANEL_SCALES, PANEL_TITLES)):
        ax = axes[0][panel]
        for idx, (label, hist) in enumerate(series):
            pts = hist
            if xscale == "log":
                pts = [(k, f) for k, f in hist if k > 0]
            xs = [k for k, _ in pts]
            ys = [f for _, f in pts]
            if label == reference_label:
                ax.plot(xs, ys, "--", color="black", linewidth=1, label=label)
            else:
                style = _SERIES_STYLES[idx % len(_SERIES_STYLES)]
                ax.plot(xs, ys, style, markersize=4, label=label)
        ax.set_xscale(xscale)
        ax.set_yscale(yscale)
        ax.set_xlabel("degree k")
        ax.set_ylabel("fraction of nodes")
        ax.set_title(title)
        ax.legend(fontsize=7)
    fig.tight_layout()
    save_deterministic_svg(fig, output_path)
    plt.close(fig)
    return DegreeFigureReport(panels=3, series=len(series), output=output_path)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pggplot-degree",
        description="Plot degree distributions on linear, lin-log and log-log axes.",
    )
    parser.add_argument("histograms", nargs="+", type=Path, help="k,count CSV files")
    parser.add_argument("-o", "--output", type=Path, required=True, help="output SVG path")
    parser.add_argument("--labels", nargs="+", default=None, help="one label per histogram")
    parser.add_argument(
        "--reference-label",
        default="reference",
        help="series with this label is drawn as a dashed reference",
    )
    args = parser.parse_args(argv)
    try:
        report = plot_degree_dist(
            args.histograms,
            args.output,
            labels=args.labels,
            reference_label=args.reference_label,
        )
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {report.output} ({report.panels} panels, {report.series} series)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
