"""Shared CSV parsing and deterministic matplotlib setup."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
# reruns on identical inputs must produce identical bytes
matplotlib.rcParams["svg.hashsalt"] = "pggplots"
matplotlib.rcParams["svg.fonttype"] = "none"
matplotlib.rcParams["figure.dpi"] = 100


class SchemaError(ValueError):
    """Input CSV does not match the expected schema."""


def read_csv_rows(path: Path, required: list[str]) -> list[dict[str, str]]:
    """Read a headered CSV, insisting on the required columns."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in required:
            if column not in header:
                raise SchemaError(f"{path}: missing required column '{column}'")
        return list(reader)


def parse_float(row: dict[str, str], column: str, path: Path, line: int) -> float:
    try:
        return float(row[column])
    except (ValueError, TypeError):
        raise SchemaError(
            f"{path}: row {line}: column '{column}' is not numeric ({row.get(column)!r})"
        ) from None


def save_deterministic_svg(fig, output_path: Path) -> None:
    output_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(output_path, format="svg", metadata={"Date": None})
