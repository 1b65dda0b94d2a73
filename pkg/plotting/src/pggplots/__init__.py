"""Figure scripts over pggnet CSV outputs (sweep curves, degree histograms)."""

from .common import SchemaError
from .degree import DegreeFigureReport, plot_degree_dist
from .sweep import SweepFigureReport, plot_sweep

__version__ = "0.1.0"

__all__ = [
    "DegreeFigureReport",
    "SchemaError",
    "SweepFigureReport",
    "plot_degree_dist",
    "plot_sweep",
]
