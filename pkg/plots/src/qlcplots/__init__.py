"""Static figure tool for qlcbench trace and aggregate CSVs."""

from .csvdata import TraceFile, load_csv
from .render import PlotSpec, PreparedSeries, Series, prepare_series, render, render_comparison

__version__ = "0.1.0"
