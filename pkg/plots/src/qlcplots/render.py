"""Figure rendering for trace CSVs: single panels and method-grid comparisons.

Output is static only (png / svg / pdf by file extension) and byte-stable:
repeated rendering of the same inputs produces identical files (fixed svg
hash salt, no embedded dates).
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .csvdata import PANEL_COLUMNS, PANEL_YLABEL, TraceFile, load_csv, panel_band, panel_column

plt.rcParams["svg.hashsalt"] = "qlcplots"

_SAVE_METADATA = {
    ".svg": {"Date": None},
    ".pdf": {"CreationDate": None},
}


@dataclass(frozen=True)
class Series:
    csv: str
    label: str


@dataclass(frozen=True)
class PlotSpec:
    """One panel: which CSVs to draw, what metric, limits, clipping, output."""

    series: tuple[Series, ...]
    panel: str
    out: str
    title: str | None = None
    xlim: tuple[float, float] | None = None
    ylim: tuple[float, float] | None = None
    beta_clip: tuple[float, float] | None = None

    def __post_init__(self):
        if not self.series:
            raise ValueError("a plot needs at least one input CSV")
        labels = [s.label for s in self.series]
        if len(set(labels)) != len(labels):
            raise ValueError(f"series labels must be unique, got {labels}")
        if self.panel not in PANEL_COLUMNS:
            raise ValueError(f"unknown panel kind {self.panel!r}")


@dataclass(frozen=True)
class PreparedSeries:
    """Exactly what gets drawn for one labeled input: x, y, optional sd band."""

    label: str
    x: np.ndarray
    y: np.ndarray
    band: np.ndarray | None


def prepare_series(spec: PlotSpec, panel: str | None = None) -> list[PreparedSeries]:
    """Resolve every input CSV into plot-ready arrays for one panel.

    Beta panels mask values outside the clip interval to NaN (line gaps), so
    no point outside the interval is ever drawn.
    """
    panel = panel or spec.panel
    prepared = []
    for s in spec.series:
        trace = load_csv(s.csv)
        y = panel_column(trace, panel).copy()
        band = panel_band(trace, panel)
        if panel == "beta" and spec.beta_clip is not None:
            lo, hi = spec.beta_clip
            y[(y < lo) | (y > hi)] = np.nan
        prepared.append(PreparedSeries(label=s.label, x=trace.layers, y=y, band=band))
    return prepared


def _draw_panel(ax, spec: PlotSpec, panel: str) -> None:
    for ps in prepare_series(spec, panel):
        ax.plot(ps.x, ps.y, label=ps.label, linewidth=1.2)
        if ps.band is not None:
            ax.fill_between(ps.x, ps.y - ps.band, ps.y + ps.band, alpha=0.2)
    ax.set_xlabel("layer k")
    ax.set_ylabel(PANEL_YLABEL[panel])
    if spec.xlim is not None:
        ax.set_xlim(*spec.xlim)
    if spec.ylim is not None:
        ax.set_ylim(*spec.ylim)
    elif panel == "beta" and spec.beta_clip is not None:
        ax.set_ylim(*spec.beta_clip)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize=8)


def _save(fig, out: str) -> None:
    ext = Path(out).suffix.lower()
    if ext not in (".png", ".svg", ".pdf"):
        raise ValueError(f"unsupported output format {ext!r}: use .png, .svg or .pdf")
    fig.savefig(out, metadata=_SAVE_METADATA.get(ext, {}))
    plt.close(fig)


def render(spec: PlotSpec) -> str:
    """Render one panel to spec.out; returns the output path."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0), constrained_layout=True)
    _draw_panel(ax, spec, spec.panel)
    if spec.title:
        ax.set_title(spec.title)
    _save(fig, spec.out)
    return spec.out


def render_comparison(spec: PlotSpec, panels: tuple[str, ...] = ("ratio", "beta", "success")) -> str:
    """Render one panel per metric with the same series overlaid on each."""
    if not panels:
        raise ValueError("comparison needs at least one panel")
    for p in panels:
        if p not in PANEL_COLUMNS:
            raise ValueError(f"unknown panel kind {p!r}")
    fig, axes = plt.subplots(1, len(panels), figsize=(5.0 * len(panels), 3.6), constrained_layout=True)
    axes = np.atleast_1d(axes)
    for ax, panel in zip(axes, panels):
        _draw_panel(ax, spec, panel)
    if spec.title:
        fig.suptitle(spec.title)
    _save(fig, spec.out)
    return spec.out
