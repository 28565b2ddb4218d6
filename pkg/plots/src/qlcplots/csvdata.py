"""Schema-aware loading of qlcbench CSV files.

Two schemas exist: per-run traces
(``layer,beta,a_val,b_val,e_p,r_a,p_succ``) and cross-instance aggregates
(``layer,mean_r_a,sd_r_a,mean_p,sd_p``). Files are detected by their header
line; nothing is ever recomputed from the physics, only read.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

RUN_HEADER = "layer,beta,a_val,b_val,e_p,r_a,p_succ"
AGG_HEADER = "layer,mean_r_a,sd_r_a,mean_p,sd_p"

# panel kind -> (run column, aggregate column or None, aggregate sd column)
PANEL_COLUMNS = {
    "ratio": ("r_a", "mean_r_a", "sd_r_a"),
    "success": ("p_succ", "mean_p", "sd_p"),
    "beta": ("beta", None, None),
}

PANEL_YLABEL = {
    "ratio": "approximation ratio r_A",
    "success": "success probability p",
    "beta": "control amplitude beta_k",
}


@dataclass(frozen=True)
class TraceFile:
    """One parsed CSV: its kind ("run" or "aggregate") and column arrays."""

    path: str
    kind: str
    columns: dict[str, np.ndarray]

    @property
    def layers(self) -> np.ndarray:
        return self.columns["layer"]


def load_csv(path: str | Path) -> TraceFile:
    """Parse a qlcbench CSV, detecting its schema from the header line."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ValueError(f"{path}: empty file")
    header = lines[0]
    if header == RUN_HEADER:
        kind = "run"
    elif header == AGG_HEADER:
        kind = "aggregate"
    else:
        raise ValueError(f"{path}: unrecognized header {header!r}")
    names = header.split(",")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != len(names):
            raise ValueError(f"{path}: malformed row {ln!r}")
        rows.append([float(v) for v in parts])
    if not rows:
        raise ValueError(f"{path}: no data rows")
    data = np.asarray(rows)
    columns = {name: data[:, i] for i, name in enumerate(names)}
    columns["layer"] = columns["layer"].astype(np.int64)
    return TraceFile(path=str(path), kind=kind, columns=columns)


def panel_column(trace: TraceFile, panel: str) -> np.ndarray:
    """The y-column a panel plots from this file; raises if the schema lacks it."""
    if panel not in PANEL_COLUMNS:
        raise ValueError(f"unknown panel kind {panel!r}; expected one of {sorted(PANEL_COLUMNS)}")
    run_col, agg_col, _ = PANEL_COLUMNS[panel]
    col = run_col if trace.kind == "run" else agg_col
    if col is None:
        raise ValueError(f"{trace.path}: {panel!r} panel needs a per-run trace (column missing in aggregate files)")
    return trace.columns[col]


def panel_band(trace: TraceFile, panel: str) -> np.ndarray | None:
    """Optional +/- sd band column (aggregate files on ratio/success panels)."""
    _, _, sd_col = PANEL_COLUMNS[panel]
    if trace.kind == "aggregate" and sd_col is not None:
        return trace.columns[sd_col]
    return None
