"""CSV/JSON writers and readers with byte-stable formatting.

Floats in CSV files are written with 17 significant digits, which round-trips
IEEE doubles exactly and keeps golden files diffable.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .discretization import Grid, WeightedSignal

__all__ = [
    "fmt",
    "write_csv",
    "read_csv",
    "write_signal_csv",
    "read_signal_csv",
    "write_spectrum_csv",
    "write_json",
]


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(x) for x in row])
    return path


def read_csv(path) -> dict:
    """Columns of a headed numeric CSV as float arrays."""
    with Path(path).open(newline="", encoding="utf-8") as fh:
        r = csv.reader(fh)
        header = next(r, None)
        if not header:
            raise ValueError(f"{path}: missing header row")
        data = [row for row in r if row]
    cols = np.array(data, dtype=float).reshape(-1, len(header)) if data else np.empty((0, len(header)))
    return {name.strip(): cols[:, i] for i, name in enumerate(header)}


def write_signal_csv(path, f: WeightedSignal) -> Path:
    g = f.grid
    rows = zip(g.t_nodes, g.y_nodes, f.samples.real, f.samples.imag)
    return write_csv(path, ["t", "y", "re", "im"], rows)


def read_signal_csv(path, grid: Grid, atol: float = 1e-9) -> WeightedSignal:
    """Load a t,y,re,im signal and check that it lives on ``grid``."""
    cols = read_csv(path)
    missing = {"y", "re", "im"} - set(cols)
    if missing:
        raise ValueError(f"{path}: missing columns {sorted(missing)}")
    if cols["y"].shape != grid.y_nodes.shape or not np.allclose(cols["y"], grid.y_nodes, rtol=0, atol=atol):
        raise ValueError(f"{path}: y column does not match the grid (L={grid.half_width}, N={grid.n_points})")
    return WeightedSignal(cols["re"] + 1j * cols["im"], grid)


def write_spectrum_csv(path, F) -> Path:
    rows = zip(F.grid.xi_nodes, F.samples.real, F.samples.imag)
    return write_csv(path, ["xi", "re", "im"], rows)


def write_json(path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
