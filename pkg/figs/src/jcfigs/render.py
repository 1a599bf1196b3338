"""Render figure-style plots from the simulator's CSV outputs.

Reads the fixed CSV schemas written by the jcdimer CLI and produces
raster images: heatmaps over (time, swept parameter) and line plots for
small parameter families.  Concurrence color scales are clamped to
[0, 1]; entropy scales autoscale so values above one ebit stay visible.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


class SchemaError(Exception):
    """CSV does not carry the columns the figure needs."""


AXIS_LABELS = {
    "gt_over_pi": "gt/π",
    "j_over_g": "J/g",
    "delta_over_g": "Δ/g",
    "alpha": "α",
    "concurrence": "C",
    "epsilon": "ε",
    "P": "P",
    "C_retrieved": "C (retrieved)",
    "C_projected": "C (projected)",
    "P_projection": "P (projection)",
}


@dataclass(frozen=True)
class FigureSpec:
    name: str
    kind: str  # "heatmap" or "lines"
    sweep_column: str
    value_columns: tuple
    unit_scale: tuple  # per value column: clamp color range to [0, 1]


def _heat(name, sweep, columns, unit):
    return FigureSpec(name=name, kind="heatmap", sweep_column=sweep,
                      value_columns=columns, unit_scale=unit)


def _lines(name, sweep):
    return FigureSpec(name=name, kind="lines", sweep_column=sweep,
                      value_columns=("concurrence",), unit_scale=(True,))


def _catalog() -> dict:
    specs = [
        _heat("fig2a", "j_over_g", ("concurrence",), (True,)),
        _heat("fig2b", "delta_over_g", ("concurrence",), (True,)),
        _heat("fig3a", "j_over_g", ("concurrence",), (True,)),
        _heat("fig3b", "delta_over_g", ("concurrence",), (True,)),
        _lines("fig4a", "alpha"),
        _lines("fig4b", "alpha"),
        _lines("fig5", "delta_over_g"),
        _heat("fig6a", "j_over_g", ("concurrence",), (True,)),
        _heat("fig6b", "j_over_g", ("concurrence",), (True,)),
        _heat("fig6c", "j_over_g", ("concurrence",), (True,)),
        _heat("fig6d", "delta_over_g", ("concurrence",), (True,)),
        _heat("fig6e", "delta_over_g", ("concurrence",), (True,)),
        _heat("fig6f", "delta_over_g", ("concurrence",), (True,)),
    ]
    for stem in ("fig7", "fig9"):
        for panel in "abc":
            specs.append(_heat(stem + panel, "alpha", ("epsilon", "P"), (False, True)))
    for stem in ("fig8", "fig10"):
        for panel in "abc":
            specs.append(
                _heat(stem + panel, "alpha", ("C_retrieved", "C_projected"), (True, True))
            )
    return {spec.name: spec for spec in specs}


FIGURES = _catalog()


def _load_table(csv_path: Path, required: list) -> dict:
    if not csv_path.is_file():
        raise SchemaError(f"csv not found: {csv_path}")
    with open(csv_path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(
                f"{csv_path.name}: empty file, missing columns: {', '.join(required)}"
            ) from None
        missing = [col for col in required if col not in header]
        if missing:
            raise SchemaError(f"{csv_path.name}: missing columns: {', '.join(missing)}")
        rows = list(reader)
    table = {col: np.empty(len(rows)) for col in required}
    index = {col: header.index(col) for col in required}
    for i, row in enumerate(rows):
        if len(row) != len(header):
            raise SchemaError(f"{csv_path.name}: row {i + 2} has {len(row)} fields")
        for col in required:
            cell = row[index[col]]
            table[col][i] = float(cell) if cell != "" else math.nan
    return table


def _pivot(table, sweep_column, value_column):
    xs = np.unique(table["gt_over_pi"])
    ys = np.unique(table[sweep_column])
    grid = np.full((len(ys), len(xs)), math.nan)
    xpos = {v: i for i, v in enumerate(xs)}
    ypos = {v: i for i, v in enumerate(ys)}
    for x, y, v in zip(table["gt_over_pi"], table[sweep_column], table[value_column]):
        grid[ypos[y], xpos[x]] = v
    return xs, ys, grid


def build_figure(spec: FigureSpec, table: dict):
    """Matplotlib figure plus per-panel scale info."""
    panels = []
    if spec.kind == "heatmap":
        fig, axes = plt.subplots(
            len(spec.value_columns), 1,
            figsize=(6.4, 3.2 * len(spec.value_columns)),
            squeeze=False,
        )
        for ax, column, unit in zip(axes[:, 0], spec.value_columns, spec.unit_scale):
            xs, ys, grid = _pivot(table, spec.sweep_column, column)
            data_max = float(np.nanmax(grid)) if np.isfinite(grid).any() else 0.0
            vmax = 1.0 if unit else max(data_max, 1e-12)
            mesh = ax.pcolormesh(
                xs, ys, np.ma.masked_invalid(grid),
                shading="nearest", vmin=0.0, vmax=vmax, cmap="viridis",
            )
            fig.colorbar(mesh, ax=ax, label=AXIS_LABELS.get(column, column))
            ax.set_xlabel(AXIS_LABELS["gt_over_pi"])
            ax.set_ylabel(AXIS_LABELS.get(spec.sweep_column, spec.sweep_column))
            panels.append({"column": column, "vmax": vmax, "data_max": data_max})
    else:
        fig, ax = plt.subplots(figsize=(6.4, 4.0))
        column = spec.value_columns[0]
        values = np.unique(table[spec.sweep_column])
        for value in values:
            mask = table[spec.sweep_column] == value
            order = np.argsort(table["gt_over_pi"][mask])
            label = f"{AXIS_LABELS.get(spec.sweep_column, spec.sweep_column)}={value:g}"
            ax.plot(
                table["gt_over_pi"][mask][order], table[column][mask][order], label=label
            )
        ax.set_xlabel(AXIS_LABELS["gt_over_pi"])
        ax.set_ylabel(AXIS_LABELS.get(column, column))
        ax.set_ylim(-0.02, 1.02)
        ax.legend(loc="best", fontsize=8)
        data_max = float(np.nanmax(table[column])) if len(table[column]) else 0.0
        panels.append({"column": column, "vmax": 1.0, "data_max": data_max})
    fig.suptitle(spec.name)
    fig.tight_layout()
    return fig, panels


def render(figure_name: str, data_dir, out_path) -> dict:
    """Render one named figure from data_dir/<name>.csv onto out_path.

    Returns render info ({"panels": [...], "out": path}); raises
    SchemaError for unknown names or nonconforming CSV files.
    """
    spec = FIGURES.get(figure_name)
    if spec is None:
        raise SchemaError(
            f"unknown figure {figure_name!r}; known: {', '.join(sorted(FIGURES))}"
        )
    required = ["gt_over_pi", spec.sweep_column, *spec.value_columns, "norm_error"]
    table = _load_table(Path(data_dir) / f"{figure_name}.csv", required)
    fig, panels = build_figure(spec, table)
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=130)
    plt.close(fig)
    return {"out": str(out), "panels": panels}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="jcfigs", description="Render jcdimer CSV outputs as figures."
    )
    parser.add_argument("--fig", required=True, metavar="NAME")
    parser.add_argument("--data", required=True, metavar="DIR")
    parser.add_argument("--out", required=True, metavar="PATH")
    args = parser.parse_args(argv)
    try:
        info = render(args.fig, args.data, args.out)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    print(info["out"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
