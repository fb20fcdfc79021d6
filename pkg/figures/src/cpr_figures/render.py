"""Render figure facsimiles from the solver's reproduction CSVs.

This package never recomputes numerics: the CSVs emitted by
`fragile-cpr reproduce` are the single source of truth.  Rendering is
read-only, so rerunning regenerates identical images from identical data.

CSV dialect: comma-separated, '.' decimal, one header row, LF endings,
'#'-prefixed `key=value` metadata lines.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


class MissingInputError(FileNotFoundError):
    """A referenced CSV file does not exist."""


class SchemaMismatchError(ValueError):
    """A CSV lacks a required column, has no data, or breaks a panel rule."""


@dataclass(frozen=True)
class SeriesSpec:
    column: str
    label: str
    style: str = "-"


@dataclass(frozen=True)
class PanelSpec:
    """One axes: an x column, one or more y series, optional scale/markers.

    markers lists metadata keys (e.g. thresholds) drawn as vertical lines;
    log-scale panels reject non-positive plotted values.
    """

    csv_name: str
    x_column: str
    series: tuple[SeriesSpec, ...]
    title: str
    x_label: str
    y_label: str
    y_scale: str = "linear"
    markers: tuple[str, ...] = ()
    zero_line: bool = False


@dataclass(frozen=True)
class FigureSpec:
    name: str
    panels: tuple[PanelSpec, ...]
    size: tuple[float, float] = (6.4, 4.8)


def read_table(path: str) -> tuple[dict[str, list[float]], dict[str, str]]:
    """Parse one CSV into float columns plus its metadata mapping."""
    if not os.path.exists(path):
        raise MissingInputError(f"input CSV not found: {path}")
    meta: dict[str, str] = {}
    header: list[str] = []
    columns: dict[str, list[float]] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, value = body.split("=", 1)
                    meta[key.strip()] = value.strip()
                continue
            cells = line.split(",")
            if not header:
                header = cells
                columns = {name: [] for name in header}
                continue
            for name, cell in zip(header, cells):
                columns[name].append(float(cell) if cell else math.nan)
    if not header or not next(iter(columns.values()), []):
        raise SchemaMismatchError(f"{path}: no header or no data rows")
    return columns, meta


def _column(columns: dict, name: str, path: str) -> list[float]:
    if name not in columns:
        raise SchemaMismatchError(
            f"{path}: missing column {name!r} (has {', '.join(columns)})")
    return columns[name]


def _render_panel(ax, panel: PanelSpec, in_dir: str) -> None:
    path = os.path.join(in_dir, panel.csv_name)
    columns, meta = read_table(path)
    xs = _column(columns, panel.x_column, path)
    for series in panel.series:
        ys = _column(columns, series.column, path)
        pairs = [(x, y) for x, y in zip(xs, ys) if not math.isnan(y)]
        if panel.y_scale == "log":
            bad = [y for _, y in pairs if y <= 0.0]
            if bad:
                raise SchemaMismatchError(
                    f"{path}: column {series.column!r} has non-positive values "
                    f"on a log-scale panel")
        ax.plot([p[0] for p in pairs], [p[1] for p in pairs],
                series.style, label=series.label)
    for key in panel.markers:
        if key in meta:
            ax.axvline(float(meta[key]), color="grey", linestyle=":",
                       linewidth=1.0)
            ax.annotate(key, xy=(float(meta[key]), 0.02),
                        xycoords=("data", "axes fraction"), fontsize=8,
                        color="grey")
    if panel.zero_line:
        ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_yscale(panel.y_scale)
    ax.set_title(panel.title, fontsize=10)
    ax.set_xlabel(panel.x_label)
    ax.set_ylabel(panel.y_label)
    if len(panel.series) > 1:
        ax.legend(fontsize=8)


def render(spec: FigureSpec, in_dir: str, out_dir: str) -> str:
    """Write one raster image for the figure; returns the image path."""
    os.makedirs(out_dir, exist_ok=True)
    n = len(spec.panels)
    fig, axes = plt.subplots(1, n, figsize=(spec.size[0] * n, spec.size[1]))
    if n == 1:
        axes = [axes]
    try:
        for ax, panel in zip(axes, spec.panels):
            _render_panel(ax, panel, in_dir)
        fig.tight_layout()
        out_path = os.path.join(out_dir, f"{spec.name}.png")
        fig.savefig(out_path, dpi=120)
    finally:
        plt.close(fig)
    return out_path


FUC_SERIES = (SeriesSpec("fuc_limit", "fragility under competition"),
              SeriesSpec("trivial_bound", "trivial bound", "--"))

MANIFEST: tuple[FigureSpec, ...] = (
    FigureSpec("fig1", (
        PanelSpec("repro_fig1_a.csv", "x",
                  (SeriesSpec("f", "effective rate of return"),),
                  "decreasing return: rbar(x) = 2 - x, p(x) = x, k = 2",
                  "total investment", "f", markers=("ybar",), zero_line=True),
        PanelSpec("repro_fig1_b.csv", "x",
                  (SeriesSpec("f", "effective rate of return"),),
                  "increasing return: rbar(x) = (x+0.1)^0.5, p(x) = x^2, k = 1",
                  "total investment", "f", markers=("zhat", "ybar"),
                  zero_line=True),
    )),
    FigureSpec("fig2a", (
        PanelSpec("repro_fig2_a.csv", "gamma",
                  FUC_SERIES + (SeriesSpec("cor43_bound",
                                           "exponential upper bound", "-."),),
                  "r(x) = 1.21 - 0.2x: exponential growth (log scale)",
                  "failure exponent", "fragility ratio", y_scale="log"),
    )),
    FigureSpec("fig2b", (
        PanelSpec("repro_fig2_b.csv", "gamma",
                  FUC_SERIES + (SeriesSpec("thm44_upper",
                                           "linear-growth upper bound", "-."),),
                  "r(x) = 4 - x: linear growth",
                  "failure exponent", "fragility ratio"),
    )),
    FigureSpec("fig3a", (
        PanelSpec("repro_fig3_a.csv", "gamma",
                  FUC_SERIES + (SeriesSpec("thm46_bound",
                                           "analytic upper bound", "-."),),
                  "r(x) = x + 4: analytic bound tighter",
                  "failure exponent", "fragility ratio"),
    )),
    FigureSpec("fig3b", (
        PanelSpec("repro_fig3_b.csv", "gamma",
                  FUC_SERIES + (SeriesSpec("thm46_bound",
                                           "analytic upper bound", "-."),),
                  "r(x) = 4x + 4: trivial bound overtakes",
                  "failure exponent", "fragility ratio"),
    )),
    FigureSpec("fig4a", (
        PanelSpec("repro_fig4_a.csv", "alpha",
                  (SeriesSpec("fragility", "equilibrium fragility"),),
                  "r(x) = 1.25 - 0.2x: fragility vs sensitivity",
                  "sensitivity parameter", "failure probability at equilibrium"),
    )),
    FigureSpec("fig4b", (
        PanelSpec("repro_fig4_b.csv", "alpha",
                  (SeriesSpec("fragility", "equilibrium fragility"),),
                  "r(x) = 1.1 + 0.8x: fragility vs sensitivity",
                  "sensitivity parameter", "failure probability at equilibrium"),
    )),
)


def render_all(in_dir: str, out_dir: str, names=None) -> list[str]:
    """Render every manifest figure (or the named subset), in order."""
    specs = MANIFEST if names is None else tuple(
        spec for spec in MANIFEST if spec.name in set(names))
    if names is not None:
        known = {spec.name for spec in MANIFEST}
        unknown = set(names) - known
        if unknown:
            raise ValueError(f"unknown figure(s): {', '.join(sorted(unknown))}")
    return [render(spec, in_dir, out_dir) for spec in specs]
