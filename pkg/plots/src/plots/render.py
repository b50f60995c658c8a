"""Grouped bar charts from summary cells.

One bar series per (strategy, termination) pair, grouped along the size
axis, stddev as error bars. Series order is fixed: strategies in their
canonical order, termination labels sorted, so the legend and therefore
the rendered bytes do not depend on row order in the CSV.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .contract import SummaryCell, load_summary

METRICS = ("ratio", "iterations")
STRATEGY_ORDER = ("original", "fixed", "incremental")
Y_LABEL = {"ratio": "approximation ratio", "iterations": "mean amplification rounds"}
HATCHES = ("", "//", "xx", "..", "++")


@dataclass(frozen=True)
class FigureSpec:
    csv: str | Path
    metric: str
    out: str | Path

    def __post_init__(self):
        if self.metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}, got {self.metric!r}")


@dataclass(frozen=True)
class RenderResult:
    out: Path
    series: tuple[tuple[str, str], ...]
    sizes: tuple[int, ...]


def _series_order(cells: list[SummaryCell]) -> list[tuple[str, str]]:
    strategies = sorted(
        {c.strategy for c in cells},
        key=lambda s: (STRATEGY_ORDER.index(s) if s in STRATEGY_ORDER else len(STRATEGY_ORDER), s),
    )
    terminations = sorted({c.termination for c in cells})
    pairs = [(s, t) for s in strategies for t in terminations]
    present = {(c.strategy, c.termination) for c in cells}
    return [p for p in pairs if p in present]


def render(spec: FigureSpec) -> RenderResult:
    """Read the CSV, draw the figure, write the image; input is never touched."""
    cells = load_summary(spec.csv)
    if not cells:
        raise ValueError(f"{spec.csv}: no data rows, nothing to render")

    sizes = sorted({c.size for c in cells})
    series = _series_order(cells)
    by_key = {(c.strategy, c.termination, c.size): c for c in cells}

    x = np.arange(len(sizes), dtype=float)
    width = 0.82 / len(series)
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    for idx, (strategy, termination) in enumerate(series):
        means = np.array(
            [by_key.get((strategy, termination, s), _HOLE).mean for s in sizes]
        )
        errs = np.array(
            [by_key.get((strategy, termination, s), _HOLE).stddev for s in sizes]
        )
        color_idx = (
            STRATEGY_ORDER.index(strategy)
            if strategy in STRATEGY_ORDER
            else idx % 10
        )
        hatch_idx = [t for s, t in series if s == strategy].index(termination)
        ax.bar(
            x + (idx - (len(series) - 1) / 2.0) * width,
            means,
            width,
            yerr=errs,
            capsize=2,
            label=f"{strategy}, {termination}",
            color=f"C{color_idx}",
            hatch=HATCHES[hatch_idx % len(HATCHES)],
            edgecolor="black",
            linewidth=0.4,
            error_kw={"linewidth": 0.8},
        )

    ax.set_xticks(x)
    ax.set_xticklabels([str(s) for s in sizes])
    ax.set_xlabel("instance size (nodes)")
    ax.set_ylabel(Y_LABEL[spec.metric])
    if spec.metric == "iterations" and all(c.mean > 0 for c in cells):
        ax.set_yscale("log")
    ax.legend(fontsize=8, ncols=max(1, len(series) // 3))
    fig.tight_layout()

    out = Path(spec.out)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return RenderResult(out=out, series=tuple(series), sizes=tuple(sizes))


# sentinel cell for (series, size) holes; nan bars are skipped by matplotlib
_HOLE = SummaryCell(size=0, strategy="", termination="", mean=float("nan"),
                    stddev=float("nan"), trials=0)
