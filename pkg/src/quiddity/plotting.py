"""Render polygon decompositions to image files (SVG via --svg paths)."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .geometry import Decomposition


def _vertex_positions(n: int) -> dict:
    # vertex 1 at the top, counterclockwise
    pts = {}
    for v in range(1, n + 1):
        theta = math.pi / 2 + 2 * math.pi * (v - 1) / n
        pts[v] = (math.cos(theta), math.sin(theta))
    return pts


def render_decomposition(dec: Decomposition, path: str, labels=None, title=None):
    """Draw the polygon with its diagonals and save to path.

    labels, when given, is one string per vertex (e.g. quiddity entries);
    the file format follows the extension (``.svg`` recommended).
    """
    n = dec.n
    pts = _vertex_positions(n)
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    for v in range(1, n + 1):
        w = v % n + 1
        (x1, y1), (x2, y2) = pts[v], pts[w]
        ax.plot([x1, x2], [y1, y2], color="black", linewidth=1.4)
    for i, j in dec.diagonals:
        (x1, y1), (x2, y2) = pts[i], pts[j]
        ax.plot([x1, x2], [y1, y2], color="tab:blue", linewidth=1.1, linestyle="--")
    for v in range(1, n + 1):
        x, y = pts[v]
        text = str(v) if labels is None else f"{v}: {labels[v - 1]}"
        ax.annotate(
            text,
            (x, y),
            xytext=(1.14 * x, 1.14 * y),
            ha="center",
            va="center",
            fontsize=9,
        )
        ax.plot([x], [y], marker="o", markersize=3, color="black")
    if title:
        ax.set_title(title, fontsize=10)
    ax.set_aspect("equal")
    ax.set_xlim(-1.35, 1.35)
    ax.set_ylim(-1.35, 1.35)
    ax.axis("off")
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
