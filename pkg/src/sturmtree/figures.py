"""Matplotlib renderings written next to the delimited reports.

Two figure kinds: the complexity profile n -> b(n) against the n + 2
reference line, and a quotient-graph drawing in the usual style (filled
vertices on a horizontal axis, color letters below, open circles above for
self-adjacencies, index pairs along the edges).
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .census import BallCensus
from .presentation import QuotientPresentation, vertex_at


def census_figure(census: BallCensus, path: str) -> str:
    ns = list(range(census.N + 1))
    bs = [census.b(n) for n in ns]
    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    ax.plot(ns, bs, "o-", color="black", label="b(n)")
    ax.plot(ns, [n + 2 for n in ns], "--", color="gray", label="n + 2")
    ax.set_xlabel("n")
    ax.set_ylabel("ball classes")
    ax.set_xticks(ns)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _draw_segment(ax, p: QuotientPresentation, positions) -> None:
    for q in positions:
        rec = vertex_at(p, q)
        ax.plot([q], [0], "o", color="black", markersize=6)
        ax.annotate(rec.color, (q, -0.18), ha="center", fontsize=11)
        if rec.self_adjacency:
            ax.plot([q], [0.35], "o", mfc="white", mec="black", markersize=6)
            ax.plot([q, q], [0.05, 0.30], color="black", linewidth=0.8)
            ax.annotate(str(rec.self_adjacency), (q + 0.12, 0.2), fontsize=9)
    qs = list(positions)
    for q in qs[:-1]:
        rec = vertex_at(p, q)
        fwd = rec.neighbor_indices[-1].index_out
        bwd = rec.neighbor_indices[-1].index_in
        ax.plot([q, q + 1], [0, 0], color="black", linewidth=1.0)
        ax.annotate(f"{fwd}   {bwd}", (q + 0.5, 0.07), ha="center", fontsize=9)


def presentation_figure(p: QuotientPresentation, path: str,
                        window: int = 10) -> str:
    fig, ax = plt.subplots(figsize=(max(4.0, window * 0.8), 2.2))
    if p.kind == "finite":
        n = len(p.vertices)
        coords = [
            (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
            if n > 1 else (0.0, 0.0)
            for i in range(n)
        ]
        for i, (x, y) in enumerate(coords):
            ax.plot([x], [y], "o", color="black", markersize=7)
            ax.annotate(f"{p.vertices[i].color}", (x, y - 0.18), ha="center")
            if p.vertices[i].self_adjacency:
                ax.plot([x], [y + 0.22], "o", mfc="white", mec="black")
                ax.annotate(str(p.vertices[i].self_adjacency),
                            (x + 0.08, y + 0.14), fontsize=9)
        for e in p.edges:
            (x1, y1), (x2, y2) = coords[e.u], coords[e.v]
            ax.plot([x1, x2], [y1, y2], color="black", linewidth=1.0)
            ax.annotate(f"{e.fwd}   {e.bwd}",
                        ((x1 + x2) / 2, (y1 + y2) / 2 + 0.06),
                        ha="center", fontsize=9)
        ax.set_aspect("equal")
    elif p.kind == "ray":
        _draw_segment(ax, p, range(window + 1))
        ax.annotate("...", (window + 0.4, 0), fontsize=12)
    else:
        half = window // 2
        _draw_segment(ax, p, range(-half, half + 1))
        ax.annotate("...", (half + 0.4, 0), fontsize=12)
        ax.annotate("...", (-half - 0.9, 0), fontsize=12)
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
