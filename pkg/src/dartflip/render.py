"""SVG figures: k-DPT drawings and small report charts."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402

from .ptcore import KDPT  # noqa: E402

DART_FILL = "#9ecae1"
P1_COLOR = "#3182bd"
P2_COLOR = "#e6a700"


def _save(fig, path) -> None:
    # fixed hash salt and no date stamp keep SVG output byte-identical across runs
    with matplotlib.rc_context({"svg.hashsalt": "dartflip", "svg.fonttype": "none"}):
        fig.savefig(path, format="svg", metadata={"Date": None}, bbox_inches="tight")
    plt.close(fig)


def draw_kdpt(T: KDPT, ax, dc=None, labels: bool = True) -> None:
    P = T.ps.points
    for d in T.darts:
        tip, (w1, w2), tail = d.tip, d.wings, d.tail
        ax.add_patch(Polygon([P[tip], P[w1], P[tail], P[w2]], closed=True,
                             facecolor=DART_FILL, edgecolor="none", zorder=0))
        ax.plot(*zip(P[tip], P[tail]), linestyle="--", color="0.3", lw=1, zorder=1)
    for i, j in sorted(T.edges):
        ax.plot(*zip(P[i], P[j]), color="black", lw=1.2, zorder=2)
    colors = ["black"] * T.ps.n
    if dc is not None:
        for v in dc.p1:
            colors[v] = P1_COLOR
        for v in dc.p2:
            colors[v] = P2_COLOR
    tails = set(T.tails)
    for v, (x, y) in enumerate(P):
        ax.scatter([x], [y], s=36 if v in tails else 20, color=colors[v], zorder=3,
                   edgecolors="red" if v in tails else "none")
        if labels:
            ax.annotate(str(v), (x, y), textcoords="offset points", xytext=(4, 4), fontsize=7)
    xs, ys = zip(*P)
    w, h = max(xs) - min(xs), max(ys) - min(ys)
    # generated double chains are wide and flat; stretch them rather than draw a sliver
    ax.set_aspect("equal" if h and 1 / 3 <= w / h <= 3 else "auto")
    ax.axis("off")


def save_kdpt_svg(T: KDPT, path, dc=None, title=None) -> None:
    fig, ax = plt.subplots(figsize=(4, 4))
    draw_kdpt(T, ax, dc)
    if title:
        ax.set_title(title, fontsize=9)
    _save(fig, path)


def save_component_sizes(sizes, path, title="") -> None:
    fig, ax = plt.subplots(figsize=(4.5, 3))
    ax.bar(range(len(sizes)), sizes, color="0.5")
    ax.set_xlabel("component")
    ax.set_ylabel("k-DPTs")
    ax.set_xticks(range(len(sizes)))
    if title:
        ax.set_title(title, fontsize=9)
    _save(fig, path)


def save_count_grid(rows, path) -> None:
    """Observed vs predicted component counts; rows are (a, b, k, observed, predicted)."""
    fig, ax = plt.subplots(figsize=(5, 3.2))
    xs = range(len(rows))
    ax.plot(xs, [r[4] for r in rows], "o", mfc="none", color="black", label="formula")
    ax.plot(xs, [r[3] for r in rows], ".", color="red", label="flip graph")
    ax.set_xticks(list(xs))
    ax.set_xticklabels([f"{a},{b},{k}" for a, b, k, *_ in rows], rotation=90, fontsize=5)
    ax.set_ylabel("components")
    ax.legend(frameon=False, fontsize=7)
    _save(fig, path)
