"""Figure rendering and DOT export for graphs, packings, and duals."""

from __future__ import annotations

import math
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

from .menger import Path
from .multigraph import Multigraph

_PALETTE = plt.get_cmap("tab10").colors


def _positions(G: Multigraph) -> dict[str, tuple[float, float]]:
    names = sorted(G.vertices)
    n = max(len(names), 1)
    return {
        v: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
        for i, v in enumerate(names)
    }


def _bends(G: Multigraph) -> dict[int, float]:
    """Curvature per edge so parallel edges stay visually distinct."""
    bundles: dict[frozenset[str], list[int]] = {}
    for e in sorted(G.edges):
        bundles.setdefault(frozenset(G.endpoints(e)), []).append(e)
    rads: dict[int, float] = {}
    for group in bundles.values():
        k = len(group)
        for i, e in enumerate(group):
            rads[e] = 0.0 if k == 1 else -0.35 + 0.7 * i / (k - 1)
    return rads


def render_graph(
    G: Multigraph,
    T: Sequence[str],
    out_path: str,
    paths: Sequence[Path] = (),
    cut_edges: Mapping[str, frozenset[int]] | None = None,
    classes: Mapping[str, str] | None = None,
    title: str = "",
) -> None:
    """Draw the graph to a file; packed paths get colors, cut edges dashes."""
    ts = set(T)
    pos = _positions(G)
    rads = _bends(G)
    edge_color: dict[int, tuple] = {}
    for i, p in enumerate(paths):
        for e in p.edges:
            edge_color[e] = _PALETTE[i % len(_PALETTE)]
    dashed = set()
    for edges in (cut_edges or {}).values():
        dashed |= set(edges)

    fig, ax = plt.subplots(figsize=(6, 6))
    for e in sorted(G.edges):
        u, v = G.endpoints(e)
        patch = FancyArrowPatch(
            pos[u],
            pos[v],
            arrowstyle="-",
            connectionstyle=f"arc3,rad={rads[e]}",
            color=edge_color.get(e, "0.55"),
            linestyle="--" if e in dashed else "-",
            linewidth=2.2 if e in edge_color else 1.2,
            zorder=1,
        )
        ax.add_patch(patch)
        mx = (pos[u][0] + pos[v][0]) / 2 + 0.12 * rads[e]
        my = (pos[u][1] + pos[v][1]) / 2 + 0.12 * rads[e]
        ax.annotate(str(e), (mx, my), fontsize=7, color="0.3", ha="center")

    class_names = sorted(set((classes or {}).values()))
    fill = {c: _PALETTE[i % len(_PALETTE)] for i, c in enumerate(class_names)}
    for v, (x, y) in pos.items():
        color = fill.get((classes or {}).get(v, ""), "white")
        marker = "s" if v in ts else "o"
        ax.scatter([x], [y], s=420, marker=marker, c=[color], edgecolors="black", zorder=2)
        ax.annotate(v, (x, y), ha="center", va="center", fontsize=9, zorder=3)

    ax.set_xlim(-1.4, 1.4)
    ax.set_ylim(-1.4, 1.4)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.savefig(out_path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def to_dot(
    G: Multigraph, T: Sequence[str], cut_edges: frozenset[int] = frozenset()
) -> str:
    """Graphviz text: terminals as boxes, cut edges dashed and red."""
    ts = set(T)
    lines = ["graph G {"]
    for v in G.vertices:
        shape = "box" if v in ts else "circle"
        lines.append(f'  "{v}" [shape={shape}];')
    for e in sorted(G.edges):
        u, v = G.endpoints(e)
        style = ' [label="%d", style=dashed, color=red]' if e in cut_edges else ' [label="%d"]'
        lines.append(f'  "{u}" -- "{v}"' + style % e + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"
