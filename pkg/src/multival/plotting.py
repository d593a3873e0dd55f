"""Figures for reduction reports: before/after network drawings and node-count trajectory."""
from __future__ import annotations

import math
import re

from matplotlib.figure import Figure

from .network import Network, ReductionReport, split_ref

NODE_COLOR = "#dce6f2"
SUPER_COLOR = "#f6d8ae"
EXT_COLOR = "0.6"


_BARRED = re.compile(r"([\w']+|\[[^\]]+\])\u0304")


def mathtext_label(label: str) -> str:
    """Render a supernode label such as ``(I⊕C̄)∘A`` as matplotlib mathtext."""
    if "⊕" not in label:
        return label
    tex = _BARRED.sub(lambda m: r"\overline{" + m.group(1).strip("[]") + "}", label)
    tex = tex.replace("⊕", r"\oplus ").replace("∘", r"\circ ").replace("+", r"{+}")
    return f"${tex}$"


def _layout(net: Network) -> dict:
    pos = {}
    n = len(net.nodes)
    for i, node in enumerate(net.nodes):
        # first node on top, then clockwise
        angle = math.pi / 2 - 2 * math.pi * i / max(n, 1)
        pos[node.id] = (math.cos(angle), math.sin(angle)) if n > 1 else (0.0, 0.0)
    m = len(net.externals)
    for j, name in enumerate(net.external_names):
        angle = math.pi / 2 - 2 * math.pi * (j + 0.5) / max(m, 1)
        pos[name] = (1.8 * math.cos(angle), 1.8 * math.sin(angle))
    return pos


def draw_network(net: Network, ax, title: str | None = None):
    pos = _layout(net)
    ids = set(net.node_ids)
    drawn = set()
    for node in net.nodes:
        for ref in node.inputs:
            head, path = split_ref(ref)
            if (head, node.id) in drawn:
                continue
            drawn.add((head, node.id))
            src_space = net.node(head).output_space if head in ids else None
            vector = src_space is not None and src_space.is_product and not path
            ax.annotate(
                "", xy=pos[node.id], xytext=pos[head],
                arrowprops=dict(
                    arrowstyle="-|>", shrinkA=18, shrinkB=18,
                    color="k" if head in ids else EXT_COLOR,
                    lw=2.5 if vector or sum(1 for r in node.inputs
                                            if split_ref(r)[0] == head) > 1 else 1.0,
                ),
            )
    for name in net.external_names:
        x, y = pos[name]
        ax.text(x, y, name, ha="center", va="center", color=EXT_COLOR, fontsize=9)
    for node in net.nodes:
        x, y = pos[node.id]
        color = SUPER_COLOR if node.provenance else NODE_COLOR
        ax.text(x, y, mathtext_label(node.label), ha="center", va="center", fontsize=10,
                bbox=dict(boxstyle="circle,pad=0.4" if not node.provenance
                          else "round,pad=0.4", fc=color, ec="k"))
    ax.set_xlim(-2.3, 2.3)
    ax.set_ylim(-2.3, 2.3)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    return ax


def plot_trajectory(report: ReductionReport, ax):
    steps = list(range(len(report.trajectory)))
    ax.step(steps, report.trajectory, where="post", marker="o")
    ax.set_xlabel("merge")
    ax.set_ylabel("nodes")
    ax.set_xticks(steps)
    ax.set_yticks(range(0, report.node_count_before + 1))
    ax.set_ylim(0, report.node_count_before + 0.5)
    ax.grid(alpha=0.3)
    return ax


def reduction_figure(original: Network, reduced: Network, report: ReductionReport) -> Figure:
    fig = Figure(figsize=(12, 4))
    ax0, ax1, ax2 = fig.subplots(1, 3)
    draw_network(original, ax0, f"original ({report.node_count_before} nodes)")
    draw_network(reduced, ax1, f"rationalized ({report.node_count_after} nodes)")
    plot_trajectory(report, ax2)
    fig.tight_layout()
    return fig


def save_reduction_figure(original: Network, reduced: Network, report: ReductionReport, path):
    fig = reduction_figure(original, reduced, report)
    fig.savefig(path, dpi=120)
    return path
