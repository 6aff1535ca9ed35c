"""SVG drawings of solved instances.

Terminals sit on a circle in rim order; every other vertex is moved repeatedly to
the average of its neighbours (Tutte's barycentric method).  For a disc
embedding this converges to a drawing that respects the faces; for a cross the
layout is only a picture and the two paths are highlighted.  The drawing is
illustrative and plays no part in any correctness check.
"""

from __future__ import annotations

import math
from typing import Optional
from xml.sax.saxutils import escape

import numpy as np

from .certificates import CrossCertificate
from .graph import Instance

SIZE = 480
RADIUS = 200.0
PATH_COLOURS = ("#d62728", "#1f77b4")


def layout(inst: Instance, iterations: int = 500) -> dict:
    g = inst.graph
    rim = [x for x in inst.rim if x in g]
    verts = list(g.vertices)
    index = {v: k for k, v in enumerate(verts)}
    pos = np.zeros((len(verts), 2))
    fixed = np.zeros(len(verts), dtype=bool)
    for p, x in enumerate(rim):
        angle = math.pi / 2 + 2 * math.pi * p / max(len(rim), 1)
        pos[index[x]] = (RADIUS * math.cos(angle), -RADIUS * math.sin(angle))
        fixed[index[x]] = True
    edges = np.array([(index[u], index[w]) for u, w in g.edges()], dtype=int).reshape(-1, 2)
    tails, heads = edges[:, 0], edges[:, 1]
    deg = np.bincount(np.concatenate([tails, heads]), minlength=len(verts)).astype(float)
    free = ~fixed & (deg > 0)
    for _ in range(iterations):
        total = np.zeros_like(pos)
        np.add.at(total, tails, pos[heads])
        np.add.at(total, heads, pos[tails])
        moved = np.where(free[:, None], total / np.maximum(deg, 1.0)[:, None], pos)
        if np.allclose(moved, pos, atol=1e-6):
            break
        pos = moved
    return {v: (float(pos[k, 0]), float(pos[k, 1])) for v, k in index.items()}


def render_svg(inst: Instance, cross: Optional[CrossCertificate] = None) -> str:
    pos = layout(inst)
    mid = SIZE / 2
    highlight = {}
    if cross is not None:
        for colour, path in zip(PATH_COLOURS, cross.paths()):
            for e in zip(path, path[1:]):
                highlight[e] = colour

    def xy(v):
        x, y = pos[v]
        return mid + x, mid + y

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"16\" refY=\"5\" markerWidth=\"6\" "
        "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#444\"/></marker></defs>",
        f'<circle cx="{mid}" cy="{mid}" r="{RADIUS}" fill="none" stroke="#bbb" stroke-dasharray="4 4"/>',
    ]
    for u, w in inst.graph.edges():
        (x1, y1), (x2, y2) = xy(u), xy(w)
        colour = highlight.get((u, w), "#444")
        width = 2.5 if (u, w) in highlight else 1.2
        out.append(
            f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
            f'stroke="{colour}" stroke-width="{width}" marker-end="url(#arrow)"/>'
        )
    terminals = set(inst.sources) | set(inst.sinks)
    for v in inst.graph.vertices:
        x, y = xy(v)
        fill = "#ffe08a" if v in terminals else "#fff"
        out.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="7" fill="{fill}" stroke="#222"/>')
        out.append(f'<text x="{x + 9:.1f}" y="{y - 9:.1f}" font-size="11" font-family="sans-serif">{escape(str(v))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
