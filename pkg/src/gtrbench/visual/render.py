"""Canonical SVG and DOT emission for visual representations.

The SVG is deliberately flat so structure is checkable: one class="node"
glyph per node (a rect for matching hosts, a circle otherwise), one
class="edge" path per edge with an arrowhead marker iff the graph is
directed, and one class="wlabel" text within a node radius of the edge
midpoint when the graph is weighted. Coordinates are formatted to two
decimals, so a fixed seed reproduces the byte-identical document.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..graph import Graph
from ..kinds import GtrId, VISUAL_GTRS
from .layouts import FONT_SIZE, NODE_RADIUS, Layout, compute_layout, engine_name


@dataclass
class RenderStyle:
    node_radius: float = NODE_RADIUS
    font_size: float = FONT_SIZE
    stroke_width: float = 1.0


@dataclass
class VisualGtr:
    gtr: GtrId
    dot_source: str
    svg: str
    layout: Layout = field(repr=False, default=None)


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def render_svg(g: Graph, layout: Layout, style: RenderStyle | None = None) -> str:
    style = style or RenderStyle()
    r = style.node_radius
    width, height = layout.canvas
    hosts = g.bipartite_split[0] if g.bipartite_split else 0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    ]
    if g.directed:
        parts.append(
            '<defs><marker id="arrow" markerWidth="10" markerHeight="8" refX="9" '
            'refY="4" orient="auto" markerUnits="userSpaceOnUse">'
            '<path d="M0,0 L10,4 L0,8 z" fill="black"/></marker></defs>'
        )
    parts.append(
        f'<rect class="bg" x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" fill="white"/>'
    )
    pos = layout.positions
    for u, v in g.edges:
        x1, y1 = pos[u]
        x2, y2 = pos[v]
        dx, dy = x2 - x1, y2 - y1
        dist = math.hypot(dx, dy)
        if dist < 1e-9:
            ux = uy = 0.0
        else:
            ux, uy = dx / dist, dy / dist
        sx, sy = x1 + ux * r, y1 + uy * r
        ex, ey = x2 - ux * r, y2 - uy * r
        marker = ' marker-end="url(#arrow)"' if g.directed else ""
        parts.append(
            f'<path class="edge" d="M {_fmt(sx)} {_fmt(sy)} L {_fmt(ex)} {_fmt(ey)}" '
            f'stroke="black" stroke-width="{_fmt(style.stroke_width)}" fill="none"{marker}/>'
        )
        if g.weighted:
            mx, my = (x1 + x2) / 2.0, (y1 + y2) / 2.0
            # shift perpendicular to the edge, staying within a node radius
            off = 0.5 * r
            lx, ly = mx - uy * off, my + ux * off
            parts.append(
                f'<text class="wlabel" x="{_fmt(lx)}" y="{_fmt(ly)}" '
                f'font-size="{_fmt(style.font_size)}" text-anchor="middle" '
                f'dominant-baseline="central">{g.weight(u, v)}</text>'
            )
    for node in range(g.n):
        x, y = pos[node]
        if node < hosts:
            parts.append(
                f'<rect class="node" x="{_fmt(x - r)}" y="{_fmt(y - r)}" '
                f'width="{_fmt(2 * r)}" height="{_fmt(2 * r)}" fill="white" stroke="black"/>'
            )
        else:
            parts.append(
                f'<circle class="node" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" '
                'fill="white" stroke="black"/>'
            )
        parts.append(
            f'<text class="label" x="{_fmt(x)}" y="{_fmt(y)}" '
            f'font-size="{_fmt(style.font_size)}" text-anchor="middle" '
            f'dominant-baseline="central">{node}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def emit_dot(g: Graph, engine: str) -> str:
    """DOT source declaring the chosen engine; hosts render as boxes and
    weights become edge labels."""
    hosts = g.bipartite_split[0] if g.bipartite_split else 0
    keyword, connector = ("digraph", "->") if g.directed else ("graph", "--")
    lines = [
        f"{keyword} G {{",
        f"  layout={engine};",
        "  bgcolor=white;",
        "  node [shape=circle];",
    ]
    for node in range(g.n):
        shape = ' [shape=box]' if node < hosts else ""
        lines.append(f"  {node}{shape};")
    for u, v in g.edges:
        label = f' [label={g.weight(u, v)}]' if g.weighted else ""
        lines.append(f"  {u} {connector} {v}{label};")
    lines.append("}")
    return "\n".join(lines)


def render_visual(g: Graph, gtr: GtrId, seed: int = 0, style: RenderStyle | None = None) -> VisualGtr:
    if gtr not in VISUAL_GTRS:
        raise ValueError(f"{gtr.value} is not a visual representation")
    layout = compute_layout(g, gtr, seed)
    return VisualGtr(
        gtr=gtr,
        dot_source=emit_dot(g, engine_name(gtr)),
        svg=render_svg(g, layout, style),
        layout=layout,
    )
