"""PNG rasterization for endpoints that need bitmaps.

Geometry mirrors the SVG renderer (same layout, glyph shapes, labels). The
image is drawn at twice the target size and downsampled for antialiasing;
output is RGBA PNG bytes, default 768x768.
"""

from __future__ import annotations

import io
import math

from PIL import Image, ImageDraw, ImageFont

from ..graph import Graph
from .layouts import Layout

DEFAULT_RASTER_SIZE = 768


def _font(size: int):
    try:
        return ImageFont.load_default(size=size)
    except TypeError:  # older Pillow without sizeable default font
        return ImageFont.load_default()


def raster_png(g: Graph, layout: Layout, size: int = DEFAULT_RASTER_SIZE) -> bytes:
    if size < 16:
        raise ValueError(f"raster size {size} too small")
    supersample = 2
    big = size * supersample
    width, height = layout.canvas
    span = max(width, height, 1e-6)
    scale = big / span

    def sx(x: float) -> float:
        return x * scale

    image = Image.new("RGBA", (big, big), (255, 255, 255, 255))
    draw = ImageDraw.Draw(image)
    hosts = g.bipartite_split[0] if g.bipartite_split else 0
    r = 12.0 * scale
    line_width = max(1, int(round(scale)))
    font = _font(max(8, int(10 * scale)))
    pos = [(sx(x), sx(y)) for x, y in layout.positions]

    for u, v in g.edges:
        x1, y1 = pos[u]
        x2, y2 = pos[v]
        draw.line([(x1, y1), (x2, y2)], fill=(0, 0, 0, 255), width=line_width)
        dx, dy = x2 - x1, y2 - y1
        dist = math.hypot(dx, dy)
        if g.directed and dist > 1e-9:
            ux, uy = dx / dist, dy / dist
            tipx, tipy = x2 - ux * r, y2 - uy * r
            head = 0.8 * r
            left = (tipx - ux * head - uy * 0.5 * head, tipy - uy * head + ux * 0.5 * head)
            right = (tipx - ux * head + uy * 0.5 * head, tipy - uy * head - ux * 0.5 * head)
            draw.polygon([(tipx, tipy), left, right], fill=(0, 0, 0, 255))
        if g.weighted and dist > 1e-9:
            ux, uy = dx / dist, dy / dist
            mx, my = (x1 + x2) / 2.0, (y1 + y2) / 2.0
            off = 0.5 * r
            draw.text(
                (mx - uy * off, my + ux * off),
                str(g.weight(u, v)),
                fill=(0, 0, 0, 255),
                font=font,
                anchor="mm",
            )

    for node in range(g.n):
        x, y = pos[node]
        box = [x - r, y - r, x + r, y + r]
        if node < hosts:
            draw.rectangle(box, fill=(255, 255, 255, 255), outline=(0, 0, 0, 255), width=line_width)
        else:
            draw.ellipse(box, fill=(255, 255, 255, 255), outline=(0, 0, 0, 255), width=line_width)
        draw.text((x, y), str(node), fill=(0, 0, 0, 255), font=font, anchor="mm")

    image = image.resize((size, size), Image.LANCZOS)
    buf = io.BytesIO()
    image.save(buf, format="PNG")
    return buf.getvalue()
