from .layouts import (
    FONT_SIZE,
    NODE_RADIUS,
    Layout,
    canvas_side,
    circo_expected_position,
    compute_layout,
    dot_layers,
    engine_name,
    layout_circo,
    layout_dot,
    layout_fdp,
    layout_neato,
    layout_sfdp,
)
from .raster import DEFAULT_RASTER_SIZE, raster_png
from .render import RenderStyle, VisualGtr, emit_dot, render_svg, render_visual

__all__ = [
    "FONT_SIZE",
    "NODE_RADIUS",
    "Layout",
    "canvas_side",
    "circo_expected_position",
    "compute_layout",
    "dot_layers",
    "engine_name",
    "layout_circo",
    "layout_dot",
    "layout_fdp",
    "layout_neato",
    "layout_sfdp",
    "DEFAULT_RASTER_SIZE",
    "raster_png",
    "RenderStyle",
    "VisualGtr",
    "emit_dot",
    "render_svg",
    "render_visual",
]
