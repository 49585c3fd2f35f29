import re

from gtrbench.graph import ErConfig, Graph, generate_er_bipartite, generate_er_graph
from gtrbench.kinds import GtrId
from gtrbench.visual.layouts import compute_layout
from gtrbench.visual.raster import raster_png
from gtrbench.visual.render import emit_dot, render_svg, render_visual

WEIGHTED = Graph(
    n=4,
    directed=True,
    edges=[(0, 1), (1, 2), (2, 3)],
    weights={(0, 1): 3, (1, 2): 5, (2, 3): 2},
)


def _count(svg: str, needle: str) -> int:
    return svg.count(needle)


def test_svg_has_one_glyph_per_node_and_edge():
    g = generate_er_graph(ErConfig(seed=6))
    visual = render_visual(g, GtrId.VNEATO, seed=1)
    svg = visual.svg
    assert _count(svg, 'class="node"') == g.n
    assert _count(svg, 'class="edge"') == len(g.edges)
    assert _count(svg, 'class="label"') == g.n
    assert _count(svg, 'class="bg"') == 1


def test_svg_marks_directed_edges_only():
    directed = render_visual(WEIGHTED, GtrId.VDOT).svg
    assert _count(directed, "marker-end") == len(WEIGHTED.edges)
    assert "<marker" in directed
    undirected = render_visual(generate_er_graph(ErConfig(seed=2)), GtrId.VDOT).svg
    assert "marker-end" not in undirected
    assert "<marker" not in undirected


def test_svg_weight_labels_sit_near_edge_midpoints():
    layout = compute_layout(WEIGHTED, GtrId.VNEATO, seed=0)
    svg = render_svg(WEIGHTED, layout)
    labels = re.findall(
        r'<text class="wlabel" x="([0-9.]+)" y="([0-9.]+)"[^>]*>(\d+)</text>', svg
    )
    assert sorted(int(w) for _, _, w in labels) == [2, 3, 5]
    by_weight = {int(w): (float(x), float(y)) for x, y, w in labels}
    for (u, v), w in WEIGHTED.weights.items():
        mx = (layout.positions[u][0] + layout.positions[v][0]) / 2
        my = (layout.positions[u][1] + layout.positions[v][1]) / 2
        lx, ly = by_weight[w]
        assert ((lx - mx) ** 2 + (ly - my) ** 2) ** 0.5 <= 12.0 + 1e-6


def test_svg_draws_hosts_as_boxes():
    g = generate_er_bipartite(ErConfig(seed=3))
    hosts, _ = g.bipartite_split
    svg = render_visual(g, GtrId.VDOT).svg
    assert _count(svg, "<rect") == hosts + 1  # hosts plus the background
    assert _count(svg, "<circle") == g.n - hosts


def test_svg_is_byte_deterministic():
    g = generate_er_graph(ErConfig(seed=14))
    a = render_visual(g, GtrId.VSFDP, seed=9).svg
    b = render_visual(g, GtrId.VSFDP, seed=9).svg
    assert a == b
    assert a.encode("utf-8") == b.encode("utf-8")


def test_svg_coordinates_are_two_decimal():
    svg = render_visual(WEIGHTED, GtrId.VCIRCO).svg
    for coord in re.findall(r'c[xy]="([0-9.]+)"', svg):
        whole, _, frac = coord.partition(".")
        assert len(frac) == 2, coord


def test_dot_source_lists_nodes_and_edges():
    src = emit_dot(WEIGHTED, "dot")
    assert src.startswith("digraph G {")
    assert 'layout=dot' in src
    assert "0 -> 1 [label=3]" in src
    assert src.rstrip().endswith("}")
    und = emit_dot(generate_er_graph(ErConfig(seed=4)), "neato")
    assert und.startswith("graph G {")
    assert " -- " in und


def test_dot_source_boxes_hosts():
    g = generate_er_bipartite(ErConfig(seed=8))
    src = emit_dot(g, "dot")
    assert src.count("[shape=box]") == g.bipartite_split[0]


def test_visual_gtr_carries_layout():
    visual = render_visual(WEIGHTED, GtrId.VFDP, seed=2)
    assert visual.gtr is GtrId.VFDP
    assert visual.layout is not None
    assert len(visual.layout.positions) == WEIGHTED.n


def test_raster_png_shape_and_determinism():
    g = generate_er_graph(ErConfig(seed=5))
    layout = compute_layout(g, GtrId.VNEATO, seed=0)
    png = raster_png(g, layout, size=256)
    assert png[:8] == b"\x89PNG\r\n\x1a\n"
    assert raster_png(g, layout, size=256) == png
    import io

    from PIL import Image

    img = Image.open(io.BytesIO(png))
    assert max(img.size) == 256


def test_raster_draws_weights_and_arrows():
    layout = compute_layout(WEIGHTED, GtrId.VDOT, seed=0)
    small = raster_png(WEIGHTED, layout, size=128)
    large = raster_png(WEIGHTED, layout, size=512)
    assert len(large) > len(small)
