"""Node placement engines for the five rendered representations.

dot assigns longest-path layers with barycenter crossing reduction, circo
places nodes on a circle in id order with a chord long enough that neighbors
never overlap, and neato / fdp / sfdp are spring-electrical: full-pairwise,
grid-bucketed, and multilevel (heavy-edge coarsening) respectively. The force
displacement loop runs in gtrbench._kernels (compiled when available). Every
engine ends in the same finalize pass, which fits positions to the canvas and
rescales until no two node centers sit closer than one node diameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .._kernels import fr_steps
from ..graph import Graph
from ..kinds import GtrId
from ..rng import Rng, seed_from

NODE_RADIUS = 12.0
FONT_SIZE = 10.0
PAD = 20.0


@dataclass
class Layout:
    engine: str
    positions: list[tuple[float, float]]
    canvas: tuple[float, float]


def canvas_side(n: int) -> float:
    return 100.0 + 30.0 * math.sqrt(max(n, 1))


def _min_pair_distance(pos: np.ndarray) -> float:
    n = len(pos)
    if n < 2:
        return math.inf
    best = math.inf
    # row-chunked pairwise scan keeps memory flat for large layouts
    chunk = max(1, int(2e6 // max(n, 1)))
    for start in range(0, n, chunk):
        block = pos[start : start + chunk]
        d2 = ((block[:, None, :] - pos[None, :, :]) ** 2).sum(axis=2)
        for row in range(len(block)):
            d2[row, start + row] = math.inf
        best = min(best, float(np.sqrt(d2.min())))
    return best


def _finalize(engine: str, raw: np.ndarray, n: int) -> Layout:
    """Fit positions into the sized canvas, then scale until the closest pair
    of node centers is at least one diameter apart."""
    side = canvas_side(n)
    if n == 0:
        return Layout(engine, [], (side, side))
    pos = np.array(raw, dtype=np.float64).reshape(n, 2)
    if n == 1:
        return Layout(engine, [(side / 2.0, side / 2.0)], (side, side))
    if _min_pair_distance(pos) < 1e-9:
        angles = 2.0 * math.pi * np.arange(n) / n
        pos = pos + 1e-3 * side * np.stack([np.cos(angles), np.sin(angles)], axis=1)
    lo = pos.min(axis=0)
    hi = pos.max(axis=0)
    extent = float(max(hi[0] - lo[0], hi[1] - lo[1]))
    inner = side - 2.0 * PAD
    if extent < 1e-12:
        scale = 1.0
    else:
        scale = inner / extent
    fitted = (pos - lo) * scale
    span = fitted.max(axis=0)
    fitted += (np.array([inner, inner]) - span) / 2.0 + PAD
    dmin = _min_pair_distance(fitted)
    if dmin < 2.0 * NODE_RADIUS:
        center = fitted.mean(axis=0)
        factor = (2.0 * NODE_RADIUS) / dmin
        fitted = center + (fitted - center) * factor
        lo2 = fitted.min(axis=0)
        fitted += PAD - lo2
        span2 = fitted.max(axis=0) + PAD
        canvas = (float(span2[0]), float(span2[1]))
    else:
        canvas = (side, side)
    return Layout(engine, [(float(x), float(y)) for x, y in fitted], canvas)


# ---------------------------------------------------------------------------
# dot: layered drawing


def _oriented_acyclic_edges(g: Graph) -> list[tuple[int, int]]:
    """Edges oriented for layering: undirected graphs by BFS-forest order from
    node 0, directed graphs as given with back edges (found by DFS) dropped."""
    if not g.directed:
        adj = g.undirected_neighbors()
        layer = [-1] * g.n
        for root in range(g.n):
            if layer[root] != -1:
                continue
            layer[root] = 0
            queue = [root]
            while queue:
                nxt = []
                for u in queue:
                    for v in adj[u]:
                        if layer[v] == -1:
                            layer[v] = layer[u] + 1
                            nxt.append(v)
                queue = nxt
        oriented = []
        for u, v in g.edges:
            if (layer[u], u) <= (layer[v], v):
                oriented.append((u, v))
            else:
                oriented.append((v, u))
        return oriented
    # iterative DFS with an explicit stack; edges into the active path are back edges
    adj = g.out_neighbors()
    WHITE, GRAY, BLACK = 0, 1, 2
    color = [WHITE] * g.n
    back: set[tuple[int, int]] = set()
    for root in range(g.n):
        if color[root] != WHITE:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        color[root] = GRAY
        while stack:
            node, idx = stack[-1]
            if idx < len(adj[node]):
                stack[-1] = (node, idx + 1)
                child = adj[node][idx]
                if color[child] == GRAY:
                    back.add((node, child))
                elif color[child] == WHITE:
                    color[child] = GRAY
                    stack.append((child, 0))
            else:
                color[node] = BLACK
                stack.pop()
    return [e for e in g.edges if e not in back]


def dot_layers(g: Graph) -> list[int]:
    """Longest-path layer per node over the oriented acyclic edge set."""
    edges = _oriented_acyclic_edges(g)
    indeg = [0] * g.n
    out: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in edges:
        out[u].append(v)
        indeg[v] += 1
    layer = [0] * g.n
    ready = [u for u in range(g.n) if indeg[u] == 0]
    order = []
    while ready:
        u = ready.pop()
        order.append(u)
        for v in out[u]:
            layer[v] = max(layer[v], layer[u] + 1)
            indeg[v] -= 1
            if indeg[v] == 0:
                ready.append(v)
    return layer


def layout_dot(g: Graph, seed: int = 0) -> Layout:
    if g.n == 0:
        return _finalize("dot", np.zeros((0, 2)), 0)
    layer = dot_layers(g)
    depth = max(layer) + 1
    rows: list[list[int]] = [[] for _ in range(depth)]
    for node in range(g.n):
        rows[layer[node]].append(node)
    adj = g.undirected_neighbors()

    slot = [0] * g.n
    for row in rows:
        for i, node in enumerate(row):
            slot[node] = i

    def barycenter_pass(target_row: list[int], reference_layer: int) -> None:
        bary = {}
        for node in target_row:
            refs = [slot[v] for v in adj[node] if layer[v] == reference_layer]
            bary[node] = sum(refs) / len(refs) if refs else float(slot[node])
        target_row.sort(key=lambda node: bary[node])
        for i, node in enumerate(target_row):
            slot[node] = i

    for sweep in range(4):
        if sweep % 2 == 0:
            for li in range(1, depth):
                barycenter_pass(rows[li], li - 1)
        else:
            for li in range(depth - 2, -1, -1):
                barycenter_pass(rows[li], li + 1)

    raw = np.zeros((g.n, 2))
    for li, row in enumerate(rows):
        m = len(row)
        for i, node in enumerate(row):
            raw[node, 0] = (i + 0.5) / m
            raw[node, 1] = float(li)
    return _finalize("dot", raw, g.n)


# ---------------------------------------------------------------------------
# circo: circular placement


def layout_circo(g: Graph) -> Layout:
    n = g.n
    side = canvas_side(n)
    if n == 0:
        return Layout("circo", [], (side, side))
    if n == 1:
        return Layout("circo", [(side / 2.0, side / 2.0)], (side, side))
    base = side / 2.0 - PAD - NODE_RADIUS
    required = NODE_RADIUS / math.sin(math.pi / n)
    radius = max(base, required)
    center = radius + PAD + NODE_RADIUS
    positions = []
    for i in range(n):
        theta = 2.0 * math.pi * i / n
        positions.append((center + radius * math.cos(theta), center + radius * math.sin(theta)))
    extent = 2.0 * center
    return Layout("circo", positions, (extent, extent))


def circo_expected_position(n: int, i: int) -> tuple[float, float]:
    """Closed-form circo position used by verification."""
    side = canvas_side(n)
    if n == 1:
        return (side / 2.0, side / 2.0)
    base = side / 2.0 - PAD - NODE_RADIUS
    required = NODE_RADIUS / math.sin(math.pi / n)
    radius = max(base, required)
    center = radius + PAD + NODE_RADIUS
    theta = 2.0 * math.pi * i / n
    return (center + radius * math.cos(theta), center + radius * math.sin(theta))


# ---------------------------------------------------------------------------
# spring-electrical family


def _edge_array(g: Graph) -> np.ndarray:
    if not g.edges:
        return np.zeros((0, 2), dtype=np.int64)
    return np.array(g.edges, dtype=np.int64)


def _init_positions(n: int, side: float, rng: Rng) -> np.ndarray:
    pos = np.zeros((n, 2))
    for i in range(n):
        pos[i, 0] = rng.uniform(0.0, side)
        pos[i, 1] = rng.uniform(0.0, side)
    return pos


NEATO_ITERS = 500
FDP_ITERS = 200
SFDP_REFINE_ITERS = 50
SFDP_COARSE_LIMIT = 16


def layout_neato(g: Graph, seed: int = 0) -> Layout:
    side = canvas_side(g.n)
    if g.n <= 1:
        return _finalize("neato", np.zeros((g.n, 2)), g.n)
    k = math.sqrt(side * side / g.n)
    rng = Rng(seed_from("layout-neato", seed, g.n, len(g.edges)))
    pos = _init_positions(g.n, side, rng)
    pos = fr_steps(pos, _edge_array(g), k, 0.1 * side, NEATO_ITERS, 0.0)
    return _finalize("neato", pos, g.n)


def layout_fdp(g: Graph, seed: int = 0) -> Layout:
    side = canvas_side(g.n)
    if g.n <= 1:
        return _finalize("fdp", np.zeros((g.n, 2)), g.n)
    k = math.sqrt(side * side / g.n)
    rng = Rng(seed_from("layout-fdp", seed, g.n, len(g.edges)))
    pos = _init_positions(g.n, side, rng)
    pos = fr_steps(pos, _edge_array(g), k, 0.1 * side, FDP_ITERS, 2.0 * k)
    return _finalize("fdp", pos, g.n)


def _heavy_edge_matching(
    n: int, edges: dict[tuple[int, int], int]
) -> tuple[list[int], int] | None:
    """Greedy heavy-edge matching; returns (parent per node, coarse count) or
    None when nothing can merge."""
    neighbor_weight: list[dict[int, int]] = [dict() for _ in range(n)]
    for (u, v), w in edges.items():
        neighbor_weight[u][v] = neighbor_weight[u].get(v, 0) + w
        neighbor_weight[v][u] = neighbor_weight[v].get(u, 0) + w
    matched = [-1] * n
    merged = 0
    for u in range(n):
        if matched[u] != -1 or not neighbor_weight[u]:
            continue
        best = None
        for v, w in sorted(neighbor_weight[u].items()):
            if matched[v] == -1 and v != u:
                if best is None or w > best[1]:
                    best = (v, w)
        if best is not None:
            matched[u] = best[0]
            matched[best[0]] = u
            merged += 1
    if merged == 0:
        return None
    parent = [-1] * n
    count = 0
    for u in range(n):
        if parent[u] != -1:
            continue
        if matched[u] != -1 and matched[u] > u:
            parent[u] = count
            parent[matched[u]] = count
        else:
            parent[u] = count
        count += 1
    return parent, count


def layout_sfdp(g: Graph, seed: int = 0) -> Layout:
    """Multilevel layout: coarsen by heavy-edge matching to at most 16 nodes,
    lay out the coarsest level, prolong with jitter, refine 50 iterations per
    level with the grid-bucketed kernel."""
    n = g.n
    if n <= SFDP_COARSE_LIMIT:
        layout = layout_fdp(g, seed)
        return Layout("sfdp", layout.positions, layout.canvas)
    levels: list[tuple[int, dict[tuple[int, int], int]]] = []
    parents: list[list[int]] = []
    current_n = n
    current_edges: dict[tuple[int, int], int] = {}
    for u, v in g.edges:
        key = (min(u, v), max(u, v))
        current_edges[key] = current_edges.get(key, 0) + 1
    levels.append((current_n, current_edges))
    while current_n > SFDP_COARSE_LIMIT:
        result = _heavy_edge_matching(current_n, current_edges)
        if result is None:
            break
        parent, coarse_n = result
        coarse_edges: dict[tuple[int, int], int] = {}
        for (u, v), w in current_edges.items():
            cu, cv = parent[u], parent[v]
            if cu == cv:
                continue
            key = (min(cu, cv), max(cu, cv))
            coarse_edges[key] = coarse_edges.get(key, 0) + w
        parents.append(parent)
        current_n, current_edges = coarse_n, coarse_edges
        levels.append((current_n, current_edges))

    coarse_n, coarse_edges = levels[-1]
    side_c = canvas_side(coarse_n)
    k_c = math.sqrt(side_c * side_c / max(coarse_n, 1))
    rng = Rng(seed_from("layout-sfdp", seed, n, len(g.edges)))
    pos = _init_positions(coarse_n, side_c, rng)
    edge_arr = (
        np.array(sorted(coarse_edges), dtype=np.int64)
        if coarse_edges
        else np.zeros((0, 2), dtype=np.int64)
    )
    pos = fr_steps(pos, edge_arr, k_c, 0.1 * side_c, FDP_ITERS, 2.0 * k_c)

    for level_idx in range(len(parents) - 1, -1, -1):
        fine_n, fine_edges = levels[level_idx]
        parent = parents[level_idx]
        side_f = canvas_side(fine_n)
        k_f = math.sqrt(side_f * side_f / fine_n)
        scale = side_f / canvas_side(levels[level_idx + 1][0])
        fine_pos = np.zeros((fine_n, 2))
        jitter_rng = rng.derive("prolong", level_idx)
        for node in range(fine_n):
            px, py = pos[parent[node]]
            fine_pos[node, 0] = px * scale + jitter_rng.uniform(-0.25 * k_f, 0.25 * k_f)
            fine_pos[node, 1] = py * scale + jitter_rng.uniform(-0.25 * k_f, 0.25 * k_f)
        edge_arr = (
            np.array(sorted(fine_edges), dtype=np.int64)
            if fine_edges
            else np.zeros((0, 2), dtype=np.int64)
        )
        pos = fr_steps(fine_pos, edge_arr, k_f, 0.03 * side_f, SFDP_REFINE_ITERS, 2.0 * k_f)
    return _finalize("sfdp", pos, n)


# ---------------------------------------------------------------------------
# dispatch

_ENGINES = {
    GtrId.VDOT: ("dot", lambda g, seed: layout_dot(g, seed)),
    GtrId.VNEATO: ("neato", lambda g, seed: layout_neato(g, seed)),
    GtrId.VCIRCO: ("circo", lambda g, seed: layout_circo(g)),
    GtrId.VFDP: ("fdp", lambda g, seed: layout_fdp(g, seed)),
    GtrId.VSFDP: ("sfdp", lambda g, seed: layout_sfdp(g, seed)),
}


def engine_name(gtr: GtrId) -> str:
    if gtr not in _ENGINES:
        raise ValueError(f"{gtr.value} is not a visual representation")
    return _ENGINES[gtr][0]


def compute_layout(g: Graph, gtr: GtrId, seed: int = 0) -> Layout:
    if gtr not in _ENGINES:
        raise ValueError(f"{gtr.value} is not a visual representation")
    return _ENGINES[gtr][1](g, seed)
