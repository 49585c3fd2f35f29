"""Graph model, Erdos-Renyi generation, k-hop extraction, and interchange formats.

The Graph type is deliberately small: dense 0-based node ids, an explicit edge
list, optional integer weights, and an optional bipartite split (hosts first,
tasks after). Everything downstream (oracles, serializers, layouts) consumes
this one shape.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .rng import Rng, seed_from


class GraphError(ValueError):
    """Raised when a graph violates structural invariants."""


@dataclass
class Graph:
    n: int
    directed: bool
    edges: list[tuple[int, int]] = field(default_factory=list)
    weights: dict[tuple[int, int], int] | None = None
    bipartite_split: tuple[int, int] | None = None

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def validate(self) -> None:
        if self.n < 0:
            raise GraphError(f"negative node count {self.n}")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            if not self.directed and u > v:
                raise GraphError(f"undirected edge ({u}, {v}) not stored low-high")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        if self.weights is not None:
            if set(self.weights) != seen:
                raise GraphError("weight keys do not match edge list")
            for key, w in self.weights.items():
                if w <= 0:
                    raise GraphError(f"non-positive weight {w} on {key}")
        if self.bipartite_split is not None:
            hosts, tasks = self.bipartite_split
            if hosts < 0 or tasks < 0 or hosts + tasks != self.n:
                raise GraphError(f"bipartite split {self.bipartite_split} != n={self.n}")
            for u, v in self.edges:
                lo, hi = min(u, v), max(u, v)
                if not (lo < hosts <= hi):
                    raise GraphError(f"edge ({u}, {v}) does not cross the partition")

    def weight(self, u: int, v: int) -> int:
        if self.weights is None:
            raise GraphError("unweighted graph has no weights")
        key = (u, v) if self.directed else (min(u, v), max(u, v))
        return self.weights[key]

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if self.directed else (min(u, v), max(u, v))
        return key in self._edge_set()

    def _edge_set(self) -> set[tuple[int, int]]:
        cached = getattr(self, "_edge_set_cache", None)
        if cached is None or len(cached) != len(self.edges):
            cached = set(self.edges)
            object.__setattr__(self, "_edge_set_cache", cached)
        return cached

    def undirected_neighbors(self) -> list[list[int]]:
        """Adjacency ignoring direction, each list sorted ascending."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for row in adj:
            row.sort()
        return adj

    def out_neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            if not self.directed:
                adj[v].append(u)
        for row in adj:
            row.sort()
        return adj

    def to_json_dict(self) -> dict:
        if self.weights is None:
            edges = [[u, v] for u, v in self.edges]
        else:
            edges = [[u, v, self.weights[(u, v)]] for u, v in self.edges]
        return {
            "n": self.n,
            "directed": self.directed,
            "edges": edges,
            "bipartite": list(self.bipartite_split) if self.bipartite_split else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @staticmethod
    def from_json_dict(data: dict) -> "Graph":
        raw_edges = data["edges"]
        weighted = any(len(e) == 3 for e in raw_edges)
        edges = []
        weights: dict[tuple[int, int], int] | None = {} if weighted else None
        for entry in raw_edges:
            u, v = int(entry[0]), int(entry[1])
            edges.append((u, v))
            if weighted:
                if len(entry) != 3:
                    raise GraphError(f"edge {entry} missing weight in weighted graph")
                weights[(u, v)] = int(entry[2])
        split = data.get("bipartite")
        g = Graph(
            n=int(data["n"]),
            directed=bool(data["directed"]),
            edges=edges,
            weights=weights,
            bipartite_split=tuple(split) if split else None,
        )
        g.validate()
        return g

    @staticmethod
    def from_json(text: str) -> "Graph":
        return Graph.from_json_dict(json.loads(text))


@dataclass
class ErConfig:
    """Erdos-Renyi sampling ranges; one N and one p are drawn per graph."""

    node_range: tuple[int, int] = (3, 30)
    edge_probability_range: tuple[float, float] = (0.1, 0.7)
    weight_range: tuple[int, int] = (1, 10)
    seed: int = 0

    def with_seed(self, seed: int) -> "ErConfig":
        return ErConfig(self.node_range, self.edge_probability_range, self.weight_range, seed)


def generate_er_graph(cfg: ErConfig, directed: bool = False, weighted: bool = False) -> Graph:
    """Sample one ER graph: N uniform in node_range, p uniform in probability
    range, each pair included independently, integer weights uniform in
    weight_range. Draw order is frozen so a seed regenerates bit-identically."""
    rng = Rng(cfg.seed)
    n = rng.randint(*cfg.node_range)
    p = rng.uniform(*cfg.edge_probability_range)
    edges: list[tuple[int, int]] = []
    weights: dict[tuple[int, int], int] | None = {} if weighted else None
    if directed:
        pairs = ((u, v) for u in range(n) for v in range(n) if u != v)
    else:
        pairs = ((u, v) for u in range(n) for v in range(u + 1, n))
    for u, v in pairs:
        if rng.random() < p:
            edges.append((u, v))
            if weighted:
                weights[(u, v)] = rng.randint(*cfg.weight_range)
    g = Graph(n=n, directed=directed, edges=edges, weights=weights)
    g.validate()
    return g


def generate_er_bipartite(cfg: ErConfig) -> Graph:
    """Sample a bipartite interest graph: hosts 0..h-1, tasks h..n-1, each
    host-task pair independently with probability p, edges directed host to task."""
    rng = Rng(cfg.seed)
    n = rng.randint(*cfg.node_range)
    if n < 2:
        raise GraphError("bipartite graph needs at least 2 nodes")
    hosts = rng.randint(1, n - 1)
    p = rng.uniform(*cfg.edge_probability_range)
    edges = []
    for u in range(hosts):
        for v in range(hosts, n):
            if rng.random() < p:
                edges.append((u, v))
    g = Graph(n=n, directed=True, edges=edges, bipartite_split=(hosts, n - hosts))
    g.validate()
    return g


def extract_khop_subgraph(
    g: Graph, center: int, k: int, max_nodes: int | None = None
) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the radius-k BFS ball around center.

    BFS runs over the undirected view; the induced subgraph keeps the original
    directedness and weights. Nodes are kept in (hop, id) order and truncated
    at max_nodes, the center relabels to 0, and the original-to-new id map is
    returned. Bipartite splits do not survive extraction.
    """
    if not (0 <= center < g.n):
        raise GraphError(f"center {center} outside 0..{g.n - 1}")
    if k < 0:
        raise GraphError(f"negative radius {k}")
    adj = g.undirected_neighbors()
    order = [center]
    hop = {center: 0}
    frontier = [center]
    for depth in range(1, k + 1):
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in hop:
                    hop[v] = depth
                    nxt.append(v)
        nxt.sort()
        order.extend(nxt)
        frontier = nxt
    if max_nodes is not None:
        order = order[:max_nodes]
    mapping = {orig: new for new, orig in enumerate(order)}
    kept = set(order)
    edges = []
    weights: dict[tuple[int, int], int] | None = {} if g.weighted else None
    for u, v in g.edges:
        if u in kept and v in kept:
            a, b = mapping[u], mapping[v]
            if not g.directed and a > b:
                a, b = b, a
            edges.append((a, b))
            if weights is not None:
                weights[(a, b)] = g.weights[(u, v)]
    edges.sort()
    sub = Graph(n=len(order), directed=g.directed, edges=edges, weights=weights)
    sub.validate()
    return sub, mapping


def read_edge_list(
    text: str, directed: bool = False
) -> tuple[Graph, dict[int, int]]:
    """Parse "u v [w]" lines into a Graph with dense 0-based ids.

    "#" starts a comment, blank lines are skipped, arbitrary integer labels are
    remapped in ascending order, self loops are dropped, duplicate edges keep
    the first occurrence. Weighted and unweighted lines must not be mixed.
    Returns the graph and the original-label-to-dense-id map.
    """
    entries: list[tuple[int, int, int | None]] = []
    labels: set[int] = set()
    saw_weight = saw_plain = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise GraphError(f"line {lineno}: expected 'u v [w]', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            w = int(parts[2]) if len(parts) == 3 else None
        except ValueError as exc:
            raise GraphError(f"line {lineno}: non-integer field in {raw!r}") from exc
        if w is None:
            saw_plain = True
        else:
            saw_weight = True
        labels.add(u)
        labels.add(v)
        if u != v:
            entries.append((u, v, w))
    if saw_weight and saw_plain:
        raise GraphError("mixed weighted and unweighted lines")
    mapping = {label: i for i, label in enumerate(sorted(labels))}
    edges: list[tuple[int, int]] = []
    weights: dict[tuple[int, int], int] | None = {} if saw_weight else None
    seen = set()
    for u, v, w in entries:
        a, b = mapping[u], mapping[v]
        if not directed and a > b:
            a, b = b, a
        if (a, b) in seen:
            continue
        seen.add((a, b))
        edges.append((a, b))
        if weights is not None:
            weights[(a, b)] = w
    edges.sort()
    if weights is not None:
        weights = {e: weights[e] for e in edges}
    g = Graph(n=len(mapping), directed=directed, edges=edges, weights=weights)
    g.validate()
    return g, mapping


def question_seed(root_seed: int, *labels: object) -> int:
    """Stable per-purpose seed derivation used by generation pipelines."""
    return seed_from(root_seed, *labels)
