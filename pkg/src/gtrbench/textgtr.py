"""Textual graph topology representations: edge set, adjacency list, adjacency matrix.

Each serializer emits a deterministic natural-language body whose phrasing
depends on the task family (plain undirected, precedence, weighted, capacity,
host-task interest), and each parser inverts its serializer exactly, raising
ParseError with line and column on malformed input. Node classification
questions append a node-attribute block carrying the known labels.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .graph import Graph
from .kinds import GtrId, TaskKind
from .tasks import Question


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


@dataclass
class TextGtr:
    gtr: GtrId
    body: str


_PLAIN_TASKS = {TaskKind.CONN, TaskKind.CYC, TaskKind.HP, TaskKind.LP, TaskKind.NC}

_PLAIN_PREAMBLE = (
    "In an undirected graph, (i,j) means that node i and node j are connected "
    "with an undirected edge. The nodes are numbered from 0 to {last}"
)
_ATTR_HEADER = "The node attributes are:"


def _check_serializable(q: Question) -> None:
    if q.graph.n < 1:
        raise ValueError("cannot serialize an empty graph")
    if q.task is TaskKind.BGM and q.graph.bipartite_split is None:
        raise ValueError("matching questions need a bipartite split")


def _attr_lines(q: Question) -> list[str]:
    labels = q.params.get("known_labels") or {}
    if not labels:
        return []
    lines = [_ATTR_HEADER]
    for node in sorted(labels):
        lines.append(f"Node {node}, Attribute {labels[node]}")
    return lines


# ---------------------------------------------------------------------------
# edge-set serialization


def serialize_tset(q: Question) -> TextGtr:
    _check_serializable(q)
    g = q.graph
    task = q.task
    lines: list[str]
    if task in _PLAIN_TASKS:
        intro = _PLAIN_PREAMBLE.format(last=g.n - 1) + ", and the edges are:"
        lines = [intro]
        if g.edges:
            lines.append(" , ".join(f"({u}, {v})" for u, v in g.edges))
    elif task is TaskKind.TS:
        lines = [f"In a directed graph with {g.n} nodes numbered from 0 to {g.n - 1}:"]
        lines.extend(f"node {u} should be visited before node {v}" for u, v in g.edges)
    elif task in (TaskKind.SP, TaskKind.MF):
        kind = "an undirected" if task is TaskKind.SP else "a directed"
        lines = [f"In {kind} graph, the nodes are numbered from 0 to {g.n - 1}, and the edges are:"]
        for i, (u, v) in enumerate(g.edges):
            w = g.weights[(u, v)]
            if task is TaskKind.SP:
                entry = f"an edge between node {u} and node {v} with weight {w}"
            else:
                entry = f"an edge from node {u} to node {v} with capacity {w}"
            lines.append(entry + ("," if i < len(g.edges) - 1 else ""))
    elif task is TaskKind.BGM:
        hosts, tasks = g.bipartite_split
        lines = [
            f"There are {hosts} hosts numbered from 0 to {hosts - 1}, and {tasks} tasks "
            f"numbered from {hosts} to {hosts + tasks - 1}. Each host has a set of tasks "
            "that it is interested in:"
        ]
        lines.extend(f"Host {u} is interested in task {v}." for u, v in g.edges)
    else:
        raise ValueError(f"no edge-set template for {task}")
    lines.extend(_attr_lines(q))
    return TextGtr(GtrId.TSET, "\n".join(lines))


# ---------------------------------------------------------------------------
# adjacency-list serialization


def serialize_tlist(q: Question) -> TextGtr:
    _check_serializable(q)
    g = q.graph
    task = q.task
    lines: list[str]
    if task in _PLAIN_TASKS:
        intro = (
            _PLAIN_PREAMBLE.format(last=g.n - 1)
            + ", and the edges are presented in an adjacent list format:"
        )
        lines = [intro]
        adj = g.undirected_neighbors()
        for u in range(g.n):
            suffix = " " + ", ".join(str(v) for v in adj[u]) if adj[u] else ""
            lines.append(f"{u} <->{suffix}")
    elif task is TaskKind.TS:
        lines = [f"In a directed graph with {g.n} nodes numbered from 0 to {g.n - 1}:"]
        succ = g.out_neighbors()
        for u in range(g.n):
            if succ[u]:
                targets = ", ".join(str(v) for v in succ[u])
                lines.append(f"node {u} should be visited before node {targets}")
    elif task in (TaskKind.SP, TaskKind.MF):
        if task is TaskKind.SP:
            intro_kind, label = "an undirected", "distance"
        else:
            intro_kind, label = "a directed", "capacity"
        lines = [
            f"In {intro_kind} graph, the nodes are numbered from 0 to {g.n - 1}, and the "
            "edges are presented in an adjacent list format:"
        ]
        neighbor_rows: list[list[int]] = [[] for _ in range(g.n)]
        for u, v in g.edges:
            neighbor_rows[u].append(v)
            if not g.directed:
                neighbor_rows[v].append(u)
        for u in range(g.n):
            items = ", ".join(
                f"node {v} with {label}: {g.weight(u, v)}" for v in sorted(neighbor_rows[u])
            )
            lines.append(f"node {u} is connected to:" + (" " + items if items else ""))
    elif task is TaskKind.BGM:
        hosts, tasks = g.bipartite_split
        lines = [
            f"There are {hosts} hosts numbered from 0 to {hosts - 1}, and {tasks} tasks "
            f"numbered from {hosts} to {hosts + tasks - 1}. Each host has a set of tasks "
            "that it is interested in:"
        ]
        interest: list[list[int]] = [[] for _ in range(hosts)]
        for u, v in g.edges:
            lo, hi = min(u, v), max(u, v)
            interest[lo].append(hi)
        for h in range(hosts):
            if interest[h]:
                joined = ", ".join(str(t) for t in sorted(interest[h]))
                lines.append(f"Host {h} is interested in tasks {joined}.")
    else:
        raise ValueError(f"no adjacency-list template for {task}")
    lines.extend(_attr_lines(q))
    return TextGtr(GtrId.TLIST, "\n".join(lines))


# ---------------------------------------------------------------------------
# adjacency-matrix serialization


def _matrix_rows(g: Graph) -> list[list[int]]:
    grid = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        value = g.weights[(u, v)] if g.weighted else 1
        grid[u][v] = value
        if not g.directed:
            grid[v][u] = value
    return grid


def serialize_tmat(q: Question) -> TextGtr:
    _check_serializable(q)
    g = q.graph
    task = q.task
    lines: list[str]
    if task in _PLAIN_TASKS:
        intro = (
            _PLAIN_PREAMBLE.format(last=g.n - 1)
            + ", and the edges are represented in an adjacent matrix format:"
        )
        lines = [intro]
        lines.append(" ".join(["node0"] + [str(i) for i in range(1, g.n)]))
        for u, row in enumerate(_matrix_rows(g)):
            lines.append(f"node{u} " + " ".join(str(x) for x in row))
    elif task is TaskKind.TS:
        lines = [
            f"In a directed graph with {g.n} nodes numbered from 0 to {g.n - 1}, the "
            "edges are represented in an adjacent matrix format:"
        ]
        lines.append(" ".join(["node0"] + [str(i) for i in range(1, g.n)]))
        for u, row in enumerate(_matrix_rows(g)):
            lines.append(f"node{u} " + " ".join(str(x) for x in row))
    elif task in (TaskKind.SP, TaskKind.MF):
        kind = "an undirected" if task is TaskKind.SP else "a directed"
        lines = [
            f"In {kind} graph, the nodes are numbered from 0 to {g.n - 1}, and the edges "
            "are represented in an adjacent matrix format with weights:"
        ]
        lines.append(" ".join(["node0"] + [str(i) for i in range(1, g.n)]))
        for u, row in enumerate(_matrix_rows(g)):
            lines.append(f"node{u} " + " ".join(str(x) for x in row))
    elif task is TaskKind.BGM:
        hosts, tasks = g.bipartite_split
        lines = [
            f"There are {hosts} hosts numbered from 0 to {hosts - 1}, and {tasks} tasks "
            f"numbered from {hosts} to {hosts + tasks - 1}. Each host has a set of tasks "
            "that it is interested in, represented in an adjacent matrix format:"
        ]
        lines.append(" ".join(["Task0"] + [str(j) for j in range(1, tasks)]))
        grid = [[0] * tasks for _ in range(hosts)]
        for u, v in g.edges:
            lo, hi = min(u, v), max(u, v)
            grid[lo][hi - hosts] = 1
        for h in range(hosts):
            lines.append(f"Host{h} " + " ".join(str(x) for x in grid[h]))
    else:
        raise ValueError(f"no adjacency-matrix template for {task}")
    lines.extend(_attr_lines(q))
    return TextGtr(GtrId.TMAT, "\n".join(lines))


# ---------------------------------------------------------------------------
# parsing

_RE_PLAIN_SET = re.compile(
    r"^In an undirected graph, \(i,j\) means that node i and node j are connected "
    r"with an undirected edge\. The nodes are numbered from 0 to (\d+), and the edges are:$"
)
_RE_PLAIN_LIST = re.compile(
    r"^In an undirected graph, \(i,j\) means that node i and node j are connected "
    r"with an undirected edge\. The nodes are numbered from 0 to (\d+), and the edges "
    r"are presented in an adjacent list format:$"
)
_RE_PLAIN_MAT = re.compile(
    r"^In an undirected graph, \(i,j\) means that node i and node j are connected "
    r"with an undirected edge\. The nodes are numbered from 0 to (\d+), and the edges "
    r"are represented in an adjacent matrix format:$"
)
_RE_TS_INTRO = re.compile(r"^In a directed graph with (\d+) nodes numbered from 0 to (\d+):$")
_RE_TS_MAT = re.compile(
    r"^In a directed graph with (\d+) nodes numbered from 0 to (\d+), the edges are "
    r"represented in an adjacent matrix format:$"
)
_RE_WEIGHTED_SET = re.compile(
    r"^In (an undirected|a directed) graph, the nodes are numbered from 0 to (\d+), "
    r"and the edges are:$"
)
_RE_WEIGHTED_LIST = re.compile(
    r"^In (an undirected|a directed) graph, the nodes are numbered from 0 to (\d+), "
    r"and the edges are presented in an adjacent list format:$"
)
_RE_WEIGHTED_MAT = re.compile(
    r"^In (an undirected|a directed) graph, the nodes are numbered from 0 to (\d+), "
    r"and the edges are represented in an adjacent matrix format with weights:$"
)
_RE_BGM_INTRO = re.compile(
    r"^There are (\d+) hosts numbered from 0 to (\d+), and (\d+) tasks numbered from "
    r"(\d+) to (\d+)\. Each host has a set of tasks that it is interested in"
    r"(:|, represented in an adjacent matrix format:)$"
)
_RE_SET_EDGE = re.compile(r"^\((\d+), (\d+)\)$")
_RE_TS_SET_LINE = re.compile(r"^node (\d+) should be visited before node (\d+)$")
_RE_TS_LIST_LINE = re.compile(r"^node (\d+) should be visited before node (\d+(?:, \d+)*)$")
_RE_SP_SET_LINE = re.compile(r"^an edge between node (\d+) and node (\d+) with weight (\d+)$")
_RE_MF_SET_LINE = re.compile(r"^an edge from node (\d+) to node (\d+) with capacity (\d+)$")
_RE_BGM_SET_LINE = re.compile(r"^Host (\d+) is interested in task (\d+)\.$")
_RE_BGM_LIST_LINE = re.compile(r"^Host (\d+) is interested in tasks (\d+(?:, \d+)*)\.$")
_RE_PLAIN_LIST_LINE = re.compile(r"^(\d+) <->(?: (\d+(?:, \d+)*))?$")
_RE_WL_LIST_LINE = re.compile(r"^node (\d+) is connected to:(?: (.*))?$")
_RE_WL_ITEM = re.compile(r"^node (\d+) with (distance|capacity): (\d+)$")


def _intro(lines: list[str], pattern: re.Pattern, what: str) -> re.Match:
    if not lines:
        raise ParseError("empty body", 1)
    m = pattern.match(lines[0])
    if not m:
        raise ParseError(f"bad {what} preamble", 1)
    return m


def _split_attr_block(lines: list[str]) -> list[str]:
    """Drop a trailing node-attribute block; attributes live on the question."""
    if _ATTR_HEADER in lines:
        idx = lines.index(_ATTR_HEADER)
        for off, line in enumerate(lines[idx + 1 :], start=idx + 2):
            if not re.match(r"^Node \d+, Attribute .+$", line):
                raise ParseError("bad attribute line", off)
        return lines[:idx]
    return lines


def _check_node(x: int, n: int, lineno: int) -> None:
    if x >= n:
        raise ParseError(f"node {x} out of range 0..{n - 1}", lineno)


def _finish(
    n: int,
    directed: bool,
    edge_items: list[tuple[int, int, int | None]],
    bipartite_split: tuple[int, int] | None = None,
    weighted: bool = False,
) -> Graph:
    edges = []
    weights: dict[tuple[int, int], int] | None = {} if weighted else None
    seen = set()
    for u, v, w in edge_items:
        if not directed and u > v:
            u, v = v, u
        if (u, v) in seen:
            raise ParseError(f"duplicate edge ({u}, {v})", 1)
        seen.add((u, v))
        edges.append((u, v))
        if weighted:
            weights[(u, v)] = w
    edges.sort()
    if weights is not None:
        weights = {e: weights[e] for e in edges}
    g = Graph(n=n, directed=directed, edges=edges, weights=weights, bipartite_split=bipartite_split)
    g.validate()
    return g


def parse_tset(body: str, task: TaskKind) -> Graph:
    lines = _split_attr_block(body.split("\n"))
    if task in _PLAIN_TASKS:
        n = int(_intro(lines, _RE_PLAIN_SET, "edge-set").group(1)) + 1
        items: list[tuple[int, int, int | None]] = []
        if len(lines) > 2:
            raise ParseError("unexpected extra line", 3)
        if len(lines) == 2:
            for pos, chunk in enumerate(lines[1].split(" , ")):
                m = _RE_SET_EDGE.match(chunk)
                if not m:
                    raise ParseError(f"bad edge {chunk!r}", 2, lines[1].find(chunk) + 1)
                u, v = int(m.group(1)), int(m.group(2))
                _check_node(u, n, 2)
                _check_node(v, n, 2)
                items.append((u, v, None))
        return _finish(n, False, items)
    if task is TaskKind.TS:
        m = _intro(lines, _RE_TS_INTRO, "precedence")
        n = int(m.group(1))
        if int(m.group(2)) != n - 1:
            raise ParseError("inconsistent node count", 1)
        items = []
        for lineno, line in enumerate(lines[1:], start=2):
            em = _RE_TS_SET_LINE.match(line)
            if not em:
                raise ParseError(f"bad precedence line {line!r}", lineno)
            u, v = int(em.group(1)), int(em.group(2))
            _check_node(u, n, lineno)
            _check_node(v, n, lineno)
            items.append((u, v, None))
        return _finish(n, True, items)
    if task in (TaskKind.SP, TaskKind.MF):
        m = _intro(lines, _RE_WEIGHTED_SET, "weighted edge-set")
        directed = m.group(1) == "a directed"
        if directed != (task is TaskKind.MF):
            raise ParseError("direction does not match task", 1)
        n = int(m.group(2)) + 1
        pattern = _RE_SP_SET_LINE if task is TaskKind.SP else _RE_MF_SET_LINE
        items = []
        for lineno, line in enumerate(lines[1:], start=2):
            is_last = lineno == len(lines)
            if not is_last:
                if not line.endswith(","):
                    raise ParseError("missing separator", lineno, len(line) + 1)
                line = line[:-1]
            elif line.endswith(","):
                raise ParseError("trailing separator", lineno, len(line))
            em = pattern.match(line)
            if not em:
                raise ParseError(f"bad edge line {line!r}", lineno)
            u, v, w = int(em.group(1)), int(em.group(2)), int(em.group(3))
            _check_node(u, n, lineno)
            _check_node(v, n, lineno)
            items.append((u, v, w))
        return _finish(n, directed, items, weighted=True)
    if task is TaskKind.BGM:
        m = _intro(lines, _RE_BGM_INTRO, "host-task")
        hosts, tasks = int(m.group(1)), int(m.group(3))
        n = hosts + tasks
        items = []
        for lineno, line in enumerate(lines[1:], start=2):
            em = _RE_BGM_SET_LINE.match(line)
            if not em:
                raise ParseError(f"bad interest line {line!r}", lineno)
            h, t = int(em.group(1)), int(em.group(2))
            if h >= hosts or not (hosts <= t < n):
                raise ParseError(f"interest ({h}, {t}) outside partitions", lineno)
            items.append((h, t, None))
        return _finish(n, True, items, bipartite_split=(hosts, tasks))
    raise ValueError(f"no edge-set grammar for {task}")


def parse_tlist(body: str, task: TaskKind) -> Graph:
    lines = _split_attr_block(body.split("\n"))
    if task in _PLAIN_TASKS:
        n = int(_intro(lines, _RE_PLAIN_LIST, "adjacency-list").group(1)) + 1
        if len(lines) != n + 1:
            raise ParseError(f"expected {n} adjacency lines", len(lines))
        pairs = set()
        for lineno, line in enumerate(lines[1:], start=2):
            m = _RE_PLAIN_LIST_LINE.match(line)
            if not m:
                raise ParseError(f"bad adjacency line {line!r}", lineno)
            u = int(m.group(1))
            if u != lineno - 2:
                raise ParseError(f"expected node {lineno - 2} line", lineno)
            for v_text in (m.group(2) or "").split(", ") if m.group(2) else []:
                v = int(v_text)
                _check_node(v, n, lineno)
                pairs.add((min(u, v), max(u, v)))
        items = [(u, v, None) for u, v in sorted(pairs)]
        return _finish(n, False, items)
    if task is TaskKind.TS:
        m = _intro(lines, _RE_TS_INTRO, "precedence")
        n = int(m.group(1))
        if int(m.group(2)) != n - 1:
            raise ParseError("inconsistent node count", 1)
        items = []
        for lineno, line in enumerate(lines[1:], start=2):
            em = _RE_TS_LIST_LINE.match(line)
            if not em:
                raise ParseError(f"bad precedence line {line!r}", lineno)
            u = int(em.group(1))
            _check_node(u, n, lineno)
            for v_text in em.group(2).split(", "):
                v = int(v_text)
                _check_node(v, n, lineno)
                items.append((u, v, None))
        return _finish(n, True, items)
    if task in (TaskKind.SP, TaskKind.MF):
        m = _intro(lines, _RE_WEIGHTED_LIST, "weighted adjacency-list")
        directed = m.group(1) == "a directed"
        if directed != (task is TaskKind.MF):
            raise ParseError("direction does not match task", 1)
        n = int(m.group(2)) + 1
        if len(lines) != n + 1:
            raise ParseError(f"expected {n} adjacency lines", len(lines))
        expected_label = "distance" if task is TaskKind.SP else "capacity"
        found: dict[tuple[int, int], int] = {}
        for lineno, line in enumerate(lines[1:], start=2):
            lm = _RE_WL_LIST_LINE.match(line)
            if not lm:
                raise ParseError(f"bad adjacency line {line!r}", lineno)
            u = int(lm.group(1))
            if u != lineno - 2:
                raise ParseError(f"expected node {lineno - 2} line", lineno)
            rest = lm.group(2)
            if rest is None:
                continue
            for item in rest.split(", node "):
                item = item if item.startswith("node ") else "node " + item
                im = _RE_WL_ITEM.match(item)
                if not im or im.group(2) != expected_label:
                    raise ParseError(f"bad neighbor item {item!r}", lineno)
                v, w = int(im.group(1)), int(im.group(3))
                _check_node(v, n, lineno)
                key = (u, v) if directed else (min(u, v), max(u, v))
                if key in found and found[key] != w:
                    raise ParseError(f"conflicting weights on {key}", lineno)
                found[key] = w
        items = [(u, v, w) for (u, v), w in sorted(found.items())]
        return _finish(n, directed, items, weighted=True)
    if task is TaskKind.BGM:
        m = _intro(lines, _RE_BGM_INTRO, "host-task")
        hosts, tasks = int(m.group(1)), int(m.group(3))
        n = hosts + tasks
        items = []
        for lineno, line in enumerate(lines[1:], start=2):
            em = _RE_BGM_LIST_LINE.match(line)
            if not em:
                raise ParseError(f"bad interest line {line!r}", lineno)
            h = int(em.group(1))
            for t_text in em.group(2).split(", "):
                t = int(t_text)
                if h >= hosts or not (hosts <= t < n):
                    raise ParseError(f"interest ({h}, {t}) outside partitions", lineno)
                items.append((h, t, None))
        return _finish(n, True, items, bipartite_split=(hosts, tasks))
    raise ValueError(f"no adjacency-list grammar for {task}")


def _parse_grid(
    lines: list[str], cols: int, rows: int, row_prefix: str, col_prefix: str, start_line: int
) -> list[list[int]]:
    header = lines[0]
    expected = " ".join([f"{col_prefix}0"] + [str(i) for i in range(1, cols)])
    if header != expected:
        raise ParseError(f"bad matrix header {header!r}", start_line)
    if len(lines) != rows + 1:
        raise ParseError(f"expected {rows} matrix rows", start_line + len(lines))
    grid = []
    for i, line in enumerate(lines[1:]):
        lineno = start_line + 1 + i
        parts = line.split(" ")
        if parts[0] != f"{row_prefix}{i}":
            raise ParseError(f"expected row label {row_prefix}{i}", lineno)
        if len(parts) != cols + 1:
            raise ParseError(f"expected {cols} entries", lineno, len(line) + 1)
        try:
            row = [int(x) for x in parts[1:]]
        except ValueError:
            raise ParseError("non-integer matrix entry", lineno)
        grid.append(row)
    return grid


def parse_tmat(body: str, task: TaskKind) -> Graph:
    lines = _split_attr_block(body.split("\n"))
    if task in _PLAIN_TASKS or task in (TaskKind.SP, TaskKind.MF) or task is TaskKind.TS:
        if task in _PLAIN_TASKS:
            n = int(_intro(lines, _RE_PLAIN_MAT, "adjacency-matrix").group(1)) + 1
            directed, weighted = False, False
        elif task is TaskKind.TS:
            m = _intro(lines, _RE_TS_MAT, "precedence matrix")
            n = int(m.group(1))
            if int(m.group(2)) != n - 1:
                raise ParseError("inconsistent node count", 1)
            directed, weighted = True, False
        else:
            m = _intro(lines, _RE_WEIGHTED_MAT, "weighted matrix")
            directed = m.group(1) == "a directed"
            if directed != (task is TaskKind.MF):
                raise ParseError("direction does not match task", 1)
            n = int(m.group(2)) + 1
            weighted = True
        grid = _parse_grid(lines[1:], n, n, "node", "node", 2)
        items: list[tuple[int, int, int | None]] = []
        for u in range(n):
            if grid[u][u] != 0:
                raise ParseError(f"self loop at node {u}", 3 + u)
            for v in range(n):
                if not directed and v <= u:
                    if grid[u][v] != grid[v][u]:
                        raise ParseError(f"asymmetric entry at ({u}, {v})", 3 + u)
                    continue
                if grid[u][v] != 0:
                    value = grid[u][v] if weighted else None
                    if not weighted and grid[u][v] != 1:
                        raise ParseError(f"non-binary entry at ({u}, {v})", 3 + u)
                    items.append((u, v, value))
        return _finish(n, directed, items, weighted=weighted)
    if task is TaskKind.BGM:
        m = _intro(lines, _RE_BGM_INTRO, "host-task")
        hosts, tasks = int(m.group(1)), int(m.group(3))
        grid = _parse_grid(lines[1:], tasks, hosts, "Host", "Task", 2)
        items = []
        for h in range(hosts):
            for j in range(tasks):
                if grid[h][j] not in (0, 1):
                    raise ParseError(f"non-binary entry at ({h}, {j})", 3 + h)
                if grid[h][j]:
                    items.append((h, hosts + j, None))
        return _finish(hosts + tasks, True, items, bipartite_split=(hosts, tasks))
    raise ValueError(f"no adjacency-matrix grammar for {task}")


# ---------------------------------------------------------------------------
# dispatch

_SERIALIZERS = {
    GtrId.TSET: serialize_tset,
    GtrId.TLIST: serialize_tlist,
    GtrId.TMAT: serialize_tmat,
}
_PARSERS = {
    GtrId.TSET: parse_tset,
    GtrId.TLIST: parse_tlist,
    GtrId.TMAT: parse_tmat,
}


def serialize(gtr: GtrId, question: Question) -> TextGtr:
    if gtr not in _SERIALIZERS:
        raise ValueError(f"{gtr.value} is not a textual representation")
    return _SERIALIZERS[gtr](question)


def parse(gtr: GtrId, body: str, task: TaskKind) -> Graph:
    if gtr not in _PARSERS:
        raise ValueError(f"{gtr.value} is not a textual representation")
    return _PARSERS[gtr](body, task)
