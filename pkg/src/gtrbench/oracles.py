"""Exact solvers, answer checkers, and the judge.

Ground truth never comes from a model: connectivity uses union-find, cycles an
iterative DFS with parent tracking, shortest paths Dijkstra with a witness,
max flow Edmonds-Karp, matching Hopcroft-Karp, Hamilton paths a pruned
backtracking search. Tasks whose answers are witnesses (TS, SP, HP) are judged
by checkers so any valid witness scores, not just the solver's own.
"""

from __future__ import annotations

import heapq
import re
from collections import deque
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .kinds import TaskKind

if TYPE_CHECKING:
    from .graph import Graph
    from .tasks import Question


class OracleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# solvers


def solve_connectivity(g: "Graph", s: int, t: int) -> bool:
    """Union-find with path compression and union by size."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    size = [1] * g.n
    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            if size[ru] < size[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            size[ru] += size[rv]
    return find(s) == find(t)


def solve_cycle(g: "Graph") -> bool:
    """Undirected cycle detection: DFS that revisits a non-parent node."""
    if g.directed:
        raise OracleError("cycle oracle is defined on undirected graphs")
    adj = g.undirected_neighbors()
    seen = [False] * g.n
    for root in range(g.n):
        if seen[root]:
            continue
        stack = [(root, -1)]
        seen[root] = True
        while stack:
            node, parent = stack.pop()
            skipped_parent = False
            for nxt in adj[node]:
                if nxt == parent and not skipped_parent:
                    # one parent edge allowed; a second means a multi-edge,
                    # which the graph invariants already forbid
                    skipped_parent = True
                    continue
                if seen[nxt]:
                    return True
                seen[nxt] = True
                stack.append((nxt, node))
    return False


def kahn_topological_order(g: "Graph") -> list[int] | None:
    """One topological order (smallest id first), or None on a cycle."""
    indeg = [0] * g.n
    adj = g.out_neighbors()
    for _, v in g.edges:
        indeg[v] += 1
    ready = [u for u in range(g.n) if indeg[u] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        u = heapq.heappop(ready)
        order.append(u)
        for v in adj[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(ready, v)
    return order if len(order) == g.n else None


def is_dag(g: "Graph") -> bool:
    return kahn_topological_order(g) is not None


def check_topological_order(g: "Graph", order: list[int]) -> bool:
    if sorted(order) != list(range(g.n)):
        return False
    pos = {node: i for i, node in enumerate(order)}
    return all(pos[u] < pos[v] for u, v in g.edges)


def solve_shortest_path(g: "Graph", s: int, t: int) -> tuple[int, list[int]] | None:
    """Dijkstra distance plus one witness path, or None when t is unreachable.

    The witness walks back from t choosing the smallest predecessor id whose
    distance is exactly one edge short, so identical inputs give identical paths.
    """
    INF = float("inf")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    back: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        w = g.weight(u, v) if g.weighted else 1
        adj[u].append((v, w))
        back[v].append((u, w))
        if not g.directed:
            adj[v].append((u, w))
            back[u].append((v, w))
    dist = [INF] * g.n
    done = [False] * g.n
    heap = [(0, s)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        dist[u] = d
        for v, w in adj[u]:
            if not done[v] and d + w < dist[v]:
                dist[v] = d + w
                heapq.heappush(heap, (d + w, v))
    if dist[t] == INF:
        return None
    path = [t]
    while path[-1] != s:
        node = path[-1]
        pred = min(u for u, w in back[node] if dist[u] + w == dist[node])
        path.append(pred)
    path.reverse()
    return dist[t], path


def check_shortest_path_answer(
    g: "Graph", s: int, t: int, path: list[int], optimal_distance: int
) -> bool:
    """A path answer is correct iff it runs s to t along edges and its total
    weight equals the optimum; any optimal path is accepted."""
    if not path or path[0] != s or path[-1] != t:
        return False
    if any(not (0 <= x < g.n) for x in path):
        return False
    total = 0
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            return False
        total += g.weight(a, b) if g.weighted else 1
    return total == optimal_distance


def solve_max_flow(g: "Graph", s: int, t: int) -> int:
    """Edmonds-Karp on the residual network."""
    if not g.directed:
        raise OracleError("max flow oracle expects a directed graph")
    residual: dict[tuple[int, int], int] = {}
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in g.edges:
        cap = g.weight(u, v) if g.weighted else 1
        residual[(u, v)] = residual.get((u, v), 0) + cap
        residual.setdefault((v, u), 0)
        adj[u].add(v)
        adj[v].add(u)
    flow = 0
    while True:
        prev = [-1] * g.n
        prev[s] = s
        queue = deque([s])
        while queue and prev[t] == -1:
            u = queue.popleft()
            for v in sorted(adj[u]):
                if prev[v] == -1 and residual.get((u, v), 0) > 0:
                    prev[v] = u
                    queue.append(v)
        if prev[t] == -1:
            return flow
        bottleneck = None
        node = t
        while node != s:
            p = prev[node]
            r = residual[(p, node)]
            bottleneck = r if bottleneck is None else min(bottleneck, r)
            node = p
        node = t
        while node != s:
            p = prev[node]
            residual[(p, node)] -= bottleneck
            residual[(node, p)] += bottleneck
            node = p
        flow += bottleneck


def solve_bgm(g: "Graph") -> int:
    """Hopcroft-Karp maximum bipartite matching size."""
    if g.bipartite_split is None:
        raise OracleError("matching oracle expects a bipartite graph")
    hosts, _ = g.bipartite_split
    adj: list[list[int]] = [[] for _ in range(hosts)]
    for u, v in g.edges:
        lo, hi = min(u, v), max(u, v)
        adj[lo].append(hi)
    for row in adj:
        row.sort()
    INF = float("inf")
    match_host = [-1] * hosts
    match_task: dict[int, int] = {}
    dist: dict[int, float] = {}

    def bfs() -> bool:
        dist.clear()
        queue = deque()
        for h in range(hosts):
            if match_host[h] == -1:
                dist[h] = 0
                queue.append(h)
        found = False
        while queue:
            h = queue.popleft()
            for task in adj[h]:
                nxt = match_task.get(task, -1)
                if nxt == -1:
                    found = True
                elif nxt not in dist:
                    dist[nxt] = dist[h] + 1
                    queue.append(nxt)
        return found

    def dfs(h: int) -> bool:
        for task in adj[h]:
            nxt = match_task.get(task, -1)
            if nxt == -1 or (dist.get(nxt, INF) == dist.get(h, INF) + 1 and dfs(nxt)):
                match_host[h] = task
                match_task[task] = h
                return True
        dist[h] = INF
        return False

    size = 0
    while bfs():
        for h in range(hosts):
            if match_host[h] == -1 and dfs(h):
                size += 1
    return size


def check_hamilton_path(g: "Graph", path: list[int], start: int = 0) -> bool:
    if len(path) != g.n or not path or path[0] != start:
        return False
    if sorted(path) != list(range(g.n)):
        return False
    return all(g.has_edge(a, b) or g.has_edge(b, a) for a, b in zip(path, path[1:]))


def solve_hamilton_path(
    g: "Graph", start: int = 0, budget: int = 500_000
) -> list[int] | None:
    """Backtracking Hamilton path search from start.

    Prunes branches whose unvisited region is disconnected and orders moves by
    fewest onward options. The expansion budget makes the search terminate on
    adversarial instances; exceeding it reports no path, which generation
    treats as an invalid graph and resamples.
    """
    n = g.n
    if n == 0:
        return None
    adj = [set(row) for row in g.undirected_neighbors()]
    path = [start]
    visited = [False] * n
    visited[start] = True
    expansions = 0

    def region_connected(current: int) -> bool:
        targets = n - len(path)
        if targets == 0:
            return True
        seen = set()
        stack = [v for v in adj[current] if not visited[v]]
        seen.update(stack)
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not visited[v] and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == targets

    def extend() -> bool:
        nonlocal expansions
        if len(path) == n:
            return True
        current = path[-1]
        if not region_connected(current):
            return False
        options = sorted(
            (v for v in adj[current] if not visited[v]),
            key=lambda v: (sum(1 for w in adj[v] if not visited[w]), v),
        )
        for v in options:
            expansions += 1
            if expansions > budget:
                return False
            visited[v] = True
            path.append(v)
            if extend():
                return True
            path.pop()
            visited[v] = False
        return False

    if extend():
        return list(path)
    return None


# ---------------------------------------------------------------------------
# answer extraction and judging

_ANSWER_RE = re.compile(r"<answer>(.*?)</answer>", re.DOTALL)
_PATH_RE = re.compile(r"^\d+(?:->\d+)*$")
_INT_RE = re.compile(r"^[+-]?\d+$")


@dataclass
class ParsedAnswer:
    """A parsed model answer. Malformed answers compare unequal to everything,
    including themselves, so they can never score."""

    kind: str  # "yesno" | "path" | "int" | "class" | "malformed"
    value: object = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParsedAnswer):
            return NotImplemented
        if self.kind == "malformed" or other.kind == "malformed":
            return False
        return self.kind == other.kind and self.value == other.value

    def __hash__(self):
        return hash((self.kind, repr(self.value)))

    @property
    def malformed(self) -> bool:
        return self.kind == "malformed"


MALFORMED = ParsedAnswer("malformed")

_YESNO_TASKS = {TaskKind.CONN, TaskKind.CYC, TaskKind.LP}
_PATH_TASKS = {TaskKind.TS, TaskKind.SP, TaskKind.HP}
_INT_TASKS = {TaskKind.MF, TaskKind.BGM}


def extract_answer(raw_text: str, task: TaskKind) -> ParsedAnswer:
    """Take the last <answer>...</answer> span and parse it for the task.

    Yes/no tasks accept case-insensitive yes/no, path tasks accept
    "a->b->c" with optional whitespace, integer tasks a decimal integer,
    and classification any nonempty label. Anything else is malformed.
    """
    spans = _ANSWER_RE.findall(raw_text)
    if not spans:
        return MALFORMED
    inner = spans[-1].strip()
    if task in _YESNO_TASKS:
        word = inner.strip(".!").casefold()
        if word == "yes":
            return ParsedAnswer("yesno", True)
        if word == "no":
            return ParsedAnswer("yesno", False)
        return MALFORMED
    if task in _PATH_TASKS:
        compact = re.sub(r"\s+", "", inner)
        if _PATH_RE.match(compact):
            return ParsedAnswer("path", [int(x) for x in compact.split("->")])
        return MALFORMED
    if task in _INT_TASKS:
        token = inner.rstrip(".")
        if _INT_RE.match(token):
            return ParsedAnswer("int", int(token))
        return MALFORMED
    if task is TaskKind.NC:
        if inner:
            return ParsedAnswer("class", inner)
        return MALFORMED
    raise OracleError(f"no answer grammar for task {task}")


def _norm_label(label: str) -> str:
    return re.sub(r"\s+", " ", label.strip()).casefold()


def judge(question: "Question", answer: ParsedAnswer) -> int:
    """1 if the parsed answer is correct for the question, else 0.

    Malformed answers always score 0. Witness tasks run their checker, so any
    valid topological order, any optimal path, and any Hamilton path count.
    """
    if answer.malformed:
        return 0
    task = question.task
    g = question.graph
    gt = question.ground_truth
    if task in _YESNO_TASKS:
        return int(answer.kind == "yesno" and answer.value == gt.value)
    if task is TaskKind.TS:
        return int(answer.kind == "path" and check_topological_order(g, answer.value))
    if task is TaskKind.SP:
        return int(
            answer.kind == "path"
            and check_shortest_path_answer(
                g, question.params["source"], question.params["target"], answer.value, gt.value
            )
        )
    if task in _INT_TASKS:
        return int(answer.kind == "int" and answer.value == gt.value)
    if task is TaskKind.HP:
        return int(answer.kind == "path" and check_hamilton_path(g, answer.value))
    if task is TaskKind.NC:
        return int(answer.kind == "class" and _norm_label(answer.value) == _norm_label(gt.value))
    raise OracleError(f"no judge for task {task}")
