"""Question synthesis and instruction rendering.

Seven task kinds are generated synthetically over ER graphs (connectivity,
cycle detection, topological sort, shortest path, max flow, bipartite
matching, Hamilton path). Link prediction and node classification are
recognized end to end but are only constructed from ingested real graphs plus
label data, never sampled. Graphs failing a task's validity predicate are
regenerated from a fresh seed, capped at 10,000 attempts; boolean tasks
alternate target labels so positives stay near 50%.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import oracles
from .graph import ErConfig, Graph, generate_er_bipartite, generate_er_graph
from .kinds import GENERATED_TASKS, TaskKind
from .rng import Rng, seed_from

MAX_ATTEMPTS = 10_000


class ValidityExhausted(RuntimeError):
    """Raised when no valid graph appears within the resampling cap."""

    def __init__(self, task: TaskKind, attempts: int):
        super().__init__(f"no valid {task.value} instance in {attempts} attempts")
        self.task = task
        self.attempts = attempts


@dataclass
class GroundTruth:
    kind: str  # "bool" | "int" | "distance" | "checker" | "class"
    value: object = None


@dataclass
class Question:
    id: str
    task: TaskKind
    graph: Graph
    params: dict = field(default_factory=dict)
    ground_truth: GroundTruth = field(default_factory=lambda: GroundTruth("checker"))

    def to_json_dict(self) -> dict:
        params = dict(self.params)
        if "known_labels" in params:
            params["known_labels"] = {str(k): v for k, v in params["known_labels"].items()}
        return {
            "id": self.id,
            "task": self.task.value,
            "graph": self.graph.to_json_dict(),
            "params": params,
            "ground_truth": {"kind": self.ground_truth.kind, "value": self.ground_truth.value},
        }

    @staticmethod
    def from_json_dict(data: dict) -> "Question":
        params = dict(data["params"])
        if "known_labels" in params:
            params["known_labels"] = {int(k): v for k, v in params["known_labels"].items()}
        gt = data["ground_truth"]
        return Question(
            id=data["id"],
            task=TaskKind(data["task"]),
            graph=Graph.from_json_dict(data["graph"]),
            params=params,
            ground_truth=GroundTruth(gt["kind"], gt.get("value")),
        )


# ---------------------------------------------------------------------------
# instruction templates

_MF_NOTE = (
    "Note that capacity is directional, allowing flow only in the edge "
    "direction; reverse edge direction should not be considered in the path."
)

TASK_INSTRUCTIONS: dict[TaskKind, str] = {
    TaskKind.CONN: (
        "Is there a path between node {source} and node {target} in this undirected graph?"
    ),
    TaskKind.CYC: "Is there a cycle in this undirected graph?",
    TaskKind.TS: (
        "This representation depicts a directed graph, in which each directed edge "
        "from node A to node B signifies that, according to the topological order, "
        "node A must precede node B. Q: The topological order of the directed graph is:"
    ),
    TaskKind.SP: (
        "This representation illustrates an undirected graph, with each edge's weight "
        "indicated by a numerical label in close proximity. Q: What is the shortest "
        "path from node {source} to node {target}:"
    ),
    TaskKind.MF: (
        "This representation illustrates a directed graph, with each edge's capacity "
        "indicated by a numerical label in close proximity. Q: What is the maximum "
        "flow from node {source} to node {target}: " + _MF_NOTE
    ),
    TaskKind.BGM: (
        "There are {hosts} hosts numbered from 0 to {last_host}, and {tasks} tasks "
        "numbered from {first_task} to {last_task}. Each host has a set of tasks that "
        "it is interested in, represented by arrows from a host to a task in the "
        "diagram. However, each host is capable of solving only one task, and "
        "similarly, each task can be resolved by just one host. Q:  What is the "
        "maximum number of hosts that can be assigned a task they are interested in?"
    ),
    TaskKind.HP: (
        "Q: Begin with node 0, what is the path in this graph that visits every node "
        "exactly once?"
    ),
    TaskKind.LP: (
        "The task is link prediction, aiming to predict the presence or absence of an "
        "unknown edge between Node {source} and Node {target} based on the known "
        "graph structure. Q: Does an unknown edge exist between Node {source} and "
        "Node {target}?"
    ),
    TaskKind.NC: (
        "The task is semi-supervised node classification, and needs to predict which "
        "class Node {node} belongs to, based on graph structure and known node "
        "classes. Q: Node {node} belongs to Class:"
    ),
}

_CONTROL_YESNO = (
    "Please put the answer between <answer> and </answer> tags. For example, "
    "<answer>Yes</answer> or <answer>No</answer>."
)
_CONTROL_PATH = (
    "Please put the answer between <answer> and </answer> tags. For example, "
    "<answer>0->1->2->3->4</answer> or <answer>0->1->3->7->8->4->6->5->9->2</answer>."
)
_CONTROL_INT = (
    "Please put the answer between <answer> and </answer> tags. For example, "
    "<answer>3</answer> or <answer>8</answer>."
)
_CONTROL_CLASS = (
    "Please put the answer between <answer> and </answer> tags. For example, "
    "<answer>Class 1</answer> or <answer>Class 3</answer>."
)

CONTROL_INSTRUCTIONS: dict[TaskKind, str] = {
    TaskKind.CONN: _CONTROL_YESNO,
    TaskKind.CYC: _CONTROL_YESNO,
    TaskKind.LP: _CONTROL_YESNO,
    TaskKind.TS: _CONTROL_PATH,
    TaskKind.SP: _CONTROL_PATH,
    TaskKind.HP: _CONTROL_PATH,
    TaskKind.MF: _CONTROL_INT,
    TaskKind.BGM: _CONTROL_INT,
    TaskKind.NC: _CONTROL_CLASS,
}


def render_instruction(question: Question) -> str:
    """Task instruction with parameters filled, then the control instruction."""
    task = question.task
    template = TASK_INSTRUCTIONS[task]
    params = question.params
    if task in (TaskKind.CONN, TaskKind.SP, TaskKind.MF, TaskKind.LP):
        text = template.format(source=params["source"], target=params["target"])
    elif task is TaskKind.BGM:
        hosts, tasks = question.graph.bipartite_split
        text = template.format(
            hosts=hosts,
            last_host=hosts - 1,
            tasks=tasks,
            first_task=hosts,
            last_task=hosts + tasks - 1,
        )
    elif task is TaskKind.NC:
        text = template.format(node=params["node"])
    else:
        text = template
    return text + "\n" + CONTROL_INSTRUCTIONS[task]


# ---------------------------------------------------------------------------
# generation


def _directed_reachable(g: Graph, s: int) -> set[int]:
    adj = g.out_neighbors()
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def _connected_components(g: Graph) -> list[int]:
    comp = [-1] * g.n
    adj = g.undirected_neighbors()
    label = 0
    for root in range(g.n):
        if comp[root] != -1:
            continue
        stack = [root]
        comp[root] = label
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if comp[v] == -1:
                    comp[v] = label
                    stack.append(v)
        label += 1
    return comp


def generate_question(
    task: TaskKind,
    cfg: ErConfig,
    seed: int,
    target_label: bool | None = None,
    question_id: str | None = None,
) -> Question:
    """One valid question for a generated task kind.

    Every attempt redraws the whole graph (including N and p) from a seed
    derived off the question seed, so sparse-validity tasks such as
    topological sort converge instead of exhausting on a fixed dense N.
    target_label forces the boolean answer for Conn and Cyc.
    """
    if task not in GENERATED_TASKS:
        raise ValueError(f"task {task.value} is not synthetically generated")
    qid = question_id or f"{task.value.lower()}-{seed & 0xFFFF:05d}"
    for attempt in range(MAX_ATTEMPTS):
        acfg = cfg.with_seed(seed_from(seed, "attempt", attempt))
        rng = Rng(seed_from(seed, "params", attempt))
        built = _try_build(task, acfg, rng, target_label, qid)
        if built is not None:
            return built
    raise ValidityExhausted(task, MAX_ATTEMPTS)


def _try_build(
    task: TaskKind,
    acfg: ErConfig,
    rng: Rng,
    target: bool | None,
    qid: str,
) -> Question | None:
    if task is TaskKind.CONN:
        g = generate_er_graph(acfg, directed=False, weighted=False)
        if g.n < 2:
            return None
        comp = _connected_components(g)
        pairs = [
            (s, t)
            for s in range(g.n)
            for t in range(g.n)
            if s != t and (target is None or (comp[s] == comp[t]) == target)
        ]
        if not pairs:
            return None
        s, t = rng.choice(pairs)
        value = comp[s] == comp[t]
        return Question(qid, task, g, {"source": s, "target": t}, GroundTruth("bool", value))

    if task is TaskKind.CYC:
        g = generate_er_graph(acfg, directed=False, weighted=False)
        value = oracles.solve_cycle(g)
        if target is not None and value != target:
            return None
        return Question(qid, task, g, {}, GroundTruth("bool", value))

    if task is TaskKind.TS:
        g = generate_er_graph(acfg, directed=True, weighted=False)
        if not oracles.is_dag(g):
            return None
        return Question(qid, task, g, {}, GroundTruth("checker"))

    if task is TaskKind.SP:
        g = generate_er_graph(acfg, directed=False, weighted=True)
        comp = _connected_components(g)
        pairs = [(s, t) for s in range(g.n) for t in range(g.n) if s != t and comp[s] == comp[t]]
        if not pairs:
            return None
        s, t = rng.choice(pairs)
        dist, _ = oracles.solve_shortest_path(g, s, t)
        return Question(qid, task, g, {"source": s, "target": t}, GroundTruth("distance", dist))

    if task is TaskKind.MF:
        g = generate_er_graph(acfg, directed=True, weighted=True)
        pairs = []
        for s in range(g.n):
            reach = _directed_reachable(g, s)
            pairs.extend((s, t) for t in sorted(reach) if t != s)
        if not pairs:
            return None
        s, t = rng.choice(pairs)
        flow = oracles.solve_max_flow(g, s, t)
        return Question(qid, task, g, {"source": s, "target": t}, GroundTruth("int", flow))

    if task is TaskKind.BGM:
        g = generate_er_bipartite(acfg)
        if not g.edges:
            return None
        size = oracles.solve_bgm(g)
        return Question(qid, task, g, {}, GroundTruth("int", size))

    if task is TaskKind.HP:
        g = generate_er_graph(acfg, directed=False, weighted=False)
        if oracles.solve_hamilton_path(g, start=0) is None:
            return None
        return Question(qid, task, g, {}, GroundTruth("checker"))

    raise ValueError(f"unhandled task {task}")


def generate_dataset(
    cfg: ErConfig,
    per_task: int = 1000,
    tasks: tuple[TaskKind, ...] = GENERATED_TASKS,
    root_seed: int = 0,
) -> list[Question]:
    """per_task questions for each task, ids and seeds derived from root_seed.

    Conn and Cyc alternate forced labels so each stays at 50% positives, well
    inside the 40% to 60% balance band.
    """
    questions = []
    for task in tasks:
        for i in range(per_task):
            target = (i % 2 == 0) if task in (TaskKind.CONN, TaskKind.CYC) else None
            questions.append(
                generate_question(
                    task,
                    cfg,
                    seed=seed_from(root_seed, task.value, i),
                    target_label=target,
                    question_id=f"{task.value.lower()}-{i:05d}",
                )
            )
    return questions


def positive_fraction(questions: list[Question], task: TaskKind) -> float:
    labels = [q.ground_truth.value for q in questions if q.task is task]
    if not labels:
        raise ValueError(f"no {task.value} questions")
    return sum(1 for v in labels if v) / len(labels)


# ---------------------------------------------------------------------------
# real-graph question constructors (LP and NC)


def make_link_prediction_question(
    graph: Graph, source: int, target: int, edge_exists: bool, question_id: str
) -> Question:
    params = {"source": source, "target": target}
    return Question(question_id, TaskKind.LP, graph, params, GroundTruth("bool", edge_exists))


def make_node_classification_question(
    graph: Graph,
    node: int,
    class_names: list[str],
    known_labels: dict[int, str],
    true_class: str,
    question_id: str,
) -> Question:
    if node in known_labels:
        raise ValueError(f"target node {node} must not carry a known label")
    params = {"node": node, "class_names": list(class_names), "known_labels": dict(known_labels)}
    return Question(question_id, TaskKind.NC, graph, params, GroundTruth("class", true_class))


# ---------------------------------------------------------------------------
# JSONL I/O


def write_questions(questions: list[Question], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for q in questions:
            fh.write(json.dumps(q.to_json_dict(), separators=(",", ":")) + "\n")


def read_questions(path: str | Path) -> list[Question]:
    questions = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                questions.append(Question.from_json_dict(json.loads(line)))
    return questions
