"""Multi-label representation router.

Eight independent logistic heads (one per representation) score a question
from cheap prompt-side features: the task family detected from instruction
keywords, graph size and shape statistics, and a bag of instruction keywords.
Training runs a small grid of SGD configurations on standardized features,
selects by exact-set match on a held-out tenth, then folds the standardization
back into raw-space weights so the saved model is a plain affine score.
"""

from __future__ import annotations

import hashlib
import json
import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .kinds import POOL_ORDER, GtrId, TaskKind
from .preference import PreferenceExample
from .rng import Rng, seed_from
from .tasks import TASK_INSTRUCTIONS, Question, render_instruction


class EmptyDataset(ValueError):
    pass


class DegenerateLabels(UserWarning):
    pass


_TASK_KEYWORDS: tuple[tuple[str, TaskKind], ...] = (
    ("node classification", TaskKind.NC),
    ("link prediction", TaskKind.LP),
    ("topological order", TaskKind.TS),
    ("shortest path", TaskKind.SP),
    ("maximum flow", TaskKind.MF),
    ("hosts numbered", TaskKind.BGM),
    ("visits every node", TaskKind.HP),
    ("cycle", TaskKind.CYC),
    ("path between node", TaskKind.CONN),
)


def detect_task(instruction: str) -> TaskKind | None:
    """Task family implied by an instruction, by first keyword hit."""
    low = instruction.lower()
    for needle, task in _TASK_KEYWORDS:
        if needle in low:
            return task
    return None


def _keyword_vocab() -> tuple[str, ...]:
    words: set[str] = set()
    for text in TASK_INSTRUCTIONS.values():
        for w in re.findall(r"[a-z]+", text.lower()):
            if len(w) >= 4:
                words.add(w)
    return tuple(sorted(words))


_VOCAB = _keyword_vocab()
_TASK_ORDER = tuple(TaskKind)


def feature_names() -> list[str]:
    names = [f"task={t.value}" for t in _TASK_ORDER]
    names += ["node_count", "edge_count", "density", "directed", "weighted", "bipartite"]
    names += [f"kw={w}" for w in _VOCAB]
    return names


def schema_hash() -> str:
    digest = hashlib.sha256(",".join(feature_names()).encode("utf-8")).hexdigest()
    return digest[:16]


def featurize(question: Question) -> np.ndarray:
    instruction = render_instruction(question)
    task = detect_task(instruction)
    g = question.graph
    onehot = [1.0 if task is t else 0.0 for t in _TASK_ORDER]
    m = len(g.edges)
    if g.n > 1:
        pairs = g.n * (g.n - 1)
        density = m / pairs if g.directed else 2.0 * m / pairs
    else:
        density = 0.0
    stats = [
        float(g.n),
        float(m),
        density,
        1.0 if g.directed else 0.0,
        1.0 if g.weights is not None else 0.0,
        1.0 if g.bipartite_split is not None else 0.0,
    ]
    low = instruction.lower()
    bag = [1.0 if w in low else 0.0 for w in _VOCAB]
    return np.asarray(onehot + stats + bag, dtype=np.float64)


def dataset_from_examples(
    examples: Sequence[PreferenceExample], questions: Sequence[Question]
) -> tuple[np.ndarray, np.ndarray]:
    """Feature matrix and multi-hot label matrix aligned over examples."""
    by_id = {q.id: q for q in questions}
    rows, labels = [], []
    for ex in examples:
        q = by_id.get(ex.question_id)
        if q is None:
            raise ValueError(f"no question with id {ex.question_id}")
        rows.append(featurize(q))
        y = np.zeros(len(POOL_ORDER))
        for g in ex.labels:
            y[POOL_ORDER.index(g)] = 1.0
        labels.append(y)
    if not rows:
        raise EmptyDataset("no training examples")
    return np.vstack(rows), np.vstack(labels)


_CLAMP_LO = 1e-7
_CLAMP_HI = 1.0 - 1e-7


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def bce_loss(probs: np.ndarray, targets: np.ndarray) -> float:
    """Mean over the batch of per-row BCE summed across heads; heads are
    independent classifiers so their losses add."""
    p = np.clip(probs, _CLAMP_LO, _CLAMP_HI)
    rows = -(targets * np.log(p) + (1.0 - targets) * np.log(1.0 - p)).sum(axis=1)
    return float(rows.mean())


def bce_grad(
    x: np.ndarray, probs: np.ndarray, targets: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Gradient of mean BCE for a linear-sigmoid head over a batch.

    Returns (d_loss/d_w, d_loss/d_b) with shapes (heads, dim) and (heads,).
    """
    diff = probs - targets
    gw = diff.T @ x / x.shape[0]
    gb = diff.mean(axis=0)
    return gw, gb


DEFAULT_GRID: tuple[dict, ...] = tuple(
    {"lr": lr, "weight_decay": wd, "epochs": ep, "batch_size": bs}
    for lr in (0.1, 0.01)
    for wd in (1e-2, 1e-3)
    for ep in (6, 8, 10)
    for bs in (16, 32, 64)
)


@dataclass
class RouterModel:
    weights: np.ndarray
    bias: np.ndarray
    config: dict
    schema: str = field(default_factory=schema_hash)
    pool: tuple[GtrId, ...] = POOL_ORDER

    def scores(self, question: Question) -> np.ndarray:
        x = featurize(question)
        return self.weights @ x + self.bias

    def predict_proba(self, question: Question) -> dict[GtrId, float]:
        probs = _sigmoid(self.scores(question))
        return {g: float(p) for g, p in zip(self.pool, probs)}

    def route(self, question: Question) -> GtrId:
        scores = self.scores(question)
        best = int(np.argmax(scores))
        return self.pool[best]

    def to_json_dict(self) -> dict:
        return {
            "schema_hash": self.schema,
            "pool_order": [g.value for g in self.pool],
            "heads": [
                {"gtr": g.value, "weights": list(w), "bias": float(b)}
                for g, w, b in zip(self.pool, self.weights, self.bias)
            ],
            "config": self.config,
        }

    @staticmethod
    def from_json_dict(data: dict) -> "RouterModel":
        if data["schema_hash"] != schema_hash():
            raise ValueError(
                f"model schema {data['schema_hash']} does not match {schema_hash()}"
            )
        pool = tuple(GtrId(v) for v in data["pool_order"])
        heads = data["heads"]
        weights = np.asarray([h["weights"] for h in heads], dtype=np.float64)
        bias = np.asarray([h["bias"] for h in heads], dtype=np.float64)
        return RouterModel(weights=weights, bias=bias, config=data.get("config", {}), pool=pool)

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh)

    @staticmethod
    def load(path: str | Path) -> "RouterModel":
        with open(path, "r", encoding="utf-8") as fh:
            return RouterModel.from_json_dict(json.load(fh))


@dataclass
class TrainReport:
    config: dict
    val_exact_match: float
    n_train: int
    n_val: int
    grid_results: list[tuple[dict, float]] = field(default_factory=list)


def exact_match(probs: np.ndarray, targets: np.ndarray) -> float:
    """Fraction of rows whose thresholded label set equals the target set."""
    pred = probs > 0.5
    return float(np.mean(np.all(pred == (targets > 0.5), axis=1)))


def _fit(
    x: np.ndarray, y: np.ndarray, config: dict, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    n, d = x.shape
    heads = y.shape[1]
    w = np.zeros((heads, d))
    b = np.zeros(heads)
    rng = Rng(seed)
    order = list(range(n))
    bs = config["batch_size"]
    for _ in range(config["epochs"]):
        rng.shuffle(order)
        for start in range(0, n, bs):
            idx = order[start : start + bs]
            xb, yb = x[idx], y[idx]
            probs = _sigmoid(xb @ w.T + b)
            gw, gb = bce_grad(xb, probs, yb)
            w -= config["lr"] * (gw + config["weight_decay"] * w)
            b -= config["lr"] * gb
    return w, b


def train_router(
    examples: Sequence[PreferenceExample],
    questions: Sequence[Question],
    seed: int = 0,
    grid: Sequence[dict] = DEFAULT_GRID,
) -> tuple[RouterModel, TrainReport]:
    x, y = dataset_from_examples(examples, questions)
    n = x.shape[0]
    for j, gtr in enumerate(POOL_ORDER):
        col = y[:, j]
        if col.min() == col.max():
            warnings.warn(
                f"labels for {gtr.value} are all {int(col[0])}", DegenerateLabels, stacklevel=2
            )

    mu = x.mean(axis=0)
    sigma = x.std(axis=0)
    sigma = np.where(sigma == 0.0, 1.0, sigma)
    xs = (x - mu) / sigma

    perm = list(range(n))
    Rng(seed_from("router-split", seed)).shuffle(perm)
    n_val = max(1, n // 10) if n > 1 else 0
    val_idx = perm[:n_val]
    train_idx = perm[n_val:] if n_val else perm

    best_config, best_score = None, -1.0
    results = []
    for config in grid:
        w, b = _fit(xs[train_idx], y[train_idx], config, seed_from("router-fit", seed))
        if val_idx:
            score = exact_match(_sigmoid(xs[val_idx] @ w.T + b), y[val_idx])
        else:
            score = exact_match(_sigmoid(xs[train_idx] @ w.T + b), y[train_idx])
        results.append((dict(config), score))
        if score > best_score:
            best_config, best_score = dict(config), score

    w_std, b_std = _fit(xs, y, best_config, seed_from("router-fit", seed))
    w_raw = w_std / sigma
    b_raw = b_std - w_std @ (mu / sigma)
    model = RouterModel(weights=w_raw, bias=b_raw, config=best_config)
    report = TrainReport(
        config=best_config,
        val_exact_match=best_score,
        n_train=len(train_idx),
        n_val=len(val_idx),
        grid_results=results,
    )
    return model, report
