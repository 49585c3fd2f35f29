"""Efficiency-aware scoring and representation-preference datasets.

A response is scored GRE = ln(1 + 100 * correctness) + alpha * (-ln(tokens)),
rewarding accuracy while charging for verbosity. For each question, every
representation is probed k times, per-trial GRE scores are averaged, and the
set of representations within a tie tolerance of the best mean becomes the
question's (multi-)label. Probe traffic is cached as JSONL keyed by
(question, representation, trial) so interrupted runs resume without repeat
calls and labels can be rebuilt offline under different alpha.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import oracles
from .kinds import POOL_ORDER, GtrId, TaskKind
from .reasoner import ReasonerRequest, ask_k_trials
from .tasks import Question, render_instruction
from .textgtr import serialize as serialize_text
from .visual.render import render_visual

DEFAULT_TIE_EPSILON = 1e-9


class GreDomainError(ValueError):
    pass


@dataclass(frozen=True)
class GreParams:
    alpha: float = 0.5
    tie_epsilon: float = DEFAULT_TIE_EPSILON
    gre_of_averages: bool = False


def gre(correctness: float, tokens: float, params: GreParams = GreParams()) -> float:
    """Graph reasoning efficiency of one response."""
    if not (0.0 <= correctness <= 1.0):
        raise GreDomainError(f"correctness {correctness} outside [0, 1]")
    if tokens < 1:
        raise GreDomainError(f"token count {tokens} below 1")
    return math.log(1.0 + 100.0 * correctness) - params.alpha * math.log(tokens)


@dataclass
class ProbeRecord:
    """One cached endpoint exchange."""

    question_id: str
    gtr: GtrId
    trial: int
    raw_text: str
    completion_tokens: int
    correctness: float
    latency_ms: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "question_id": self.question_id,
            "gtr": self.gtr.value,
            "trial": self.trial,
            "raw_text": self.raw_text,
            "completion_tokens": self.completion_tokens,
            "correctness": self.correctness,
            "latency_ms": self.latency_ms,
        }

    @staticmethod
    def from_json_dict(data: dict) -> "ProbeRecord":
        return ProbeRecord(
            question_id=data["question_id"],
            gtr=GtrId(data["gtr"]),
            trial=int(data["trial"]),
            raw_text=data["raw_text"],
            completion_tokens=int(data["completion_tokens"]),
            correctness=float(data["correctness"]),
            latency_ms=float(data.get("latency_ms", 0.0)),
        )


class ProbeStore:
    """Append-only JSONL cache of probe records, resumable by key."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._records: dict[tuple[str, GtrId, int], ProbeRecord] = {}
        if self.path.exists():
            with open(self.path, "r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    rec = ProbeRecord.from_json_dict(json.loads(line))
                    self._records[(rec.question_id, rec.gtr, rec.trial)] = rec

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, key: tuple[str, GtrId, int]) -> bool:
        return key in self._records

    def get(self, question_id: str, gtr: GtrId, trial: int) -> ProbeRecord | None:
        return self._records.get((question_id, gtr, trial))

    def add(self, rec: ProbeRecord) -> None:
        key = (rec.question_id, rec.gtr, rec.trial)
        if key in self._records:
            return
        self._records[key] = rec
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec.to_json_dict()) + "\n")

    def records(self) -> list[ProbeRecord]:
        return [self._records[k] for k in sorted(self._records, key=_record_key)]


def _record_key(key: tuple[str, GtrId, int]) -> tuple:
    qid, gtr, trial = key
    return (qid, POOL_ORDER.index(gtr), trial)


@dataclass
class PreferenceExample:
    """One GTRP row: a question plus its winning representation set."""

    question_id: str
    task: TaskKind
    labels: list[GtrId]
    mean_gre: dict[GtrId, float] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "question_id": self.question_id,
            "task": self.task.value,
            "labels": [g.value for g in self.labels],
            "mean_gre": {g.value: v for g, v in sorted(self.mean_gre.items(), key=lambda kv: POOL_ORDER.index(kv[0]))},
        }

    @staticmethod
    def from_json_dict(data: dict) -> "PreferenceExample":
        return PreferenceExample(
            question_id=data["question_id"],
            task=TaskKind(data["task"]),
            labels=[GtrId(v) for v in data["labels"]],
            mean_gre={GtrId(k): float(v) for k, v in data.get("mean_gre", {}).items()},
        )


def write_examples(examples: Iterable[PreferenceExample], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for ex in examples:
            fh.write(json.dumps(ex.to_json_dict()) + "\n")


def read_examples(path: str | Path) -> list[PreferenceExample]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(PreferenceExample.from_json_dict(json.loads(line)))
    return out


def mean_gre_per_gtr(
    trials: dict[GtrId, list[tuple[float, int]]], params: GreParams = GreParams()
) -> dict[GtrId, float]:
    """Average GRE per representation from (correctness, tokens) trials.

    By default each trial is scored and the scores averaged; with
    gre_of_averages the correctness and token means are scored once.
    """
    out: dict[GtrId, float] = {}
    for gtr, pairs in trials.items():
        if not pairs:
            raise ValueError(f"no trials for {gtr.value}")
        if params.gre_of_averages:
            c = sum(p[0] for p in pairs) / len(pairs)
            t = sum(p[1] for p in pairs) / len(pairs)
            out[gtr] = gre(c, t, params)
        else:
            out[gtr] = sum(gre(c, t, params) for c, t in pairs) / len(pairs)
    return out


def preferred_set(mean_scores: dict[GtrId, float], tie_epsilon: float = DEFAULT_TIE_EPSILON) -> list[GtrId]:
    """Representations within tie_epsilon of the best mean, in pool order."""
    if not mean_scores:
        raise ValueError("empty score table")
    best = max(mean_scores.values())
    winners = [g for g, v in mean_scores.items() if best - v <= tie_epsilon]
    return sorted(winners, key=POOL_ORDER.index)


def gtr_payload(question: Question, gtr: GtrId, seed: int = 0):
    """Render one representation of a question's graph."""
    if gtr in (GtrId.TSET, GtrId.TLIST, GtrId.TMAT):
        return serialize_text(gtr, question)
    return render_visual(question.graph, gtr, seed=seed)


def probe_question(
    question: Question,
    endpoint,
    k: int,
    store: ProbeStore | None = None,
    pool: Sequence[GtrId] = POOL_ORDER,
    seed: int = 0,
) -> dict[GtrId, list[ProbeRecord]]:
    """Collect k trials of every representation, reusing cached records."""
    instruction = render_instruction(question)
    out: dict[GtrId, list[ProbeRecord]] = {}
    for gtr in pool:
        recs: list[ProbeRecord] = []
        missing: list[int] = []
        for trial in range(k):
            cached = store.get(question.id, gtr, trial) if store is not None else None
            if cached is not None:
                recs.append(cached)
            else:
                missing.append(trial)
        if missing:
            payload = gtr_payload(question, gtr, seed=seed)
            for trial in missing:
                resp = endpoint.ask(
                    ReasonerRequest(
                        question=question, instruction=instruction, gtr=payload, trial=trial
                    )
                )
                parsed = oracles.extract_answer(resp.raw_text, question.task)
                rec = ProbeRecord(
                    question_id=question.id,
                    gtr=gtr,
                    trial=trial,
                    raw_text=resp.raw_text,
                    completion_tokens=resp.completion_tokens,
                    correctness=oracles.judge(question, parsed),
                    latency_ms=resp.latency_ms,
                )
                recs.append(rec)
                if store is not None:
                    store.add(rec)
        recs.sort(key=lambda r: r.trial)
        out[gtr] = recs
    return out


def example_from_records(
    question: Question, records: dict[GtrId, list[ProbeRecord]], params: GreParams = GreParams()
) -> PreferenceExample:
    trials = {
        gtr: [(r.correctness, r.completion_tokens) for r in recs]
        for gtr, recs in records.items()
    }
    means = mean_gre_per_gtr(trials, params)
    return PreferenceExample(
        question_id=question.id,
        task=question.task,
        labels=preferred_set(means, params.tie_epsilon),
        mean_gre=means,
    )


def build_gtrp(
    questions: Sequence[Question],
    endpoint,
    k: int,
    params: GreParams = GreParams(),
    store: ProbeStore | None = None,
    pool: Sequence[GtrId] = POOL_ORDER,
    seed: int = 0,
) -> list[PreferenceExample]:
    """Probe every question over the pool and label it with its best set."""
    if k < 1:
        raise ValueError(f"trial count {k} must be positive")
    out = []
    for q in questions:
        records = probe_question(q, endpoint, k, store=store, pool=pool, seed=seed)
        out.append(example_from_records(q, records, params))
    return out


def rebuild_from_cache(
    records: Iterable[ProbeRecord],
    questions: Sequence[Question],
    params: GreParams = GreParams(),
    pool: Sequence[GtrId] = POOL_ORDER,
) -> list[PreferenceExample]:
    """Relabel from cached probes alone; raises if any trial is missing."""
    by_question: dict[str, dict[GtrId, list[ProbeRecord]]] = {}
    for rec in records:
        by_question.setdefault(rec.question_id, {}).setdefault(rec.gtr, []).append(rec)
    out = []
    for q in questions:
        table = by_question.get(q.id)
        if table is None:
            raise ValueError(f"no cached records for question {q.id}")
        for gtr in pool:
            if gtr not in table:
                raise ValueError(f"question {q.id} missing records for {gtr.value}")
            table[gtr].sort(key=lambda r: r.trial)
        out.append(example_from_records(q, {g: table[g] for g in pool}, params))
    return out


# ---------------------------------------------------------------------------
# reporting


def preference_counts(examples: Sequence[PreferenceExample]) -> dict[TaskKind, dict[GtrId, int]]:
    counts: dict[TaskKind, dict[GtrId, int]] = {}
    for ex in examples:
        table = counts.setdefault(ex.task, {g: 0 for g in POOL_ORDER})
        for g in ex.labels:
            table[g] += 1
    return counts


def preference_report_tsv(examples: Sequence[PreferenceExample]) -> str:
    counts = preference_counts(examples)
    lines = ["task\t" + "\t".join(g.value for g in POOL_ORDER)]
    for task in sorted(counts, key=lambda t: t.value):
        row = counts[task]
        lines.append(task.value + "\t" + "\t".join(str(row[g]) for g in POOL_ORDER))
    return "\n".join(lines) + "\n"


def preference_report_markdown(examples: Sequence[PreferenceExample]) -> str:
    counts = preference_counts(examples)
    header = "| Task | " + " | ".join(g.value for g in POOL_ORDER) + " |"
    rule = "|" + "---|" * (len(POOL_ORDER) + 1)
    lines = [header, rule]
    for task in sorted(counts, key=lambda t: t.value):
        row = counts[task]
        lines.append(
            "| " + task.value + " | " + " | ".join(str(row[g]) for g in POOL_ORDER) + " |"
        )
    return "\n".join(lines) + "\n"
