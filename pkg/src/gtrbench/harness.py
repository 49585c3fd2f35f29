"""End-to-end evaluation: fixed-representation baselines versus routing.

Every strategy answers the same questions through the same endpoint; a fixed
strategy always renders one representation, the routed strategy asks a trained
router per question. Cached probe records are reused, so a fully warmed cache
evaluates with zero endpoint calls, and results serialize to JSON for offline
re-reporting.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Sequence

from .kinds import POOL_ORDER, GtrId, TaskKind
from .preference import GreParams, ProbeRecord, ProbeStore, gre, probe_question
from .router import RouterModel
from .tasks import Question


@dataclass
class RunConfig:
    """Pipeline knobs, loadable from JSON with flag overrides on top."""

    seed: int = 0
    alpha: float = 0.5
    k: int = 3
    trials: int = 1
    per_task: int = 50
    endpoint: str = "mock"
    policy: str | None = None
    tasks: list[str] | None = None

    @staticmethod
    def from_file(path: str | Path) -> "RunConfig":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("config file must hold a JSON object")
        allowed = set(RunConfig.__dataclass_fields__)
        unknown = set(data) - allowed
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return RunConfig(**data)

    def override(self, **kwargs) -> "RunConfig":
        supplied = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **supplied)

    def gre_params(self) -> GreParams:
        return GreParams(alpha=self.alpha)


@dataclass
class TaskSummary:
    accuracy: float
    mean_tokens: float
    mean_gre: float
    n_questions: int

    def to_json_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "mean_tokens": self.mean_tokens,
            "mean_gre": self.mean_gre,
            "n_questions": self.n_questions,
        }

    @staticmethod
    def from_json_dict(data: dict) -> "TaskSummary":
        return TaskSummary(
            accuracy=float(data["accuracy"]),
            mean_tokens=float(data["mean_tokens"]),
            mean_gre=float(data["mean_gre"]),
            n_questions=int(data["n_questions"]),
        )


@dataclass
class StrategySummary:
    name: str
    per_task: dict[TaskKind, TaskSummary]
    macro_accuracy: float
    macro_tokens: float
    macro_gre: float

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "per_task": {t.value: s.to_json_dict() for t, s in sorted(self.per_task.items(), key=lambda kv: kv[0].value)},
            "macro_accuracy": self.macro_accuracy,
            "macro_tokens": self.macro_tokens,
            "macro_gre": self.macro_gre,
        }

    @staticmethod
    def from_json_dict(data: dict) -> "StrategySummary":
        return StrategySummary(
            name=data["name"],
            per_task={TaskKind(k): TaskSummary.from_json_dict(v) for k, v in data["per_task"].items()},
            macro_accuracy=float(data["macro_accuracy"]),
            macro_tokens=float(data["macro_tokens"]),
            macro_gre=float(data["macro_gre"]),
        )


@dataclass
class EvalResult:
    alpha: float
    trials: int
    strategies: dict[str, StrategySummary]
    routed_choices: dict[str, GtrId] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "trials": self.trials,
            "strategies": {name: s.to_json_dict() for name, s in self.strategies.items()},
            "routed_choices": {qid: g.value for qid, g in sorted(self.routed_choices.items())},
        }

    @staticmethod
    def from_json_dict(data: dict) -> "EvalResult":
        return EvalResult(
            alpha=float(data["alpha"]),
            trials=int(data["trials"]),
            strategies={
                name: StrategySummary.from_json_dict(s)
                for name, s in data["strategies"].items()
            },
            routed_choices={qid: GtrId(v) for qid, v in data.get("routed_choices", {}).items()},
        )

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh, indent=2)

    @staticmethod
    def load(path: str | Path) -> "EvalResult":
        with open(path, "r", encoding="utf-8") as fh:
            return EvalResult.from_json_dict(json.load(fh))


def fixed_strategy_name(gtr: GtrId) -> str:
    return f"fixed:{gtr.value}"


ROUTED_STRATEGY = "routed"


def _summarize(
    rows: list[tuple[TaskKind, list[ProbeRecord]]], params: GreParams
) -> tuple[dict[TaskKind, TaskSummary], float, float, float]:
    per_task_rows: dict[TaskKind, list[tuple[float, float, float]]] = {}
    for task, recs in rows:
        correct = sum(r.correctness for r in recs) / len(recs)
        tokens = sum(r.completion_tokens for r in recs) / len(recs)
        score = sum(gre(r.correctness, r.completion_tokens, params) for r in recs) / len(recs)
        per_task_rows.setdefault(task, []).append((correct, tokens, score))
    per_task: dict[TaskKind, TaskSummary] = {}
    for task, triples in per_task_rows.items():
        n = len(triples)
        per_task[task] = TaskSummary(
            accuracy=100.0 * sum(t[0] for t in triples) / n,
            mean_tokens=sum(t[1] for t in triples) / n,
            mean_gre=sum(t[2] for t in triples) / n,
            n_questions=n,
        )
    n_tasks = len(per_task)
    macro_acc = sum(s.accuracy for s in per_task.values()) / n_tasks
    macro_tok = sum(s.mean_tokens for s in per_task.values()) / n_tasks
    macro_gre = sum(s.mean_gre for s in per_task.values()) / n_tasks
    return per_task, macro_acc, macro_tok, macro_gre


def evaluate_strategy(
    name: str,
    questions: Sequence[Question],
    choose: Callable[[Question], GtrId],
    endpoint,
    trials: int,
    params: GreParams,
    store: ProbeStore | None = None,
    seed: int = 0,
) -> tuple[StrategySummary, dict[str, GtrId]]:
    """Probe each question through its chosen representation and roll up."""
    rows: list[tuple[TaskKind, list[ProbeRecord]]] = []
    choices: dict[str, GtrId] = {}
    for q in questions:
        gtr = choose(q)
        choices[q.id] = gtr
        records = probe_question(q, endpoint, trials, store=store, pool=[gtr], seed=seed)
        rows.append((q.task, records[gtr]))
    per_task, macro_acc, macro_tok, macro_gre = _summarize(rows, params)
    summary = StrategySummary(
        name=name,
        per_task=per_task,
        macro_accuracy=macro_acc,
        macro_tokens=macro_tok,
        macro_gre=macro_gre,
    )
    return summary, choices


def evaluate(
    questions: Sequence[Question],
    endpoint,
    trials: int,
    params: GreParams = GreParams(),
    store: ProbeStore | None = None,
    router_model: RouterModel | None = None,
    pool: Sequence[GtrId] = POOL_ORDER,
    seed: int = 0,
) -> EvalResult:
    """Fixed baselines over the pool, plus routed when a router is given."""
    if not questions:
        raise ValueError("no questions to evaluate")
    if trials < 1:
        raise ValueError(f"trial count {trials} must be positive")
    strategies: dict[str, StrategySummary] = {}
    routed_choices: dict[str, GtrId] = {}
    for gtr in pool:
        summary, _ = evaluate_strategy(
            fixed_strategy_name(gtr), questions, lambda q, g=gtr: g,
            endpoint, trials, params, store=store, seed=seed,
        )
        strategies[summary.name] = summary
    if router_model is not None:
        summary, routed_choices = evaluate_strategy(
            ROUTED_STRATEGY, questions, router_model.route,
            endpoint, trials, params, store=store, seed=seed,
        )
        strategies[ROUTED_STRATEGY] = summary
    return EvalResult(
        alpha=params.alpha, trials=trials, strategies=strategies, routed_choices=routed_choices
    )


def evaluate_routed_from_records(
    records: Sequence[ProbeRecord],
    questions: Sequence[Question],
    router_model: RouterModel,
    trials: int,
    params: GreParams = GreParams(),
) -> StrategySummary:
    """Score routing purely from cached probes; raises on any cache miss."""
    table: dict[tuple[str, GtrId, int], ProbeRecord] = {
        (r.question_id, r.gtr, r.trial): r for r in records
    }
    rows: list[tuple[TaskKind, list[ProbeRecord]]] = []
    for q in questions:
        gtr = router_model.route(q)
        recs = []
        for trial in range(trials):
            rec = table.get((q.id, gtr, trial))
            if rec is None:
                raise ValueError(
                    f"cache is missing ({q.id}, {gtr.value}, trial {trial})"
                )
            recs.append(rec)
        rows.append((q.task, recs))
    per_task, macro_acc, macro_tok, macro_gre = _summarize(rows, params)
    return StrategySummary(
        name=ROUTED_STRATEGY,
        per_task=per_task,
        macro_accuracy=macro_acc,
        macro_tokens=macro_tok,
        macro_gre=macro_gre,
    )


# ---------------------------------------------------------------------------
# report rendering


def _task_columns(result: EvalResult) -> list[TaskKind]:
    tasks: set[TaskKind] = set()
    for s in result.strategies.values():
        tasks.update(s.per_task)
    return sorted(tasks, key=lambda t: t.value)


def _strategy_rows(result: EvalResult) -> list[str]:
    fixed = [fixed_strategy_name(g) for g in POOL_ORDER if fixed_strategy_name(g) in result.strategies]
    rest = [n for n in result.strategies if n not in fixed]
    return fixed + sorted(rest)


def _metric(summary: StrategySummary, task: TaskKind, which: str) -> float | None:
    cell = summary.per_task.get(task)
    if cell is None:
        return None
    return getattr(cell, which)


_METRIC_MACRO = {"mean_gre": "macro_gre", "accuracy": "macro_accuracy", "mean_tokens": "macro_tokens"}


def eval_report_tsv(result: EvalResult, which: str = "mean_gre") -> str:
    tasks = _task_columns(result)
    lines = ["strategy\t" + "\t".join(t.value for t in tasks) + "\tAvg."]
    for name in _strategy_rows(result):
        s = result.strategies[name]
        cells = []
        for t in tasks:
            v = _metric(s, t, which)
            cells.append("" if v is None else f"{v:.5f}")
        cells.append(f"{getattr(s, _METRIC_MACRO[which]):.5f}")
        lines.append(name + "\t" + "\t".join(cells))
    return "\n".join(lines) + "\n"


def eval_report_markdown(result: EvalResult, which: str = "mean_gre") -> str:
    tasks = _task_columns(result)
    header = "| Strategy | " + " | ".join(t.value for t in tasks) + " | Avg. |"
    rule = "|" + "---|" * (len(tasks) + 2)
    lines = [header, rule]
    for name in _strategy_rows(result):
        s = result.strategies[name]
        cells = []
        for t in tasks:
            v = _metric(s, t, which)
            cells.append("" if v is None else f"{v:.5f}")
        cells.append(f"{getattr(s, _METRIC_MACRO[which]):.5f}")
        lines.append("| " + name + " | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"
