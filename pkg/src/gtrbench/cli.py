"""Command-line pipeline driver.

Subcommands cover the full loop: generate questions, probe an endpoint over
every representation, build the preference dataset, train the router, evaluate
fixed baselines against routing, and re-render saved results. Exit codes: 0 on
success, 2 for configuration problems, 3 for endpoint failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .graph import ErConfig
from .harness import (
    EvalResult,
    RunConfig,
    eval_report_markdown,
    eval_report_tsv,
    evaluate,
)
from .kinds import GENERATED_TASKS, TaskKind
from .preference import (
    GreParams,
    ProbeStore,
    build_gtrp,
    preference_report_markdown,
    preference_report_tsv,
    probe_question,
    read_examples,
    write_examples,
)
from .reasoner import EndpointError, HttpConfig, HttpEndpoint, MockEndpoint, MockPolicy
from .router import RouterModel, train_router
from .tasks import generate_dataset, read_questions, write_questions


class ConfigError(ValueError):
    pass


def _load_run_config(args) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        cfg = RunConfig.from_file(args.config)
    overrides = {}
    for name in ("seed", "alpha", "k", "trials", "per_task", "endpoint", "policy"):
        if getattr(args, name, None) is not None:
            overrides[name] = getattr(args, name)
    if getattr(args, "tasks", None):
        overrides["tasks"] = args.tasks.split(",")
    return cfg.override(**overrides)


def _parse_tasks(names: list[str] | None) -> tuple[TaskKind, ...]:
    if not names:
        return GENERATED_TASKS
    out = []
    for name in names:
        try:
            task = TaskKind(name)
        except ValueError:
            raise ConfigError(f"unknown task {name!r}") from None
        if task not in GENERATED_TASKS:
            raise ConfigError(f"task {name!r} cannot be generated, only ingested")
        out.append(task)
    return tuple(out)


def _make_endpoint(cfg: RunConfig):
    if cfg.endpoint == "mock":
        policy = MockPolicy.load(cfg.policy) if cfg.policy else MockPolicy(seed=cfg.seed)
        return MockEndpoint(policy)
    if cfg.endpoint == "http":
        return HttpEndpoint(HttpConfig.from_env())
    raise ConfigError(f"unknown endpoint kind {cfg.endpoint!r}")


def _cmd_generate(args) -> int:
    cfg = _load_run_config(args)
    tasks = _parse_tasks(cfg.tasks)
    questions = generate_dataset(
        ErConfig(seed=cfg.seed), per_task=cfg.per_task, tasks=tasks, root_seed=cfg.seed
    )
    write_questions(questions, args.out)
    print(f"wrote {len(questions)} questions to {args.out}")
    return 0


def _cmd_probe(args) -> int:
    cfg = _load_run_config(args)
    questions = read_questions(args.questions)
    endpoint = _make_endpoint(cfg)
    store = ProbeStore(args.store)
    before = len(store)
    for q in questions:
        probe_question(q, endpoint, cfg.k, store=store, seed=cfg.seed)
    print(f"store {args.store} holds {len(store)} records ({len(store) - before} new)")
    return 0


def _cmd_build_gtrp(args) -> int:
    cfg = _load_run_config(args)
    questions = read_questions(args.questions)
    endpoint = _make_endpoint(cfg)
    store = ProbeStore(args.store) if args.store else None
    params = GreParams(alpha=cfg.alpha)
    examples = build_gtrp(questions, endpoint, cfg.k, params=params, store=store, seed=cfg.seed)
    write_examples(examples, args.out)
    print(f"wrote {len(examples)} preference examples to {args.out}")
    if args.report:
        Path(args.report).write_text(preference_report_markdown(examples), encoding="utf-8")
    return 0


def _cmd_train_router(args) -> int:
    cfg = _load_run_config(args)
    examples = read_examples(args.gtrp)
    questions = read_questions(args.questions)
    model, report = train_router(examples, questions, seed=cfg.seed)
    model.save(args.out)
    print(
        f"router saved to {args.out} "
        f"(val exact-match {report.val_exact_match:.3f} over {report.n_val} held out)"
    )
    return 0


def _cmd_evaluate(args) -> int:
    cfg = _load_run_config(args)
    questions = read_questions(args.questions)
    endpoint = _make_endpoint(cfg)
    store = ProbeStore(args.store) if args.store else None
    router_model = RouterModel.load(args.router) if args.router else None
    result = evaluate(
        questions,
        endpoint,
        trials=cfg.trials,
        params=GreParams(alpha=cfg.alpha),
        store=store,
        router_model=router_model,
        seed=cfg.seed,
    )
    result.save(args.out)
    print(f"wrote evaluation for {len(result.strategies)} strategies to {args.out}")
    return 0


_METRIC_FLAGS = {"gre": "mean_gre", "accuracy": "accuracy", "tokens": "mean_tokens"}


def _cmd_report(args) -> int:
    result = EvalResult.load(args.eval)
    which = _METRIC_FLAGS[args.metric]
    if args.format == "tsv":
        text = eval_report_tsv(result, which)
    else:
        text = eval_report_markdown(result, which)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote report to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_preference_report(args) -> int:
    examples = read_examples(args.gtrp)
    text = (
        preference_report_tsv(examples)
        if args.format == "tsv"
        else preference_report_markdown(examples)
    )
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote report to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON file of run settings; flags override it")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--alpha", type=float, help="token-cost weight in the efficiency score")
    sub.add_argument("--k", type=int, help="trials per representation when probing")
    sub.add_argument("--trials", type=int, help="trials per question when evaluating")
    sub.add_argument("--per-task", dest="per_task", type=int)
    sub.add_argument("--endpoint", choices=["mock", "http"])
    sub.add_argument("--policy", help="mock policy JSON path")
    sub.add_argument("--tasks", help="comma-separated task names to generate")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gtrbench",
        description="Graph-QA benchmark: representation rendering, probing, and routing.",
    )
    subs = parser.add_subparsers(dest="command")

    gen = subs.add_parser("generate", help="generate questions with exact ground truth")
    gen.add_argument("--out", required=True)
    _add_common(gen)
    gen.set_defaults(handler=_cmd_generate)

    probe = subs.add_parser("probe", help="collect endpoint responses over the pool")
    probe.add_argument("--questions", required=True)
    probe.add_argument("--store", required=True, help="resumable JSONL probe cache")
    _add_common(probe)
    probe.set_defaults(handler=_cmd_probe)

    gtrp = subs.add_parser("build-gtrp", help="label questions with their best representations")
    gtrp.add_argument("--questions", required=True)
    gtrp.add_argument("--out", required=True)
    gtrp.add_argument("--store", help="probe cache to reuse and extend")
    gtrp.add_argument("--report", help="also write a per-task preference table (markdown)")
    _add_common(gtrp)
    gtrp.set_defaults(handler=_cmd_build_gtrp)

    train = subs.add_parser("train-router", help="fit the representation router")
    train.add_argument("--gtrp", required=True)
    train.add_argument("--questions", required=True)
    train.add_argument("--out", required=True)
    _add_common(train)
    train.set_defaults(handler=_cmd_train_router)

    ev = subs.add_parser("evaluate", help="score fixed baselines and routing")
    ev.add_argument("--questions", required=True)
    ev.add_argument("--out", required=True)
    ev.add_argument("--store", help="probe cache to reuse and extend")
    ev.add_argument("--router", help="trained router JSON; omitted skips the routed strategy")
    _add_common(ev)
    ev.set_defaults(handler=_cmd_evaluate)

    rep = subs.add_parser("report", help="render a saved evaluation as a table")
    rep.add_argument("--eval", required=True)
    rep.add_argument("--format", choices=["tsv", "markdown"], default="markdown")
    rep.add_argument("--metric", choices=sorted(_METRIC_FLAGS), default="gre")
    rep.add_argument("--out")
    rep.set_defaults(handler=_cmd_report)

    pref = subs.add_parser("preference-report", help="tabulate winning representations per task")
    pref.add_argument("--gtrp", required=True)
    pref.add_argument("--format", choices=["tsv", "markdown"], default="markdown")
    pref.add_argument("--out")
    pref.set_defaults(handler=_cmd_preference_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "handler"):
        parser.print_help()
        return 2
    try:
        return args.handler(args)
    except EndpointError as exc:
        print(f"endpoint error: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
