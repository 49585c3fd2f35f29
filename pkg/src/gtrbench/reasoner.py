"""Reasoner endpoints: an OpenAI-compatible HTTP client and a deterministic mock.

The HTTP client posts chat-completion requests (text parts, images as base64
data URLs), retries transport failures with exponential backoff, honors
Retry-After on rate limits, bounds concurrent in-flight requests, and shares a
token-bucket rate limiter. The mock is a pure function of (policy, question
id, representation, trial index): it synthesizes a genuinely correct witness
answer with the configured probability, an invalid one otherwise, and draws
its completion-token count from a lognormal, so probing pipelines exercise the
full extract-and-judge path reproducibly with zero network traffic.
"""

from __future__ import annotations

import base64
import json
import threading
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Union

import math

from . import oracles
from .kinds import POOL_ORDER, GtrId, TaskKind
from .rng import Rng, seed_from
from .tasks import Question
from .textgtr import TextGtr
from .visual.raster import DEFAULT_RASTER_SIZE, raster_png
from .visual.render import VisualGtr

DEFAULT_TEMPERATURE = 0.7
DEFAULT_MAX_OUTPUT_TOKENS = 2048


class EndpointError(RuntimeError):
    pass


class TransportError(EndpointError):
    pass


class RateLimited(EndpointError):
    pass


class MalformedResponse(EndpointError):
    pass


@dataclass
class ReasonerRequest:
    question: Question
    instruction: str
    gtr: Union[TextGtr, VisualGtr]
    temperature: float = DEFAULT_TEMPERATURE
    max_output_tokens: int = DEFAULT_MAX_OUTPUT_TOKENS
    trial: int = 0


@dataclass
class ReasonerResponse:
    raw_text: str
    completion_tokens: int
    latency_ms: float


def tokens_from_text(raw_text: str) -> int:
    """Whitespace-delimited token count, clamped to at least 1; the fallback
    when a server omits usage accounting."""
    return max(1, len(raw_text.split()))


def ask_k_trials(endpoint, request: ReasonerRequest, k: int) -> list[ReasonerResponse]:
    if k < 1:
        raise ValueError(f"trial count {k} must be positive")
    return [endpoint.ask(replace(request, trial=i)) for i in range(k)]


# ---------------------------------------------------------------------------
# mock endpoint


@dataclass
class PolicyEntry:
    p_correct: float
    log_tokens_mu: float
    log_tokens_sigma: float

    def validate(self) -> None:
        if not (0.0 <= self.p_correct <= 1.0):
            raise ValueError(f"correctness probability {self.p_correct} outside [0, 1]")
        if self.log_tokens_sigma < 0:
            raise ValueError("negative lognormal sigma")


@dataclass
class MockPolicy:
    """Per (task, representation) behavior. Overrides use exact keys or "*"
    wildcards; exact beats task-wild beats gtr-wild beats default."""

    seed: int = 0
    default: PolicyEntry = field(default_factory=lambda: PolicyEntry(0.5, 5.0, 0.5))
    overrides: dict[tuple[str, str], PolicyEntry] = field(default_factory=dict)

    def entry_for(self, task: TaskKind, gtr: GtrId) -> PolicyEntry:
        for key in ((task.value, gtr.value), (task.value, "*"), ("*", gtr.value)):
            if key in self.overrides:
                return self.overrides[key]
        return self.default

    def validate(self) -> None:
        self.default.validate()
        for entry in self.overrides.values():
            entry.validate()

    def to_json_dict(self) -> dict:
        def encode(entry: PolicyEntry) -> dict:
            return {
                "p_correct": entry.p_correct,
                "log_tokens_mu": entry.log_tokens_mu,
                "log_tokens_sigma": entry.log_tokens_sigma,
            }

        return {
            "seed": self.seed,
            "default": encode(self.default),
            "overrides": [
                {"task": task, "gtr": gtr, **encode(entry)}
                for (task, gtr), entry in sorted(self.overrides.items())
            ],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "MockPolicy":
        def decode(raw: dict) -> PolicyEntry:
            return PolicyEntry(
                float(raw["p_correct"]),
                float(raw["log_tokens_mu"]),
                float(raw["log_tokens_sigma"]),
            )

        policy = MockPolicy(
            seed=int(data.get("seed", 0)),
            default=decode(data["default"]),
            overrides={
                (o["task"], o["gtr"]): decode(o) for o in data.get("overrides", [])
            },
        )
        policy.validate()
        return policy

    @staticmethod
    def load(path: str | Path) -> "MockPolicy":
        with open(path, "r", encoding="utf-8") as fh:
            return MockPolicy.from_json_dict(json.load(fh))

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh, indent=2)


def policy_from_preferences(
    winners: dict[TaskKind, GtrId],
    p_correct: float,
    seed: int = 0,
    cheap_tokens: float = 8.0,
    expensive_tokens: float = 2000.0,
) -> MockPolicy:
    """Build a policy whose top preference label for each task is
    ``winners[task]`` with probability exactly ``p_correct`` per question.

    For each task the designated representation answers correctly with
    probability ``p_correct`` at a low, deterministic token cost; the next
    representation in pool order always answers correctly at a high cost, so
    it takes the top label exactly when the designated one slips; every other
    representation never answers correctly. With single-trial probes the
    designated representation therefore tops the label set with probability
    ``p_correct``. The ordering holds whenever
    ``alpha * ln(expensive/cheap) < ln(101)`` and ``alpha > 0``, which covers
    the default scoring.
    """
    overrides: dict[tuple[str, str], PolicyEntry] = {}
    for task, gtr in winners.items():
        runner_up = POOL_ORDER[(POOL_ORDER.index(gtr) + 1) % len(POOL_ORDER)]
        overrides[(task.value, gtr.value)] = PolicyEntry(
            p_correct, math.log(cheap_tokens), 0.0
        )
        overrides[(task.value, runner_up.value)] = PolicyEntry(
            1.0, math.log(expensive_tokens), 0.0
        )
    return MockPolicy(
        seed=seed,
        default=PolicyEntry(0.0, math.log(expensive_tokens), 0.0),
        overrides=overrides,
    )


_WRONG_PATH = "0->0"


class MockEndpoint:
    """Deterministic stand-in for a vision-language reasoner."""

    def __init__(self, policy: MockPolicy):
        policy.validate()
        self.policy = policy
        self._witness_cache: dict[str, str] = {}

    def _witness(self, q: Question) -> str:
        cached = self._witness_cache.get(q.id)
        if cached is not None:
            return cached
        task = q.task
        if task in (TaskKind.CONN, TaskKind.CYC, TaskKind.LP):
            text = "Yes" if q.ground_truth.value else "No"
        elif task is TaskKind.TS:
            order = oracles.kahn_topological_order(q.graph)
            if order is None:
                raise ValueError(f"question {q.id} has a cyclic graph")
            text = "->".join(str(x) for x in order)
        elif task is TaskKind.SP:
            solved = oracles.solve_shortest_path(
                q.graph, q.params["source"], q.params["target"]
            )
            if solved is None:
                raise ValueError(f"question {q.id} has unreachable target")
            text = "->".join(str(x) for x in solved[1])
        elif task in (TaskKind.MF, TaskKind.BGM):
            text = str(q.ground_truth.value)
        elif task is TaskKind.HP:
            path = oracles.solve_hamilton_path(q.graph)
            if path is None:
                raise ValueError(f"question {q.id} has no Hamilton path")
            text = "->".join(str(x) for x in path)
        elif task is TaskKind.NC:
            text = str(q.ground_truth.value)
        else:
            raise ValueError(f"no witness synthesis for {task}")
        self._witness_cache[q.id] = text
        return text

    def _wrong(self, q: Question) -> str:
        task = q.task
        if task in (TaskKind.CONN, TaskKind.CYC, TaskKind.LP):
            return "No" if q.ground_truth.value else "Yes"
        if task in (TaskKind.MF, TaskKind.BGM):
            return str(q.ground_truth.value + 1)
        if task in (TaskKind.TS, TaskKind.SP, TaskKind.HP):
            return _WRONG_PATH
        if task is TaskKind.NC:
            truth = str(q.ground_truth.value)
            for name in q.params.get("class_names", []):
                if name != truth:
                    return name
            return truth + " (wrong)"
        raise ValueError(f"no wrong-answer synthesis for {task}")

    def ask(self, request: ReasonerRequest) -> ReasonerResponse:
        q = request.question
        gtr = request.gtr.gtr
        entry = self.policy.entry_for(q.task, gtr)
        rng = Rng(seed_from("mock", self.policy.seed, q.id, gtr.value, request.trial))
        correct = rng.random() < entry.p_correct
        tokens = max(1, round(rng.lognormal(entry.log_tokens_mu, entry.log_tokens_sigma)))
        answer = self._witness(q) if correct else self._wrong(q)
        raw = f"<answer>{answer}</answer>"
        return ReasonerResponse(raw_text=raw, completion_tokens=tokens, latency_ms=0.0)


class CountingEndpoint:
    """Wrapper that counts calls; used to prove cache-only evaluation paths."""

    def __init__(self, inner):
        self.inner = inner
        self.calls = 0

    def ask(self, request: ReasonerRequest) -> ReasonerResponse:
        self.calls += 1
        return self.inner.ask(request)


# ---------------------------------------------------------------------------
# HTTP endpoint


class TokenBucket:
    """Shared limiter: acquire() blocks until a token is available."""

    def __init__(self, rate_per_s: float, capacity: int):
        if rate_per_s <= 0 or capacity < 1:
            raise ValueError("rate and capacity must be positive")
        self.rate = rate_per_s
        self.capacity = float(capacity)
        self._tokens = float(capacity)
        self._stamp = time.monotonic()
        self._lock = threading.Lock()

    def acquire(self) -> None:
        while True:
            with self._lock:
                now = time.monotonic()
                self._tokens = min(self.capacity, self._tokens + (now - self._stamp) * self.rate)
                self._stamp = now
                if self._tokens >= 1.0:
                    self._tokens -= 1.0
                    return
                wait = (1.0 - self._tokens) / self.rate
            time.sleep(min(wait, 0.25))


@dataclass
class HttpConfig:
    base_url: str
    api_key: str = ""
    model: str = "gpt-4o"
    max_retries: int = 5
    backoff_base_s: float = 0.5
    timeout_s: float = 120.0
    max_in_flight: int = 4
    rate_per_s: float | None = None
    bucket_capacity: int = 8
    raster_size: int = DEFAULT_RASTER_SIZE

    @staticmethod
    def from_env(**kwargs) -> "HttpConfig":
        import os

        base = os.environ.get("GTR_API_BASE", "")
        key = os.environ.get("GTR_API_KEY", "")
        if not base:
            raise EndpointError("GTR_API_BASE is not set")
        return HttpConfig(base_url=base, api_key=key, **kwargs)


def compose_user_content(request: ReasonerRequest, raster_size: int = DEFAULT_RASTER_SIZE) -> list:
    """Chat content parts: graph body then instruction for text
    representations, image plus instruction for visual ones."""
    gtr = request.gtr
    if isinstance(gtr, TextGtr):
        return [{"type": "text", "text": gtr.body + "\n" + request.instruction}]
    png = raster_png(request.question.graph, gtr.layout, raster_size)
    data_url = "data:image/png;base64," + base64.b64encode(png).decode("ascii")
    return [
        {"type": "image_url", "image_url": {"url": data_url}},
        {"type": "text", "text": request.instruction},
    ]


class HttpEndpoint:
    """OpenAI-compatible chat-completions client."""

    def __init__(self, config: HttpConfig, session=None, sleep=time.sleep):
        import requests

        self.config = config
        self.session = session or requests.Session()
        self._sleep = sleep
        self._semaphore = threading.Semaphore(config.max_in_flight)
        self._bucket = (
            TokenBucket(config.rate_per_s, config.bucket_capacity)
            if config.rate_per_s
            else None
        )

    def _payload(self, request: ReasonerRequest) -> dict:
        return {
            "model": self.config.model,
            "messages": [
                {"role": "user", "content": compose_user_content(request, self.config.raster_size)}
            ],
            "temperature": request.temperature,
            "max_tokens": request.max_output_tokens,
        }

    def ask(self, request: ReasonerRequest) -> ReasonerResponse:
        import requests

        cfg = self.config
        url = cfg.base_url.rstrip("/") + "/v1/chat/completions"
        headers = {"Content-Type": "application/json"}
        if cfg.api_key:
            headers["Authorization"] = f"Bearer {cfg.api_key}"
        payload = self._payload(request)
        last_error: EndpointError | None = None
        for attempt in range(cfg.max_retries):
            if self._bucket is not None:
                self._bucket.acquire()
            start = time.perf_counter()
            try:
                with self._semaphore:
                    resp = self.session.post(
                        url, json=payload, headers=headers, timeout=cfg.timeout_s
                    )
            except requests.RequestException as exc:
                last_error = TransportError(str(exc))
                self._sleep(cfg.backoff_base_s * (2**attempt))
                continue
            latency_ms = (time.perf_counter() - start) * 1000.0
            if resp.status_code == 429:
                last_error = RateLimited(f"rate limited at attempt {attempt + 1}")
                retry_after = resp.headers.get("Retry-After")
                try:
                    delay = float(retry_after) if retry_after else cfg.backoff_base_s * (2**attempt)
                except ValueError:
                    delay = cfg.backoff_base_s * (2**attempt)
                self._sleep(delay)
                continue
            if resp.status_code >= 500:
                last_error = TransportError(f"server error {resp.status_code}")
                self._sleep(cfg.backoff_base_s * (2**attempt))
                continue
            if resp.status_code != 200:
                raise MalformedResponse(f"unexpected status {resp.status_code}: {resp.text[:200]}")
            return self._parse(resp, latency_ms)
        raise last_error or TransportError("request failed")

    @staticmethod
    def _parse(resp, latency_ms: float) -> ReasonerResponse:
        try:
            data = resp.json()
        except ValueError as exc:
            raise MalformedResponse(f"response is not JSON: {exc}") from exc
        try:
            message = data["choices"][0]["message"]
            content = message["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise MalformedResponse(f"missing choices/message fields: {exc}") from exc
        if isinstance(content, list):
            raw_text = "".join(
                part.get("text", "") for part in content if isinstance(part, dict)
            )
        elif isinstance(content, str):
            raw_text = content
        else:
            raise MalformedResponse(f"unsupported content type {type(content).__name__}")
        usage = data.get("usage") or {}
        tokens = usage.get("completion_tokens")
        if not isinstance(tokens, int) or tokens < 1:
            tokens = tokens_from_text(raw_text)
        return ReasonerResponse(
            raw_text=raw_text, completion_tokens=max(1, tokens), latency_ms=latency_ms
        )
