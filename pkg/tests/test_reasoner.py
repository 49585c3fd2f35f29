import json

import pytest
import requests

from gtrbench import oracles
from gtrbench.graph import ErConfig
from gtrbench.kinds import GENERATED_TASKS, POOL_ORDER, GtrId, TaskKind
from gtrbench.reasoner import (
    HttpConfig,
    HttpEndpoint,
    MalformedResponse,
    MockEndpoint,
    MockPolicy,
    PolicyEntry,
    RateLimited,
    ReasonerRequest,
    TransportError,
    ask_k_trials,
    compose_user_content,
    tokens_from_text,
)
from gtrbench.tasks import generate_question, render_instruction
from gtrbench.textgtr import serialize
from gtrbench.visual.render import render_visual

CFG = ErConfig(node_range=(3, 10), seed=0)


def _request(task=TaskKind.CONN, gtr=GtrId.TSET, seed=1, trial=0):
    q = generate_question(task, CFG, seed=seed)
    if gtr in (GtrId.TSET, GtrId.TLIST, GtrId.TMAT):
        payload = serialize(gtr, q)
    else:
        payload = render_visual(q.graph, gtr, seed=0)
    return ReasonerRequest(
        question=q, instruction=render_instruction(q), gtr=payload, trial=trial
    )


def test_token_fallback_counts_whitespace_words():
    assert tokens_from_text("yes it is <answer>Yes</answer>") == 4
    assert tokens_from_text("") == 1
    assert tokens_from_text("   ") == 1


def test_mock_is_deterministic_across_instances():
    req = _request()
    a = MockEndpoint(MockPolicy(seed=9)).ask(req)
    b = MockEndpoint(MockPolicy(seed=9)).ask(req)
    assert a == b


def test_mock_varies_by_trial_and_gtr():
    policy = MockPolicy(seed=9, default=PolicyEntry(0.5, 5.0, 0.8))
    ep = MockEndpoint(policy)
    tokens = {ep.ask(_request(trial=t)).completion_tokens for t in range(12)}
    assert len(tokens) > 1


def test_mock_correct_answers_judge_to_one():
    always = MockPolicy(seed=3, default=PolicyEntry(1.0, 4.0, 0.3))
    never = MockPolicy(seed=3, default=PolicyEntry(0.0, 4.0, 0.3))
    for task in GENERATED_TASKS:
        for seed in (0, 1, 2):
            q = generate_question(task, CFG, seed=seed)
            payload = serialize(GtrId.TSET, q)
            req = ReasonerRequest(q, render_instruction(q), payload)
            good = MockEndpoint(always).ask(req)
            bad = MockEndpoint(never).ask(req)
            assert oracles.judge(q, oracles.extract_answer(good.raw_text, task)) == 1, task
            assert oracles.judge(q, oracles.extract_answer(bad.raw_text, task)) == 0, task


def test_mock_correctness_rate_matches_policy():
    policy = MockPolicy(seed=7, default=PolicyEntry(0.9, 4.0, 0.3))
    ep = MockEndpoint(policy)
    q = generate_question(TaskKind.CYC, CFG, seed=5)
    payload = serialize(GtrId.TSET, q)
    hits = 0
    n = 4000
    for t in range(n):
        resp = ep.ask(ReasonerRequest(q, render_instruction(q), payload, trial=t))
        hits += oracles.judge(q, oracles.extract_answer(resp.raw_text, q.task))
    assert abs(hits / n - 0.9) < 0.02


def test_mock_token_distribution_is_lognormal():
    import math

    mu, sigma = 4.0, 0.5
    policy = MockPolicy(seed=2, default=PolicyEntry(0.5, mu, sigma))
    ep = MockEndpoint(policy)
    q = generate_question(TaskKind.CONN, CFG, seed=2)
    payload = serialize(GtrId.TSET, q)
    draws = [
        ep.ask(ReasonerRequest(q, render_instruction(q), payload, trial=t)).completion_tokens
        for t in range(10000)
    ]
    assert all(d >= 1 for d in draws)
    expected = math.exp(mu + sigma * sigma / 2)
    assert abs(sum(draws) / len(draws) - expected) / expected < 0.05


def test_mock_tokens_clamp_to_one():
    policy = MockPolicy(seed=1, default=PolicyEntry(0.5, -3.0, 0.1))
    ep = MockEndpoint(policy)
    resp = ep.ask(_request())
    assert resp.completion_tokens == 1


def test_policy_override_precedence():
    policy = MockPolicy(
        seed=0,
        default=PolicyEntry(0.1, 1.0, 0.1),
        overrides={
            ("Conn", "Tset"): PolicyEntry(0.9, 1.0, 0.1),
            ("Conn", "*"): PolicyEntry(0.8, 1.0, 0.1),
            ("*", "Tlist"): PolicyEntry(0.7, 1.0, 0.1),
        },
    )
    assert policy.entry_for(TaskKind.CONN, GtrId.TSET).p_correct == 0.9
    assert policy.entry_for(TaskKind.CONN, GtrId.TMAT).p_correct == 0.8
    assert policy.entry_for(TaskKind.CYC, GtrId.TLIST).p_correct == 0.7
    assert policy.entry_for(TaskKind.CYC, GtrId.TMAT).p_correct == 0.1


def test_policy_json_round_trip(tmp_path):
    policy = MockPolicy(
        seed=4,
        default=PolicyEntry(0.5, 5.0, 0.5),
        overrides={("SP", "Vdot"): PolicyEntry(0.95, 2.0, 0.1)},
    )
    path = tmp_path / "policy.json"
    policy.save(path)
    back = MockPolicy.load(path)
    assert back == policy


def test_ask_k_trials_assigns_trial_indices():
    ep = MockEndpoint(MockPolicy(seed=6, default=PolicyEntry(0.5, 5.0, 0.7)))
    req = _request()
    responses = ask_k_trials(ep, req, 5)
    assert len(responses) == 5
    assert responses[0] == ep.ask(ReasonerRequest(req.question, req.instruction, req.gtr, trial=0))
    with pytest.raises(ValueError):
        ask_k_trials(ep, req, 0)


# ---------------------------------------------------------------------------
# HTTP endpoint


class FakeResponse:
    def __init__(self, status_code=200, payload=None, headers=None, invalid_json=False):
        self.status_code = status_code
        self._payload = payload
        self.headers = headers or {}
        self._invalid = invalid_json
        self.text = json.dumps(payload) if payload is not None else "broken"

    def json(self):
        if self._invalid:
            raise ValueError("not json")
        return self._payload


class FakeSession:
    def __init__(self, script):
        self.script = list(script)
        self.calls = []

    def post(self, url, json=None, headers=None, timeout=None):
        self.calls.append({"url": url, "json": json, "headers": headers})
        step = self.script.pop(0)
        if isinstance(step, Exception):
            raise step
        return step


def _ok_payload(text="<answer>Yes</answer>", tokens=11):
    return {
        "choices": [{"message": {"content": text}}],
        "usage": {"completion_tokens": tokens},
    }


def _endpoint(script, **kwargs):
    sleeps = []
    config = HttpConfig(base_url="http://unit.test", api_key="k", **kwargs)
    session = FakeSession(script)
    ep = HttpEndpoint(config, session=session, sleep=sleeps.append)
    return ep, session, sleeps


def test_http_happy_path_uses_usage_tokens():
    ep, session, _ = _endpoint([FakeResponse(payload=_ok_payload(tokens=42))])
    resp = ep.ask(_request())
    assert resp.raw_text == "<answer>Yes</answer>"
    assert resp.completion_tokens == 42
    assert session.calls[0]["url"] == "http://unit.test/v1/chat/completions"
    assert session.calls[0]["headers"]["Authorization"] == "Bearer k"


def test_http_retries_transport_errors_with_backoff():
    ep, session, sleeps = _endpoint(
        [
            requests.ConnectionError("down"),
            requests.ConnectionError("down"),
            FakeResponse(payload=_ok_payload()),
        ]
    )
    resp = ep.ask(_request())
    assert resp.completion_tokens == 11
    assert len(session.calls) == 3
    assert sleeps == [0.5, 1.0]  # doubling backoff


def test_http_gives_up_after_max_retries():
    ep, session, sleeps = _endpoint([requests.ConnectionError("down")] * 5, max_retries=5)
    with pytest.raises(TransportError):
        ep.ask(_request())
    assert len(session.calls) == 5


def test_http_honors_retry_after_header():
    ep, _, sleeps = _endpoint(
        [
            FakeResponse(status_code=429, payload={}, headers={"Retry-After": "2.5"}),
            FakeResponse(payload=_ok_payload()),
        ]
    )
    ep.ask(_request())
    assert sleeps == [2.5]


def test_http_rate_limit_exhaustion_raises():
    ep, _, _ = _endpoint([FakeResponse(status_code=429, payload={})] * 5)
    with pytest.raises(RateLimited):
        ep.ask(_request())


def test_http_retries_server_errors():
    ep, session, _ = _endpoint(
        [FakeResponse(status_code=503, payload={}), FakeResponse(payload=_ok_payload())]
    )
    assert ep.ask(_request()).completion_tokens == 11
    assert len(session.calls) == 2


def test_http_rejects_client_errors_without_retry():
    ep, session, _ = _endpoint([FakeResponse(status_code=400, payload={"error": "bad"})])
    with pytest.raises(MalformedResponse):
        ep.ask(_request())
    assert len(session.calls) == 1


def test_http_rejects_invalid_json():
    ep, _, _ = _endpoint([FakeResponse(payload=None, invalid_json=True)])
    with pytest.raises(MalformedResponse):
        ep.ask(_request())


def test_http_rejects_missing_choices():
    ep, _, _ = _endpoint([FakeResponse(payload={"usage": {}})])
    with pytest.raises(MalformedResponse):
        ep.ask(_request())


def test_http_falls_back_to_whitespace_tokens():
    payload = {"choices": [{"message": {"content": "yes it is <answer>Yes</answer>"}}]}
    ep, _, _ = _endpoint([FakeResponse(payload=payload)])
    assert ep.ask(_request()).completion_tokens == 4


def test_http_joins_content_parts():
    payload = {
        "choices": [
            {
                "message": {
                    "content": [
                        {"type": "text", "text": "<answer>"},
                        {"type": "text", "text": "Yes</answer>"},
                    ]
                }
            }
        ],
        "usage": {"completion_tokens": 2},
    }
    ep, _, _ = _endpoint([FakeResponse(payload=payload)])
    assert ep.ask(_request()).raw_text == "<answer>Yes</answer>"


def test_payload_places_graph_before_instruction():
    req = _request(gtr=GtrId.TLIST)
    parts = compose_user_content(req)
    assert len(parts) == 1 and parts[0]["type"] == "text"
    text = parts[0]["text"]
    assert text.index("adjacent list") < text.index("Is there a path")


def test_payload_encodes_visual_as_data_url():
    req = _request(gtr=GtrId.VCIRCO)
    parts = compose_user_content(req, raster_size=128)
    assert parts[0]["type"] == "image_url"
    assert parts[0]["image_url"]["url"].startswith("data:image/png;base64,")
    assert parts[1]["type"] == "text"


def test_http_sends_temperature_and_max_tokens():
    ep, session, _ = _endpoint([FakeResponse(payload=_ok_payload())])
    req = _request()
    req.temperature = 0.2
    req.max_output_tokens = 99
    ep.ask(req)
    body = session.calls[0]["json"]
    assert body["temperature"] == 0.2
    assert body["max_tokens"] == 99
    assert body["messages"][0]["role"] == "user"


def test_pool_order_is_canonical():
    assert [g.value for g in POOL_ORDER] == [
        "Vdot", "Vneato", "Vcirco", "Vfdp", "Vsfdp", "Tset", "Tlist", "Tmat",
    ]
