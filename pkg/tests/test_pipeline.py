from __future__ import annotations

import json

import httpx
import pytest

from svabench.bench.store import bundled_mock_root, load_benchmark, select_ices
from svabench.checker.verdict import VerdictKind
from svabench.pipeline.client import (
    AuthError,
    CompletionRequest,
    GenParams,
    HttpCompletionClient,
    MockCompletionClient,
    ModelRefusal,
    TransportError,
    make_client,
)
from svabench.pipeline.prompt import (
    DEFAULT_TASK_DESCRIPTION,
    EmptyExampleSet,
    IceTuple,
    build_prompt,
)
from svabench.pipeline.run import correct_syntax, run_pipeline

from conftest import ARBITER_SRC, HALF_ADDER_SRC, P1_TEXT, P2_TEXT


def _ice(name="arbiter"):
    return IceTuple(
        name=name,
        design_text="module arbiter(clk); input clk; endmodule",
        assertions=[P1_TEXT, P2_TEXT],
    )


class TestPrompt:
    def test_four_parts_in_order(self):
        prompt = build_prompt("Generate assertions.", [_ice()], "module t; endmodule")
        text = prompt.render()
        positions = [
            text.index("Generate assertions."),
            text.index("Program 1:"),
            text.index("Assertions 1:"),
            text.index("Test Program:"),
        ]
        assert positions == sorted(positions)
        assert text.index("module arbiter") > text.index("Program 1:")

    def test_five_shot_labels(self, bundled_root):
        bench = load_benchmark(bundled_root)
        ices = select_ices(bench, 5, seed=0)
        text = build_prompt(DEFAULT_TASK_DESCRIPTION, ices, "module t; endmodule").render()
        for i in range(1, 6):
            assert f"Program {i}:" in text
            assert f"Assertions {i}:" in text
        assert text.count("Test Program:") == 1
        # examples appear in ICE order
        assert text.index("Program 1:") < text.index("Program 5:")

    def test_byte_identical_across_runs(self):
        a = build_prompt("d", [_ice()], "t").render()
        b = build_prompt("d", [_ice()], "t").render()
        assert a == b

    def test_zero_shot_requires_opt_in(self):
        with pytest.raises(EmptyExampleSet):
            build_prompt("d", [], "t")
        prompt = build_prompt("d", [], "t", allow_zero_shot=True)
        assert "Test Program:" in prompt.render()

    def test_ice_assertion_count_guard(self):
        with pytest.raises(ValueError):
            IceTuple(name="x", design_text="m", assertions=["only one;"])


def _http_client(handler, **kwargs):
    transport = httpx.MockTransport(handler)
    return HttpCompletionClient(
        endpoint="https://llm.example/v1/chat",
        api_key="k",
        sleep=lambda _: None,
        transport=transport,
        **kwargs,
    )


def _ok_response(text="hello"):
    return httpx.Response(
        200, json={"choices": [{"message": {"content": text}}], "usage": {"total_tokens": 5}}
    )


class TestHttpClient:
    def test_mock_passthrough(self):
        client = _http_client(lambda request: _ok_response("canned"))
        result = client.complete(CompletionRequest("p", GenParams()))
        assert result.text == "canned"
        assert result.usage == {"total_tokens": 5}

    def test_retry_after_429_then_success(self):
        calls = []

        def handler(request):
            calls.append(1)
            if len(calls) <= 2:
                return httpx.Response(429, json={})
            return _ok_response()

        client = _http_client(handler)
        result = client.complete(CompletionRequest("p", GenParams()))
        assert result.text == "hello"
        assert result.attempts == 3
        assert len(calls) == 3

    def test_gives_up_after_three_attempts(self):
        calls = []

        def handler(request):
            calls.append(1)
            return httpx.Response(500, json={})

        client = _http_client(handler)
        with pytest.raises(TransportError, match="3 attempts"):
            client.complete(CompletionRequest("p", GenParams()))
        assert len(calls) == 3

    def test_auth_error_not_retried(self):
        calls = []

        def handler(request):
            calls.append(1)
            return httpx.Response(401, json={})

        client = _http_client(handler)
        with pytest.raises(AuthError):
            client.complete(CompletionRequest("p", GenParams()))
        assert len(calls) == 1

    def test_empty_completion_is_refusal(self):
        client = _http_client(lambda request: _ok_response(""))
        with pytest.raises(ModelRefusal):
            client.complete(CompletionRequest("p", GenParams()))

    def test_request_carries_hyperparameters(self):
        seen = {}

        def handler(request):
            seen.update(json.loads(request.content))
            return _ok_response()

        client = _http_client(handler)
        client.complete(CompletionRequest("the prompt", GenParams(model_id="m1")))
        assert seen["model"] == "m1"
        assert seen["max_tokens"] == 1024
        assert seen["temperature"] == 1.0
        assert seen["top_p"] == 0.95
        assert seen["seed"] == 50
        assert seen["messages"] == [{"role": "user", "content": "the prompt"}]


class TestMockClient:
    def test_replays_generation_file(self):
        client = MockCompletionClient(bundled_mock_root())
        result = client.complete(
            CompletionRequest("p", GenParams(), context={"design": "mux2", "k": 1})
        )
        assert "assert property" in result.text

    def test_missing_canned_response(self):
        client = MockCompletionClient(bundled_mock_root())
        with pytest.raises(TransportError, match="no canned response"):
            client.complete(CompletionRequest("p", GenParams(), context={"design": "nope", "k": 3}))

    def test_scheme_factory(self):
        client = make_client(f"mock://{bundled_mock_root()}")
        assert isinstance(client, MockCompletionClient)

    def test_correction_lookup(self):
        client = MockCompletionClient(bundled_mock_root())
        reply = client.complete(
            CompletionRequest(
                "p",
                GenParams(),
                purpose="correct",
                context={"assertion": "xx (sel == 1 && d1 == 1) yy"},
            )
        )
        assert "(y == 1));" in reply.text


class _ScriptedClient:
    """Generation and correction scripted per test; counts calls."""

    def __init__(self, generation: str, corrections: dict[str, str] | None = None):
        self.generation = generation
        self.corrections = corrections or {}
        self.calls = []

    def complete(self, request: CompletionRequest):
        self.calls.append(request.purpose)
        if request.purpose == "generate":
            return type("R", (), {"text": self.generation})()
        broken = request.context["assertion"]
        return type("R", (), {"text": self.corrections.get(broken, "no idea")})()


class TestCorrectSyntax:
    def test_mock_appends_semicolon(self):
        broken = "assert property (@(posedge clk) a |-> b)"
        client = _ScriptedClient("", {broken: broken + ";"})
        fixed = correct_syntax(client, broken, "expected ';'", GenParams())
        assert fixed == broken + ";"

    def test_prose_reply_returns_original(self):
        client = _ScriptedClient("", {})
        broken = "assert property (@(posedge clk) a |-> b)"
        assert correct_syntax(client, broken, "err", GenParams()) == broken


class TestRunPipeline:
    def test_arbiter_p1_p2_verdicts(self):
        client = _ScriptedClient(f"intro\n{P1_TEXT}\n{P2_TEXT}\n")
        record = run_pipeline(
            "arbiter", ARBITER_SRC, 1, [_ice()], client, GenParams(model_id="m")
        )
        assert [a.verdict.kind for a in record.assertions] == [
            VerdictKind.VALID,
            VerdictKind.CEX,
        ]
        assert record.error is None
        assert record.model_id == "m"
        assert set(record.timing_ms) >= {"strip", "prompt", "generate", "extract", "check"}

    def test_empty_output(self):
        client = _ScriptedClient("no assertions here at all")
        record = run_pipeline("half_adder", HALF_ADDER_SRC, 1, [_ice()], client, GenParams())
        assert record.assertions == []
        assert record.raw_output == "no assertions here at all"

    def test_corrected_assertion_gets_real_verdict(self):
        broken = "assert property (@(posedge clk) (a == 1 && b == 0) |-> (s == 1))"
        client = _ScriptedClient(broken, {broken: "ok: " + broken + ";"})
        record = run_pipeline("half_adder", HALF_ADDER_SRC, 1, [_ice()], client, GenParams())
        outcome = record.assertions[0]
        assert outcome.corrected is True
        assert outcome.corrected_text == broken + ";"
        assert outcome.verdict.kind is VerdictKind.VALID
        assert client.calls == ["generate", "correct"]

    def test_uncorrectable_assertion_is_error(self):
        broken = "assert property (@(posedge clk) (a == ) |-> (s == 1));"
        client = _ScriptedClient(broken, {})
        record = run_pipeline("half_adder", HALF_ADDER_SRC, 1, [_ice()], client, GenParams())
        outcome = record.assertions[0]
        assert outcome.corrected is False
        assert outcome.verdict.kind is VerdictKind.ERROR

    def test_record_completeness_invariant(self):
        text = f"{P1_TEXT} junk assert property (broken ;; {P2_TEXT}"
        client = _ScriptedClient(text)
        record = run_pipeline("arbiter", ARBITER_SRC, 1, [_ice()], client, GenParams())
        from svabench.sva.extract import extract_assertions

        assert len(record.assertions) == len(extract_assertions(text))
        texts = [a.text for a in record.assertions]
        assert texts == extract_assertions(text)

    def test_llm_call_budget(self):
        # 3 extracted, 2 unparseable: total calls = 1 + 2
        broken1 = "assert property (@(posedge clk) a |-> b)"
        broken2 = "assert property (@(posedge clk) (x == ) |=> y);"
        client = _ScriptedClient(f"{P1_TEXT}\n{broken1}\n{broken2}")
        record = run_pipeline("arbiter", ARBITER_SRC, 1, [_ice()], client, GenParams())
        assert client.calls.count("generate") == 1
        assert client.calls.count("correct") == 2
        assert len(record.assertions) == 3

    def test_transport_failure_marks_record_skipped(self):
        class FailingClient:
            def complete(self, request):
                raise TransportError("endpoint down")

        record = run_pipeline("arbiter", ARBITER_SRC, 1, [_ice()], FailingClient(), GenParams())
        assert record.error is not None
        assert "endpoint down" in record.error
        assert record.assertions == []

    def test_deterministic_with_fixed_clock(self):
        client = _ScriptedClient(f"{P1_TEXT}")
        zero = lambda: 0.0
        r1 = run_pipeline("arbiter", ARBITER_SRC, 1, [_ice()], client, GenParams(), clock=zero)
        r2 = run_pipeline("arbiter", ARBITER_SRC, 1, [_ice()], client, GenParams(), clock=zero)
        assert r1 == r2
