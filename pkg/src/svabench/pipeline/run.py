"""End-to-end per-design evaluation: prompt, generate, correct, check."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..checker.engine import check
from ..checker.verdict import CheckConfig, Verdict, VerdictKind
from ..rtl.elaborate import elaborate
from ..rtl.errors import RtlError
from ..rtl.parser import parse_design
from ..rtl.strip import strip_for_prompt
from ..sva.errors import SvaError
from ..sva.extract import extract_assertions
from ..sva.parser import parse_assertion
from ..sva.transform import desugar
from .client import CompletionRequest, GenParams, ModelRefusal, TransportError
from .prompt import DEFAULT_TASK_DESCRIPTION, IceTuple, build_prompt

CORRECTION_INSTRUCTION = (
    "The following SystemVerilog assertion failed to parse. Fix the syntax "
    "and reply with exactly one corrected `assert property (...);` "
    "statement and nothing else.\n"
)


@dataclass
class AssertionOutcome:
    text: str  # as extracted from the raw model output
    corrected: bool
    verdict: Verdict
    corrected_text: str | None = None  # set when the corrector produced a repair


@dataclass
class EvalRecord:
    design: str
    model_id: str
    k: int
    raw_output: str
    assertions: list[AssertionOutcome]
    timing_ms: dict[str, float] = field(default_factory=dict)
    error: str | None = None  # record-level failure; design was skipped, not dropped


def correct_syntax(client, assertion_text: str, parser_error: str, params: GenParams) -> str:
    """Single correction round; returns the repaired text or the original.

    The corrector sees the assertion together with the parser's error
    message. If no assertion can be extracted from its reply the original
    text is returned unchanged.
    """
    prompt = (
        CORRECTION_INSTRUCTION
        + f"\nAssertion:\n{assertion_text}\n\nParser error:\n{parser_error}\n"
    )
    reply = client.complete(
        CompletionRequest(
            prompt=prompt,
            params=params,
            purpose="correct",
            context={"assertion": assertion_text, "error": parser_error},
        )
    )
    candidates = extract_assertions(reply.text)
    return candidates[0] if candidates else assertion_text


def run_pipeline(
    design_name: str,
    design_source: str,
    k: int,
    ices: list[IceTuple],
    client,
    params: GenParams,
    check_config: CheckConfig | None = None,
    task_description: str = DEFAULT_TASK_DESCRIPTION,
    clock=None,
) -> EvalRecord:
    """Evaluate one design: strip, prompt, generate, extract, correct, check.

    Transport failures become a record-level ``error`` entry so the design
    is visibly skipped rather than silently dropped. ``clock`` is injectable
    so offline runs can produce bit-identical records.
    """
    clock = clock or time.perf_counter
    timing: dict[str, float] = {}
    record = EvalRecord(
        design=design_name,
        model_id=params.model_id,
        k=k,
        raw_output="",
        assertions=[],
        timing_ms=timing,
    )

    t0 = clock()
    stripped = strip_for_prompt(design_source)
    timing["strip"] = (clock() - t0) * 1000.0

    t0 = clock()
    prompt = build_prompt(task_description, ices, stripped)
    rendered = prompt.render()
    timing["prompt"] = (clock() - t0) * 1000.0

    t0 = clock()
    try:
        result = client.complete(
            CompletionRequest(
                prompt=rendered,
                params=params,
                purpose="generate",
                context={"design": design_name, "k": k},
            )
        )
    except (TransportError, ModelRefusal) as exc:
        timing["generate"] = (clock() - t0) * 1000.0
        record.error = f"{type(exc).__name__}: {exc}"
        return record
    timing["generate"] = (clock() - t0) * 1000.0
    record.raw_output = result.text

    t0 = clock()
    texts = extract_assertions(result.text)
    timing["extract"] = (clock() - t0) * 1000.0

    try:
        ts = elaborate(parse_design(design_source))
    except RtlError as exc:
        record.error = f"design failed to elaborate: {exc}"
        return record

    timing["correct"] = 0.0
    timing["check"] = 0.0
    for text in texts:
        corrected = False
        corrected_text: str | None = None
        checked_text = text
        try:
            assertion = parse_assertion(text)
            parse_err: str | None = None
        except SvaError as exc:
            parse_err = str(exc)
            assertion = None
            t0 = clock()
            try:
                repaired = correct_syntax(client, text, parse_err, params)
            except (TransportError, ModelRefusal):
                repaired = text
            timing["correct"] += (clock() - t0) * 1000.0
            if repaired != text:
                corrected = True
                corrected_text = repaired
                checked_text = repaired
                try:
                    assertion = parse_assertion(repaired)
                    parse_err = None
                except SvaError as exc:
                    parse_err = str(exc)

        if assertion is None:
            verdict = Verdict(VerdictKind.ERROR, parse_err or "unparseable assertion")
        else:
            t0 = clock()
            verdict = check(ts, desugar(assertion), check_config)
            timing["check"] += (clock() - t0) * 1000.0
        record.assertions.append(
            AssertionOutcome(
                text=text,
                corrected=corrected,
                verdict=verdict,
                corrected_text=corrected_text,
            )
        )
    return record
