"""Aggregate per-assertion verdicts into Pass/Fail/Error metrics.

Pass counts Valid and Vacuous verdicts, Fail counts counterexamples, and
Error counts everything the checker rejected (syntax, fragment, binding,
budget). Fractions are over extracted assertions, not requested designs;
designs whose output contained no assertions are tallied separately so
that failure mode stays visible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..checker.verdict import classify
from ..pipeline.run import EvalRecord


class KeyMismatch(Exception):
    pass


@dataclass
class MetricsSummary:
    model_id: str
    k: int
    counts: dict[str, int]  # pass / fail / error
    per_design: dict[str, dict[str, int]]
    no_output: list[str]  # designs whose output had zero assertions
    skipped: list[str]  # designs with a record-level failure

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def fractions(self) -> dict[str, float]:
        total = self.total
        if total == 0:
            return {"pass": 0.0, "fail": 0.0, "error": 0.0}
        return {bucket: n / total for bucket, n in self.counts.items()}


def aggregate(records: list[EvalRecord]) -> list[MetricsSummary]:
    """One summary per (model_id, k), ordered; independent of record order."""
    grouped: dict[tuple[str, int], list[EvalRecord]] = {}
    for record in records:
        grouped.setdefault((record.model_id, record.k), []).append(record)

    summaries = []
    for (model_id, k) in sorted(grouped):
        counts = {"pass": 0, "fail": 0, "error": 0}
        per_design: dict[str, dict[str, int]] = {}
        no_output: list[str] = []
        skipped: list[str] = []
        for record in sorted(grouped[(model_id, k)], key=lambda r: r.design):
            if record.error is not None:
                skipped.append(record.design)
                continue
            if not record.assertions:
                no_output.append(record.design)
                continue
            design_counts = per_design.setdefault(
                record.design, {"pass": 0, "fail": 0, "error": 0}
            )
            for outcome in record.assertions:
                bucket = classify(outcome.verdict)
                counts[bucket] += 1
                design_counts[bucket] += 1
        summaries.append(
            MetricsSummary(
                model_id=model_id,
                k=k,
                counts=counts,
                per_design=per_design,
                no_output=no_output,
                skipped=skipped,
            )
        )
    return summaries


@dataclass
class Delta:
    model_id: str
    k: int
    # relative change of each fraction, in percent of the baseline;
    # None when the baseline fraction is zero (undefined).
    deltas: dict[str, float | None] = field(default_factory=dict)


@dataclass
class DeltaReport:
    entries: list[Delta]

    def to_json_obj(self) -> list[dict]:
        return [
            {
                "model": d.model_id,
                "k": d.k,
                "deltas_pct": {
                    bucket: (value if value is not None else "undefined (zero baseline)")
                    for bucket, value in d.deltas.items()
                },
            }
            for d in self.entries
        ]

    def to_text(self) -> str:
        lines = []
        for d in self.entries:
            parts = []
            for bucket in ("pass", "fail", "error"):
                value = d.deltas[bucket]
                parts.append(
                    f"{bucket} undefined (zero baseline)"
                    if value is None
                    else f"{bucket} {value:+.2f}%"
                )
            lines.append(f"{d.model_id} k={d.k}: " + ", ".join(parts))
        return "\n".join(lines)


def compare(baseline: list[MetricsSummary], candidate: list[MetricsSummary]) -> DeltaReport:
    """Relative fraction deltas, signed, in percent of the baseline."""
    base_keys = {(s.model_id, s.k) for s in baseline}
    cand_keys = {(s.model_id, s.k) for s in candidate}
    if base_keys != cand_keys:
        raise KeyMismatch(
            f"summary keys differ: baseline {sorted(base_keys)} vs "
            f"candidate {sorted(cand_keys)}"
        )
    base_by_key = {(s.model_id, s.k): s for s in baseline}
    entries = []
    for summary in sorted(candidate, key=lambda s: (s.model_id, s.k)):
        base = base_by_key[(summary.model_id, summary.k)]
        deltas: dict[str, float | None] = {}
        for bucket in ("pass", "fail", "error"):
            b = base.fractions[bucket]
            c = summary.fractions[bucket]
            deltas[bucket] = None if b == 0 else (c - b) / b * 100.0
        entries.append(Delta(summary.model_id, summary.k, deltas))
    return DeltaReport(entries)
