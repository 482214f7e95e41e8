"""Serialization: records.jsonl, metrics.csv/json, and grouped-bar plot data.

All writers produce byte-stable output for fixed inputs and write through a
temp file + rename so partially written results are never observed.
"""

from __future__ import annotations

import csv
import io
import json
import os
from pathlib import Path

from ..checker.verdict import Trace, Verdict, VerdictKind
from ..pipeline.run import AssertionOutcome, EvalRecord
from .metrics import MetricsSummary


class IoError(Exception):
    pass


# -- verdict / record JSON ---------------------------------------------------


def verdict_to_obj(verdict: Verdict) -> dict:
    obj: dict = {"kind": verdict.kind.value, "detail": verdict.detail}
    obj["trace"] = verdict.trace.to_json_obj() if verdict.trace else None
    return obj


def verdict_from_obj(obj: dict) -> Verdict:
    trace = None
    if obj.get("trace") is not None:
        cycles = []
        widths: dict[str, int] = {}
        for cycle in obj["trace"]:
            env = {}
            for name, bits in cycle["signals"].items():
                env[name] = int(bits[1:], 2)
                widths[name] = len(bits) - 1
            cycles.append(env)
        trace = Trace(tuple(cycles), widths)
    return Verdict(VerdictKind(obj["kind"]), obj.get("detail", ""), trace)


def record_to_obj(record: EvalRecord) -> dict:
    return {
        "design": record.design,
        "model_id": record.model_id,
        "k": record.k,
        "raw_output": record.raw_output,
        "assertions": [
            {
                "text": outcome.text,
                "corrected": outcome.corrected,
                "corrected_text": outcome.corrected_text,
                "verdict": verdict_to_obj(outcome.verdict),
            }
            for outcome in record.assertions
        ],
        "timing_ms": record.timing_ms,
        "error": record.error,
    }


def record_from_obj(obj: dict) -> EvalRecord:
    return EvalRecord(
        design=obj["design"],
        model_id=obj["model_id"],
        k=obj["k"],
        raw_output=obj.get("raw_output", ""),
        assertions=[
            AssertionOutcome(
                text=a["text"],
                corrected=a["corrected"],
                verdict=verdict_from_obj(a["verdict"]),
                corrected_text=a.get("corrected_text"),
            )
            for a in obj.get("assertions", [])
        ],
        timing_ms=obj.get("timing_ms", {}),
        error=obj.get("error"),
    )


def atomic_write(path: Path, data: str) -> None:
    try:
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(data, encoding="utf-8")
        os.replace(tmp, path)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def write_records(path: Path, records: list[EvalRecord]) -> None:
    """records.jsonl: one record per line, ordered by (model, k, design)."""
    ordered = sorted(records, key=lambda r: (r.model_id, r.k, r.design))
    lines = [json.dumps(record_to_obj(r), sort_keys=True) for r in ordered]
    atomic_write(path, "\n".join(lines) + ("\n" if lines else ""))


def read_records(path: Path) -> list[EvalRecord]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    return [record_from_obj(json.loads(line)) for line in text.splitlines() if line.strip()]


# -- metrics emission ---------------------------------------------------------

CSV_HEADER = ["model", "k", "pass", "fail", "error", "pass_frac", "fail_frac", "error_frac"]


def metrics_csv(summaries: list[MetricsSummary]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for s in sorted(summaries, key=lambda s: (s.model_id, s.k)):
        fr = s.fractions
        writer.writerow(
            [
                s.model_id,
                s.k,
                s.counts["pass"],
                s.counts["fail"],
                s.counts["error"],
                repr(fr["pass"]),
                repr(fr["fail"]),
                repr(fr["error"]),
            ]
        )
    return buffer.getvalue()


def metrics_json_obj(summaries: list[MetricsSummary]) -> list[dict]:
    return [
        {
            "model": s.model_id,
            "k": s.k,
            "counts": s.counts,
            "fractions": s.fractions,
            "per_design": s.per_design,
            "no_output": s.no_output,
            "skipped": s.skipped,
        }
        for s in sorted(summaries, key=lambda s: (s.model_id, s.k))
    ]


def plotdata_obj(summaries: list[MetricsSummary]) -> dict:
    """Grouped-bar specification: category = model, group = k, series = bucket."""
    ordered = sorted(summaries, key=lambda s: (s.model_id, s.k))
    models = sorted({s.model_id for s in ordered})
    ks = sorted({s.k for s in ordered})
    values: dict[str, dict[str, dict[str, float]]] = {}
    for s in ordered:
        values.setdefault(s.model_id, {})[str(s.k)] = s.fractions
    return {
        "chart": "grouped-bar",
        "categories": models,
        "groups": [str(k) for k in ks],
        "series": ["pass", "fail", "error"],
        "values": values,
    }


def emit(summaries: list[MetricsSummary], out_dir: Path, formats: tuple[str, ...] = ("json", "csv", "plotdata")) -> list[Path]:
    """Write metric files with a stable field order; returns written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if "csv" in formats:
        path = out_dir / "metrics.csv"
        atomic_write(path, metrics_csv(summaries))
        written.append(path)
    if "json" in formats:
        path = out_dir / "metrics.json"
        atomic_write(path, json.dumps(metrics_json_obj(summaries), indent=2, sort_keys=True) + "\n")
        written.append(path)
    if "plotdata" in formats:
        path = out_dir / "plotdata.json"
        atomic_write(path, json.dumps(plotdata_obj(summaries), indent=2, sort_keys=True) + "\n")
        written.append(path)
    return written
