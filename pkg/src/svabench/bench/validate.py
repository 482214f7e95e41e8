"""Benchmark health checks: parseability, golden verdicts, pool statistics."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from ..checker.engine import check
from ..checker.verdict import CheckConfig, VerdictKind
from ..rtl.elaborate import elaborate
from ..rtl.errors import RtlError
from ..rtl.parser import parse_design
from ..sva.errors import SvaError
from ..sva.parser import parse_assertion
from ..sva.transform import desugar
from .store import Benchmark, BenchmarkEntry

ICE_MIN, ICE_MAX, ICE_MEAN = 2, 10, 4.8  # published pool statistics


@dataclass
class GoldenCheck:
    assertion: str
    status: str  # 'pass' | 'violation' | 'skipped'
    detail: str = ""


@dataclass
class EntryReport:
    name: str
    split: str
    design_ok: bool
    design_detail: str = ""
    goldens: list[GoldenCheck] = field(default_factory=list)


@dataclass
class PoolStats:
    scope: str  # 'ice-pool' | 'all-golden'
    designs: int
    min_assertions: int
    max_assertions: int
    mean_assertions: float
    expected_min: int = ICE_MIN
    expected_max: int = ICE_MAX
    expected_mean: float = ICE_MEAN


@dataclass
class ValidationReport:
    entries: list[EntryReport]
    violations: list[str]
    stats: list[PoolStats]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_obj(self) -> dict:
        return {
            "ok": self.ok,
            "violations": list(self.violations),
            "stats": [asdict(s) for s in self.stats],
            "entries": [asdict(e) for e in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = []
        for entry in self.entries:
            status = "ok" if entry.design_ok else f"UNSUPPORTED ({entry.design_detail})"
            lines.append(f"[{entry.split}] {entry.name}: design {status}")
            for g in entry.goldens:
                mark = {"pass": "ok", "violation": "VIOLATION", "skipped": "skipped"}[g.status]
                detail = f" ({g.detail})" if g.detail else ""
                lines.append(f"    {mark}{detail}: {g.assertion}")
        for s in self.stats:
            lines.append(
                f"{s.scope}: {s.designs} designs, assertions/design "
                f"min={s.min_assertions} max={s.max_assertions} "
                f"mean={s.mean_assertions:.2f} "
                f"(expected min>={s.expected_min}, max<={s.expected_max}, "
                f"mean~{s.expected_mean})"
            )
        lines.append("OK" if self.ok else f"{len(self.violations)} violation(s)")
        return "\n".join(lines)


def _is_budget_error(detail: str) -> bool:
    return detail.startswith("budget exceeded") or detail.startswith(
        "reachability fixed point"
    )


def _check_entry(entry: BenchmarkEntry, split: str, cfg: CheckConfig, violations: list[str]) -> EntryReport:
    report = EntryReport(name=entry.name, split=split, design_ok=True)
    ts = None
    if entry.design_kind == "unsupported":
        report.design_ok = False
        report.design_detail = entry.unsupported_reason or "does not parse"
        violations.append(f"{entry.name}: design unsupported: {report.design_detail}")
    else:
        try:
            ts = elaborate(parse_design(entry.source))
        except RtlError as exc:
            report.design_ok = False
            report.design_detail = str(exc)
            violations.append(f"{entry.name}: design does not elaborate: {exc}")

    for text in entry.golden_assertions:
        try:
            assertion = parse_assertion(text)
        except SvaError as exc:
            report.goldens.append(GoldenCheck(text, "violation", f"golden does not parse: {exc}"))
            violations.append(f"{entry.name}: golden does not parse: {exc}")
            continue
        if ts is None:
            report.goldens.append(GoldenCheck(text, "skipped", "design unavailable"))
            continue
        verdict = check(ts, desugar(assertion), cfg)
        if verdict.kind in (VerdictKind.VALID, VerdictKind.VACUOUS):
            report.goldens.append(GoldenCheck(text, "pass", verdict.kind.value))
        elif verdict.kind is VerdictKind.CEX:
            report.goldens.append(GoldenCheck(text, "violation", "golden not valid"))
            violations.append(f"{entry.name}: golden not valid: {text}")
        elif _is_budget_error(verdict.detail):
            report.goldens.append(GoldenCheck(text, "skipped", "verify-skipped: budget"))
        else:
            report.goldens.append(GoldenCheck(text, "violation", verdict.detail))
            violations.append(f"{entry.name}: golden check error: {verdict.detail}")
    return report


def _pool_stats(scope: str, entries: list[BenchmarkEntry]) -> PoolStats | None:
    counts = [len(e.golden_assertions) for e in entries]
    if not counts:
        return None
    return PoolStats(
        scope=scope,
        designs=len(counts),
        min_assertions=min(counts),
        max_assertions=max(counts),
        mean_assertions=sum(counts) / len(counts),
    )


def validate(benchmark: Benchmark, cfg: CheckConfig | None = None) -> ValidationReport:
    """Report-only benchmark validation; never raises on content problems.

    Checks that every design parses and elaborates, that golden assertions
    parse and verify Valid/Vacuous (skipped when outside the bit budget),
    and compares assertions-per-design statistics against the published
    pool figures. Statistics are reported for both the ICE pool alone and
    for every design that ships goldens.
    """
    cfg = cfg or CheckConfig()
    violations: list[str] = []
    entries = [_check_entry(e, "train", cfg, violations) for e in benchmark.train]
    entries += [_check_entry(e, "test", cfg, violations) for e in benchmark.test]

    for entry in benchmark.train:
        n = len(entry.golden_assertions)
        if not ICE_MIN <= n <= ICE_MAX:
            violations.append(
                f"ICE pool: '{entry.name}' has {n} assertions (outside "
                f"[{ICE_MIN},{ICE_MAX}])"
            )

    stats = []
    ice = _pool_stats("ice-pool", benchmark.train)
    if ice:
        stats.append(ice)
    golden_entries = [e for e in benchmark.train + benchmark.test if e.golden_assertions]
    all_golden = _pool_stats("all-golden", golden_entries)
    if all_golden:
        stats.append(all_golden)

    return ValidationReport(entries=entries, violations=violations, stats=stats)
