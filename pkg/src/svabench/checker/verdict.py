"""Verdicts, counterexample traces, and checker configuration."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass


class VerdictKind(enum.Enum):
    VALID = "Valid"
    CEX = "Cex"
    VACUOUS = "Vacuous"
    ERROR = "Error"


@dataclass(frozen=True)
class Trace:
    """Per-cycle valuation of every design signal except the clock.

    Cycle 0 is the first post-reset state; consecutive cycles satisfy the
    design's next-state function.
    """

    cycles: tuple[dict[str, int], ...]
    widths: dict[str, int]

    def to_json_obj(self) -> list[dict]:
        return [
            {
                "cycle": k,
                "signals": {
                    name: "b" + format(value, f"0{self.widths.get(name, 1)}b")
                    for name, value in sorted(env.items())
                },
            }
            for k, env in enumerate(self.cycles)
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    def to_text(self) -> str:
        """Human-readable column dump."""
        names = sorted(self.cycles[0]) if self.cycles else []
        header = ["cycle"] + names
        rows = [[str(k)] + [str(env[n]) for n in names] for k, env in enumerate(self.cycles)]
        widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
                  for i, h in enumerate(header)]
        fmt = "  ".join("{:>%d}" % w for w in widths)
        lines = [fmt.format(*header)]
        lines += [fmt.format(*row) for row in rows]
        return "\n".join(lines)


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    detail: str = ""
    trace: Trace | None = None

    def __post_init__(self):
        if (self.trace is not None) != (self.kind is VerdictKind.CEX):
            raise ValueError("a trace is present iff the verdict is Cex")

    @property
    def bucket(self) -> str:
        return classify(self)


def classify(verdict: Verdict) -> str:
    """Metric bucket per the evaluation convention: Vacuous counts as a pass."""
    if verdict.kind in (VerdictKind.VALID, VerdictKind.VACUOUS):
        return "pass"
    if verdict.kind is VerdictKind.CEX:
        return "fail"
    return "error"


@dataclass(frozen=True)
class CheckConfig:
    """Checker knobs.

    Exhaustive mode requires state_bits + input_bits * (n+1) <= bit_budget.
    Random mode samples seeded runs and never claims Valid or Vacuous.
    """

    mode: str = "exhaustive"  # 'exhaustive' | 'random'
    bit_budget: int = 24
    random_trials: int = 100_000
    reachability_depth: int = 64
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown mode {self.mode!r}")


class BudgetExceeded(Exception):
    pass
