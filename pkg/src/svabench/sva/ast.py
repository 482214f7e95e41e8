"""AST for the restricted sequential assertion fragment.

An assertion is an implicitly-global implication between a conjunction of
per-cycle propositions (the antecedent, cycles 0..m) and a single
proposition conjunction (the consequent). ``Assertion`` keeps the consequent
delay exactly as written after the implication operator; ``NormalAssertion``
stores the absolute consequent cycle with overlapped semantics.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Implication(enum.Enum):
    OVERLAPPED = "|->"
    NON_OVERLAPPED = "|=>"


@dataclass(frozen=True)
class Proposition:
    """Equality constraint ``var == value`` sampled at one clock cycle."""

    var: str
    value: int


@dataclass(frozen=True)
class TemporalTerm:
    delay: int
    props: tuple[Proposition, ...]

    def __post_init__(self):
        if not self.props:
            raise ValueError("a temporal term needs at least one proposition")
        if self.delay < 0:
            raise ValueError("delay must be nonnegative")

    @property
    def contradictory(self) -> bool:
        """True when two propositions bind the same signal to different values."""
        seen: dict[str, int] = {}
        for p in self.props:
            if seen.setdefault(p.var, p.value) != p.value:
                return True
        return False


@dataclass
class Assertion:
    """Assertion as written: consequent delay is the offset after |-> / |=>."""

    antecedent: list[TemporalTerm]
    consequent: TemporalTerm
    implication: Implication
    source_text: str = field(default="", compare=False)

    @property
    def max_antecedent_delay(self) -> int:
        return max(t.delay for t in self.antecedent)

    @property
    def consequent_cycle(self) -> int:
        """Absolute cycle at which the consequent is evaluated."""
        m = self.max_antecedent_delay
        if self.implication is Implication.OVERLAPPED:
            return m + self.consequent.delay
        return m + 1 + self.consequent.delay

    def variables(self) -> set[str]:
        out = {p.var for t in self.antecedent for p in t.props}
        out |= {p.var for p in self.consequent.props}
        return out


@dataclass
class NormalAssertion:
    """Overlapped form with all delays absolute; consequent at cycle n >= m."""

    antecedent: list[TemporalTerm]
    consequent: TemporalTerm
    source_text: str = field(default="", compare=False)

    @property
    def max_antecedent_delay(self) -> int:
        return max(t.delay for t in self.antecedent)

    @property
    def consequent_cycle(self) -> int:
        return self.consequent.delay

    def variables(self) -> set[str]:
        out = {p.var for t in self.antecedent for p in t.props}
        out |= {p.var for p in self.consequent.props}
        return out
