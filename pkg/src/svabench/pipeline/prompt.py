"""k-shot prompt construction.

A rendered prompt has exactly four parts in order: the task description,
the example program(s), the example assertion(s), and the test program.
Examples are labeled "Program i" / "Assertions i" and the device under
evaluation "Test Program".
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_TASK_DESCRIPTION = (
    "You are given Verilog designs together with formally verified "
    "SystemVerilog assertions for them. Generate SystemVerilog assertions "
    "of the same style for the test program. Every assertion must be a "
    "single statement of the form "
    "`assert property (@(posedge clk) <sequence> |-> <consequent>);` "
    "using only signal equality propositions, `&&`, and `##N` delays."
)


class EmptyExampleSet(Exception):
    pass


@dataclass(frozen=True)
class IceTuple:
    """In-context example: a design and its formally verified assertions."""

    name: str
    design_text: str  # already comment/newline stripped
    assertions: list[str]

    def __post_init__(self):
        if not 2 <= len(self.assertions) <= 10:
            raise ValueError(
                f"ICE '{self.name}' has {len(self.assertions)} assertions; "
                "the benchmark guarantees between 2 and 10"
            )


@dataclass(frozen=True)
class Prompt:
    task_description: str
    examples: tuple[tuple[str, str], ...]  # (design text, assertion block) per shot
    test_program: str

    def render(self) -> str:
        parts = [self.task_description, ""]
        for i, (design, assertions) in enumerate(self.examples, start=1):
            parts += [f"Program {i}:", design, "", f"Assertions {i}:", assertions, ""]
        parts += ["Test Program:", self.test_program]
        return "\n".join(parts)


def build_prompt(
    task_description: str,
    ices: list[IceTuple],
    test_design: str,
    allow_zero_shot: bool = False,
) -> Prompt:
    """Deterministic four-part prompt; same inputs yield identical bytes."""
    if not ices and not allow_zero_shot:
        raise EmptyExampleSet("no in-context examples and zero-shot is not enabled")
    examples = tuple(
        (ice.design_text, "\n".join(ice.assertions)) for ice in ices
    )
    return Prompt(task_description, examples, test_design)
