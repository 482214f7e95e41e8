"""Errors raised by the Verilog frontend."""

from __future__ import annotations


class RtlError(Exception):
    """Base class for all frontend errors."""


class ParseError(RtlError):
    """Malformed source text.

    Carries the 1-based line/column of the offending token and the set of
    token descriptions the parser would have accepted there.
    """

    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...] = ()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected
        super().__init__(self.format())

    def format(self, filename: str | None = None) -> str:
        prefix = f"{filename}:" if filename else ""
        text = f"{prefix}{self.line}:{self.col}: {self.message}"
        if self.expected:
            text += f" (expected {', '.join(self.expected)})"
        return text


class UnsupportedConstruct(RtlError):
    """Legal Verilog that falls outside the supported synthesizable subset."""

    def __init__(self, construct: str, line: int = 0, col: int = 0):
        self.construct = construct
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: unsupported construct: {construct}")


class UnterminatedComment(RtlError):
    """A ``/*`` block comment with no closing ``*/``."""

    def __init__(self, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: unterminated block comment")


class ElaborationError(RtlError):
    """Base class for errors raised while building the transition system."""


class CombinationalLoop(ElaborationError):
    """Cyclic dependency among combinationally driven signals."""

    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("combinational loop: " + " -> ".join(cycle + cycle[:1]))


class MultipleDrivers(ElaborationError):
    def __init__(self, signal: str):
        self.signal = signal
        super().__init__(f"signal '{signal}' is driven by more than one process")


class WidthMismatch(ElaborationError):
    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(detail)
