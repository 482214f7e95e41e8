"""Verilog-subset frontend: parsing, elaboration, and prompt preprocessing."""

from .ast import Design, PortDecl, Process, SignalDecl, SignalKind
from .elaborate import TransitionSystem, elaborate
from .errors import (
    CombinationalLoop,
    ElaborationError,
    MultipleDrivers,
    ParseError,
    RtlError,
    UnsupportedConstruct,
    UnterminatedComment,
    WidthMismatch,
)
from .parser import parse_design, render_design
from .strip import strip_for_prompt

__all__ = [
    "Design",
    "PortDecl",
    "Process",
    "SignalDecl",
    "SignalKind",
    "TransitionSystem",
    "elaborate",
    "parse_design",
    "render_design",
    "strip_for_prompt",
    "RtlError",
    "ParseError",
    "UnsupportedConstruct",
    "UnterminatedComment",
    "ElaborationError",
    "CombinationalLoop",
    "MultipleDrivers",
    "WidthMismatch",
]
