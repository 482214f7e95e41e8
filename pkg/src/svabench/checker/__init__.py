"""Desk-scale formal property checker."""

from .engine import ReachableSet, check, check_batch, reachable_states, replay_trace
from .verdict import BudgetExceeded, CheckConfig, Trace, Verdict, VerdictKind, classify

__all__ = [
    "CheckConfig",
    "Trace",
    "Verdict",
    "VerdictKind",
    "BudgetExceeded",
    "classify",
    "ReachableSet",
    "reachable_states",
    "check",
    "check_batch",
    "replay_trace",
]
