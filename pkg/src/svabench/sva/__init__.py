"""Restricted assertion fragment: grammar, normalization, extraction."""

from .ast import Assertion, Implication, NormalAssertion, Proposition, TemporalTerm
from .errors import OutOfFragment, SvaError, SvaSyntaxError
from .extract import extract_assertions
from .parser import parse_assertion
from .transform import desugar, render

__all__ = [
    "Assertion",
    "Implication",
    "NormalAssertion",
    "Proposition",
    "TemporalTerm",
    "SvaError",
    "SvaSyntaxError",
    "OutOfFragment",
    "parse_assertion",
    "desugar",
    "render",
    "extract_assertions",
]
