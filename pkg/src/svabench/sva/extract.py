"""Pull assertion candidates out of free-form model output."""

from __future__ import annotations

import re

_HEAD = re.compile(r"assert\s+property\s*\(", re.IGNORECASE)


def extract_assertions(llm_output: str) -> list[str]:
    """Every maximal ``assert property (...)`` substring, in order.

    Parentheses are balance-matched; a trailing semicolon is included when
    present. Candidates with unbalanced parentheses are skipped. Never
    raises; returns [] when nothing matches. Every returned string is a
    verbatim substring of the input.
    """
    out: list[str] = []
    pos = 0
    while True:
        match = _HEAD.search(llm_output, pos)
        if match is None:
            return out
        depth = 1
        i = match.end()
        while i < len(llm_output) and depth:
            ch = llm_output[i]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            i += 1
        if depth:  # unbalanced: not a candidate, keep scanning
            pos = match.end()
            continue
        tail = re.match(r"\s*;", llm_output[i:])
        if tail:
            i += tail.end()
        out.append(llm_output[match.start() : i])
        pos = i
