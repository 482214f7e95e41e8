"""Lexical preprocessing of design text before it enters a prompt."""

from __future__ import annotations

from .errors import UnterminatedComment


def strip_for_prompt(source: str) -> str:
    """Remove comments and collapse all whitespace runs to single spaces.

    The token stream is otherwise unchanged, so the result is still valid
    input for the parser. Idempotent.
    """
    out: list[str] = []
    i = 0
    n = len(source)
    line = 1
    col = 1
    while i < n:
        ch = source[i]
        if ch == "/" and i + 1 < n and source[i + 1] == "/":
            while i < n and source[i] != "\n":
                i += 1
                col += 1
            continue  # the newline itself is handled as whitespace
        if ch == "/" and i + 1 < n and source[i + 1] == "*":
            start_line, start_col = line, col
            i += 2
            col += 2
            while True:
                if i >= n:
                    raise UnterminatedComment(start_line, start_col)
                if source[i] == "*" and i + 1 < n and source[i + 1] == "/":
                    i += 2
                    col += 2
                    break
                if source[i] == "\n":
                    line += 1
                    col = 1
                else:
                    col += 1
                i += 1
            out.append(" ")
            continue
        if ch == "\n":
            line += 1
            col = 1
        else:
            col += 1
        out.append(" " if ch.isspace() else ch)
        i += 1
    return " ".join("".join(out).split())
