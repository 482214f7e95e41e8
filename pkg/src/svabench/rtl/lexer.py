"""Tokenizer for the Verilog subset."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, UnsupportedConstruct, UnterminatedComment

KEYWORDS = {
    "module",
    "endmodule",
    "input",
    "output",
    "wire",
    "reg",
    "assign",
    "always",
    "begin",
    "end",
    "if",
    "else",
    "posedge",
    "negedge",
}

# Verilog keywords we recognise but deliberately do not support; lexing them
# produces an UnsupportedConstruct so the caller can name the construct.
OUT_OF_SUBSET_KEYWORDS = {
    "generate",
    "endgenerate",
    "genvar",
    "case",
    "casex",
    "casez",
    "endcase",
    "default",
    "for",
    "while",
    "repeat",
    "forever",
    "function",
    "endfunction",
    "task",
    "endtask",
    "initial",
    "parameter",
    "localparam",
    "integer",
    "real",
    "signed",
    "inout",
    "always_ff",
    "always_comb",
    "always_latch",
    "logic",
    "typedef",
    "enum",
    "struct",
    "interface",
    "endinterface",
    "package",
    "endpackage",
}

PUNCT = (
    "<=",
    "==",
    "!=",
    "&&",
    "||",
    "(",
    ")",
    "[",
    "]",
    ";",
    ",",
    ":",
    "?",
    "=",
    "&",
    "|",
    "^",
    "~",
    "!",
    "+",
    "-",
    "*",
    "@",
    "#",
    "{",
    "}",
    ".",
    "<",
    ">",
    "/",
    "%",
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'ident', 'keyword', 'number', 'sized_number', punctuation text, 'eof'
    text: str
    line: int
    col: int
    value: int = 0
    width: int | None = None
    pos: int = 0  # byte offset into the original source

    @property
    def end(self) -> int:
        return self.pos + len(self.text)


def _strip_comments(source: str) -> str:
    """Replace comments with spaces, preserving line/column positions."""
    out: list[str] = []
    i = 0
    n = len(source)
    line = 1
    col = 1
    while i < n:
        ch = source[i]
        if ch == "/" and i + 1 < n and source[i + 1] == "/":
            while i < n and source[i] != "\n":
                out.append(" ")
                i += 1
                col += 1
        elif ch == "/" and i + 1 < n and source[i + 1] == "*":
            start_line, start_col = line, col
            i += 2
            col += 2
            out.append("  ")
            while True:
                if i >= n:
                    raise UnterminatedComment(start_line, start_col)
                if source[i] == "*" and i + 1 < n and source[i + 1] == "/":
                    out.append("  ")
                    i += 2
                    col += 2
                    break
                if source[i] == "\n":
                    out.append("\n")
                    line += 1
                    col = 1
                else:
                    out.append(" ")
                    col += 1
                i += 1
        else:
            out.append(ch)
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1
    return "".join(out)


def _parse_based_literal(
    text: str, size: int | None, line: int, col: int
) -> tuple[int, int]:
    base_char = text[0].lower()
    digits = text[1:].replace("_", "")
    if size is None:
        raise ParseError("based literal requires an explicit size", line, col)
    if size < 1:
        raise ParseError("literal size must be at least 1", line, col)
    if any(c in "xXzZ?" for c in digits):
        raise UnsupportedConstruct("four-state literal (x/z)", line, col)
    bases = {"b": 2, "o": 8, "d": 10, "h": 16}
    if base_char not in bases:
        raise ParseError(f"unknown literal base '{base_char}'", line, col)
    if not digits:
        raise ParseError("literal has no digits", line, col)
    try:
        value = int(digits, bases[base_char])
    except ValueError:
        raise ParseError(f"invalid digits for base-{bases[base_char]} literal", line, col) from None
    if value >= (1 << size):
        raise ParseError(f"literal value {value} does not fit in {size} bits", line, col)
    return value, size


def tokenize(source: str) -> list[Token]:
    """Tokenize source text; comments never change semantics."""
    text = _strip_comments(source)
    tokens: list[Token] = []
    i = 0
    n = len(text)
    line = 1
    col = 1

    def advance(count: int) -> None:
        nonlocal i, line, col
        for _ in range(count):
            if text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = text[i]
        if ch.isspace():
            advance(1)
            continue
        start_line, start_col, start_pos = line, col, i
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            advance(j - i)
            if word in KEYWORDS:
                tokens.append(Token("keyword", word, start_line, start_col, pos=start_pos))
            elif word in OUT_OF_SUBSET_KEYWORDS:
                raise UnsupportedConstruct(word, start_line, start_col)
            else:
                tokens.append(Token("ident", word, start_line, start_col, pos=start_pos))
            continue
        if ch.isdigit():
            j = i
            while j < n and (text[j].isdigit() or text[j] == "_"):
                j += 1
            digits = text[i:j].replace("_", "")
            advance(j - i)
            # sized literal: <size>'<base><digits>
            if i < n and text[i] == "'":
                size = int(digits)
                advance(1)
                j = i
                while j < n and (text[j].isalnum() or text[j] in "_?"):
                    j += 1
                body = text[i:j]
                advance(j - i)
                if not body:
                    raise ParseError("incomplete sized literal", start_line, start_col)
                value, width = _parse_based_literal(body, size, start_line, start_col)
                tokens.append(
                    Token(
                        "sized_number",
                        f"{size}'{body}",
                        start_line,
                        start_col,
                        value,
                        width,
                        pos=start_pos,
                    )
                )
            else:
                tokens.append(
                    Token("number", digits, start_line, start_col, int(digits), None, pos=start_pos)
                )
            continue
        if ch == "'":
            raise ParseError("based literal requires an explicit size", start_line, start_col)
        for punct in PUNCT:
            if text.startswith(punct, i):
                advance(len(punct))
                tokens.append(Token(punct, punct, start_line, start_col, pos=start_pos))
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", start_line, start_col)
    tokens.append(Token("eof", "", line, col, pos=len(text)))
    return tokens
