"""Parser for the restricted assertion fragment.

Accepted surface syntax::

    assert property (@(posedge clk) SEQ |-> [##N] TERM);
    assert property (@(posedge clk) SEQ |=> [##N] TERM);

where SEQ is a ``##N``-separated chain of proposition conjunctions, each
proposition being ``(sig == const)`` with ``sig`` / ``!sig`` sugar for
``== 1`` / ``== 0``. Malformed text raises SvaSyntaxError; recognisably
legal SVA beyond this fragment raises OutOfFragment.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ast import Assertion, Implication, Proposition, TemporalTerm
from .errors import OutOfFragment, SvaSyntaxError

_PUNCT = (
    "|->",
    "|=>",
    "##",
    "&&",
    "||",
    "==",
    "!=",
    "<=",
    ">=",
    "[*",
    "[->",
    "[=",
    "(",
    ")",
    "[",
    "]",
    ";",
    "!",
    "@",
    "|",
    "&",
    "=",
    "<",
    ">",
    "*",
    "-",
    "+",
    ",",
    ":",
    ".",
    "{",
    "}",
    "?",
    "~",
    "^",
    "/",
)

# Legal SVA vocabulary that the fragment does not cover; seeing one of these
# is what distinguishes OutOfFragment from a plain syntax error.
_SVA_KEYWORDS = {
    "s_eventually",
    "s_until",
    "s_until_with",
    "eventually",
    "until",
    "until_with",
    "nexttime",
    "s_nexttime",
    "always",
    "strong",
    "weak",
    "throughout",
    "within",
    "intersect",
    "first_match",
    "and",
    "or",
    "not",
    "iff",
    "implies",
    "disable",
}


@dataclass(frozen=True)
class _Tok:
    kind: str  # 'ident', 'number', 'sized', 'dollar', punct text, 'eof'
    text: str
    offset: int
    value: int = 0


def _lex(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        start = i
        if ch.isalpha() or ch == "_":
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            toks.append(_Tok("ident", text[start:i], start))
            continue
        if ch == "$":
            i += 1
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            toks.append(_Tok("dollar", text[start:i], start))
            continue
        if ch.isdigit():
            while i < n and (text[i].isdigit() or text[i] == "_"):
                i += 1
            digits = text[start:i].replace("_", "")
            if i < n and text[i] == "'":
                i += 1
                base_start = i
                while i < n and (text[i].isalnum() or text[i] in "_?"):
                    i += 1
                body = text[base_start:i]
                value = _based_value(body, int(digits), start)
                toks.append(_Tok("sized", text[start:i], start, value))
            else:
                toks.append(_Tok("number", digits, start, int(digits)))
            continue
        for punct in _PUNCT:
            if text.startswith(punct, i):
                i += len(punct)
                toks.append(_Tok(punct, punct, start))
                break
        else:
            raise SvaSyntaxError(f"unexpected character {ch!r}", start)
    toks.append(_Tok("eof", "", n))
    return toks


def _based_value(body: str, size: int, offset: int) -> int:
    if not body:
        raise SvaSyntaxError("incomplete sized literal", offset)
    base_char = body[0].lower()
    digits = body[1:].replace("_", "")
    if any(c in "xXzZ?" for c in digits):
        raise OutOfFragment("four-state literal (x/z)", offset)
    bases = {"b": 2, "o": 8, "d": 10, "h": 16}
    if base_char not in bases or not digits:
        raise SvaSyntaxError(f"malformed sized literal '{body}'", offset)
    try:
        value = int(digits, bases[base_char])
    except ValueError:
        raise SvaSyntaxError(f"malformed sized literal '{body}'", offset) from None
    if size < 1 or value >= (1 << size):
        raise SvaSyntaxError(f"literal value {value} does not fit in {size} bits", offset)
    return value


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _lex(text)
        self.idx = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.idx]

    def advance(self) -> _Tok:
        tok = self.cur
        if tok.kind != "eof":
            self.idx += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        return self.cur.kind == kind and (text is None or self.cur.text == text)

    def expect(self, kind: str, text: str | None = None, what: str | None = None) -> _Tok:
        if self.at(kind, text):
            return self.advance()
        wanted = what or f"'{text or kind}'"
        got = self.cur.text or "end of input"
        raise SvaSyntaxError(f"expected {wanted}, found {got!r}", self.cur.offset)

    def ident(self, what: str) -> str:
        tok = self.cur
        if tok.kind != "ident":
            raise SvaSyntaxError(f"expected {what}, found {tok.text or 'end of input'!r}", tok.offset)
        if tok.text in _SVA_KEYWORDS:
            raise OutOfFragment(f"'{tok.text}' operator", tok.offset)
        return self.advance().text

    # -- grammar ---------------------------------------------------------

    def parse(self) -> Assertion:
        kw = self.expect("ident", what="'assert'")
        if kw.text != "assert":
            raise SvaSyntaxError(f"expected 'assert', found {kw.text!r}", kw.offset)
        kw = self.expect("ident", what="'property'")
        if kw.text != "property":
            raise SvaSyntaxError(f"expected 'property', found {kw.text!r}", kw.offset)
        self.expect("(")
        self._clocking()
        if self.at("ident", "disable"):
            raise OutOfFragment("disable iff", self.cur.offset)
        if self.at("##"):
            raise OutOfFragment("leading antecedent delay", self.cur.offset)
        antecedent = self._sequence()
        if self.at("|->"):
            implication = Implication.OVERLAPPED
        elif self.at("|=>"):
            implication = Implication.NON_OVERLAPPED
        else:
            raise SvaSyntaxError(
                f"expected '|->' or '|=>', found {self.cur.text or 'end of input'!r}",
                self.cur.offset,
            )
        self.advance()
        offset = 0
        if self.at("##"):
            self.advance()
            offset = self._delay_count()
        consequent = TemporalTerm(offset, self._conjunction())
        if self.at("##"):
            raise OutOfFragment("multi-term consequent", self.cur.offset)
        if self.at("|->") or self.at("|=>"):
            raise OutOfFragment("nested implication", self.cur.offset)
        self.expect(")")
        self.expect(";")
        if not self.at("eof"):
            raise SvaSyntaxError(f"text after assertion: {self.cur.text!r}", self.cur.offset)
        return Assertion(antecedent, consequent, implication, source_text=self.text)

    def _clocking(self) -> None:
        self.expect("@")
        self.expect("(")
        edge = self.expect("ident", what="'posedge'")
        if edge.text == "negedge":
            raise OutOfFragment("negedge clocking", edge.offset)
        if edge.text != "posedge":
            raise SvaSyntaxError(f"expected 'posedge', found {edge.text!r}", edge.offset)
        clk = self.expect("ident", what="clock name")
        if clk.text != "clk":
            raise OutOfFragment(
                f"clock signal '{clk.text}' (the fragment clocks on 'clk')", clk.offset
            )
        self.expect(")")

    def _delay_count(self) -> int:
        if self.at("["):
            raise OutOfFragment("delay range ##[..]", self.cur.offset)
        tok = self.cur
        if tok.kind != "number":
            raise SvaSyntaxError(
                f"expected a delay count after '##', found {tok.text or 'end of input'!r}",
                tok.offset,
            )
        self.advance()
        return tok.value

    def _sequence(self) -> list[TemporalTerm]:
        delay = 0
        by_delay: dict[int, list[Proposition]] = {}
        by_delay[0] = list(self._conjunction())
        while self.at("##"):
            self.advance()
            delay += self._delay_count()
            by_delay.setdefault(delay, []).extend(self._conjunction())
        self._reject_sequence_op()
        return [TemporalTerm(d, tuple(props)) for d, props in sorted(by_delay.items())]

    def _reject_sequence_op(self) -> None:
        tok = self.cur
        if tok.kind == "ident" and tok.text in _SVA_KEYWORDS:
            raise OutOfFragment(f"'{tok.text}' operator", tok.offset)
        if tok.kind in ("[*", "[->", "[="):
            raise OutOfFragment("repetition", tok.offset)

    def _conjunction(self) -> tuple[Proposition, ...]:
        props: list[Proposition] = []
        self._atom(props)
        while True:
            if self.at("&&"):
                self.advance()
                self._atom(props)
                continue
            if self.at("||"):
                raise OutOfFragment("disjunction", self.cur.offset)
            if self.at("&") or self.at("|") or self.at("^"):
                raise OutOfFragment("bitwise expression in proposition", self.cur.offset)
            break
        self._reject_sequence_op()
        return tuple(props)

    def _atom(self, props: list[Proposition]) -> None:
        tok = self.cur
        if tok.kind == "(":
            self.advance()
            inner = self._conjunction()
            self.expect(")")
            props.extend(inner)
            return
        if tok.kind == "!":
            self.advance()
            if self.at("("):
                raise OutOfFragment("negation of a subexpression", self.cur.offset)
            name = self.ident("a signal name after '!'")
            props.append(Proposition(name, 0))
            self._reject_bit_select()
            return
        if tok.kind == "dollar":
            raise OutOfFragment(f"system function {tok.text}", tok.offset)
        if tok.kind == "ident":
            name = self.ident("a signal name")
            self._reject_bit_select()
            if self.at("=="):
                self.advance()
                props.append(Proposition(name, self._const()))
                return
            if self.at("!="):
                raise OutOfFragment("inequality proposition", self.cur.offset)
            if self.cur.kind in ("<", ">", "<=", ">="):
                raise OutOfFragment("relational proposition", self.cur.offset)
            if self.cur.kind in ("+", "-", "*", "/", "~"):
                raise OutOfFragment("arithmetic in proposition", self.cur.offset)
            props.append(Proposition(name, 1))
            return
        raise SvaSyntaxError(
            f"expected a proposition, found {tok.text or 'end of input'!r}", tok.offset
        )

    def _reject_bit_select(self) -> None:
        if self.at("["):
            raise OutOfFragment("bit select", self.cur.offset)

    def _const(self) -> int:
        tok = self.cur
        if tok.kind in ("number", "sized"):
            self.advance()
            return tok.value
        if tok.kind == "ident":
            raise OutOfFragment("signal-to-signal comparison", tok.offset)
        raise SvaSyntaxError(
            f"expected a constant, found {tok.text or 'end of input'!r}", tok.offset
        )


def parse_assertion(text: str) -> Assertion:
    """Parse one assertion statement; raises SvaSyntaxError or OutOfFragment."""
    return _Parser(text).parse()
