"""Recursive-descent parser for the Verilog subset.

The accepted language is a single flat module with scalar/vector signals of
at most 16 bits, continuous assigns, combinational and posedge-clocked always
blocks, if/else, begin/end, the ternary operator, and the operators
``~ & | ^ && || ! == != + -``. Anything else that is recognisably Verilog
raises :class:`UnsupportedConstruct`; garbage raises :class:`ParseError`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ast import (
    Assign,
    Binary,
    Const,
    Design,
    Direction,
    If,
    PortDecl,
    Process,
    ProcessKind,
    SignalDecl,
    SignalKind,
    Stmt,
    Ternary,
    Unary,
    Var,
    assigned_targets,
    expr_vars,
    walk_exprs,
)
from .errors import ParseError, UnsupportedConstruct
from .lexer import Token, tokenize

MAX_WIDTH = 16

_EXPR_START = ("identifier", "number", "'('", "'~'", "'!'", "'-'")


@dataclass
class _DeclInfo:
    width: int
    is_reg: bool
    direction: Direction | None
    span: tuple[int, int]
    line: int
    col: int


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.idx = 0

    # -- cursor helpers --------------------------------------------------

    @property
    def cur(self) -> Token:
        return self.tokens[self.idx]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.idx + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.cur
        if tok.kind != "eof":
            self.idx += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.cur
        return tok.kind == kind and (text is None or tok.text == text)

    def expect(self, kind: str, text: str | None = None, what: str | None = None) -> Token:
        if self.at(kind, text):
            return self.advance()
        wanted = what or (f"'{text}'" if text else f"'{kind}'" if len(kind) <= 2 else kind)
        tok = self.cur
        got = tok.text if tok.kind != "eof" else "end of input"
        raise ParseError(f"unexpected {got!r}", tok.line, tok.col, (wanted,))

    def fail(self, message: str, expected: tuple[str, ...] = ()) -> ParseError:
        tok = self.cur
        return ParseError(message, tok.line, tok.col, expected)

    # -- module ----------------------------------------------------------

    def parse(self) -> Design:
        self.expect("keyword", "module")
        name = self.expect("ident", what="module name").text
        self.decls: dict[str, _DeclInfo] = {}
        self.port_order: list[str] = []
        self.port_dirs: dict[str, Direction] = {}
        if self.at("("):
            self.advance()
            if not self.at(")"):
                self._port_list()
            self.expect(")")
        self.expect(";")
        processes: list[Process] = []
        while not self.at("keyword", "endmodule"):
            if self.at("eof"):
                raise self.fail("unexpected end of input inside module", ("endmodule",))
            item = self._module_item()
            if item is not None:
                processes.append(item)
        self.expect("keyword", "endmodule")
        if not self.at("eof"):
            raise self.fail("text after endmodule", ("end of input",))
        return self._finalize(name, processes)

    def _port_list(self) -> None:
        # ANSI (directions inline) or non-ANSI (bare names). Mixing is rejected.
        ansi = self.at("keyword", "input") or self.at("keyword", "output")
        while True:
            if ansi:
                self._ansi_port()
            else:
                tok = self.expect("ident", what="port name")
                if tok.text in self.port_order:
                    raise ParseError(f"duplicate port '{tok.text}'", tok.line, tok.col)
                self.port_order.append(tok.text)
            if self.at(","):
                self.advance()
                continue
            break

    def _ansi_port(self) -> None:
        if self.at("keyword", "input"):
            direction = Direction.INPUT
        elif self.at("keyword", "output"):
            direction = Direction.OUTPUT
        else:
            raise self.fail("expected port direction", ("input", "output"))
        start = self.advance()
        is_reg = False
        if self.at("keyword", "reg"):
            if direction is Direction.INPUT:
                raise self.fail("an input cannot be declared 'reg'")
            is_reg = True
            self.advance()
        elif self.at("keyword", "wire"):
            self.advance()
        width = self._opt_range()
        tok = self.expect("ident", what="port name")
        self._declare(tok.text, width, is_reg, direction, (start.pos, tok.end), tok)
        self.port_order.append(tok.text)
        self.port_dirs[tok.text] = direction

    def _opt_range(self) -> int:
        if not self.at("["):
            return 1
        self.advance()
        msb = self._const_index()
        self.expect(":")
        lsb = self._const_index()
        close = self.expect("]")
        if lsb != 0 or msb < 0:
            raise ParseError(
                f"only [N:0] ranges are supported, got [{msb}:{lsb}]", close.line, close.col
            )
        return msb + 1

    def _const_index(self) -> int:
        if self.at("number"):
            return self.advance().value
        raise self.fail("range bounds must be decimal constants", ("number",))

    def _declare(
        self,
        name: str,
        width: int,
        is_reg: bool,
        direction: Direction | None,
        span: tuple[int, int],
        tok: Token,
    ) -> None:
        if name in self.decls:
            raise ParseError(f"duplicate declaration of '{name}'", tok.line, tok.col)
        if width > MAX_WIDTH:
            raise UnsupportedConstruct(
                f"signal wider than {MAX_WIDTH} bits ('{name}' is {width})", tok.line, tok.col
            )
        self.decls[name] = _DeclInfo(width, is_reg, direction, span, tok.line, tok.col)

    # -- module items ------------------------------------------------------

    def _module_item(self) -> Process | None:
        if self.at("keyword", "input") or self.at("keyword", "output"):
            self._direction_decl()
            return None
        if self.at("keyword", "wire") or self.at("keyword", "reg"):
            self._net_decl()
            return None
        if self.at("keyword", "assign"):
            return self._continuous_assign()
        if self.at("keyword", "always"):
            return self._always_block()
        if self.at("ident") and self.peek().kind == "ident":
            tok = self.cur
            raise UnsupportedConstruct("module instantiation", tok.line, tok.col)
        raise self.fail(
            "expected a declaration, assign, or always block",
            ("input", "output", "wire", "reg", "assign", "always", "endmodule"),
        )

    def _direction_decl(self) -> None:
        direction = Direction.INPUT if self.cur.text == "input" else Direction.OUTPUT
        start = self.advance()
        is_reg = False
        if self.at("keyword", "reg"):
            if direction is Direction.INPUT:
                raise self.fail("an input cannot be declared 'reg'")
            is_reg = True
            self.advance()
        elif self.at("keyword", "wire"):
            self.advance()
        width = self._opt_range()
        while True:
            tok = self.expect("ident", what="signal name")
            self._check_memory(tok)
            self._declare(tok.text, width, is_reg, direction, (start.pos, tok.end), tok)
            self.port_dirs[tok.text] = direction
            if self.at(","):
                self.advance()
                continue
            break
        self.expect(";")

    def _net_decl(self) -> None:
        is_reg = self.cur.text == "reg"
        start = self.advance()
        width = self._opt_range()
        while True:
            tok = self.expect("ident", what="signal name")
            self._check_memory(tok)
            if tok.text in self.decls:
                # `output q; reg q;` style redeclaration upgrades to reg
                info = self.decls[tok.text]
                if is_reg and not info.is_reg and info.direction is Direction.OUTPUT:
                    info.is_reg = True
                else:
                    raise ParseError(f"duplicate declaration of '{tok.text}'", tok.line, tok.col)
            else:
                self._declare(tok.text, width, is_reg, None, (start.pos, tok.end), tok)
            if self.at(","):
                self.advance()
                continue
            break
        self.expect(";")

    def _check_memory(self, tok: Token) -> None:
        if self.at("["):
            raise UnsupportedConstruct("memory array", tok.line, tok.col)

    def _continuous_assign(self) -> Process:
        start = self.advance()
        target = self.expect("ident", what="assignment target").text
        self.expect("=")
        rhs = self._expr()
        end = self.expect(";")
        stmt = Assign(target, rhs, nonblocking=False, span=(start.pos, end.end))
        return Process(ProcessKind.CONTINUOUS, [stmt], span=(start.pos, end.end))

    def _always_block(self) -> Process:
        start = self.advance()
        self.expect("@")
        clocked = False
        if self.at("*"):
            self.advance()
        else:
            self.expect("(")
            if self.at("*"):
                self.advance()
            elif self.at("keyword", "posedge") or self.at("keyword", "negedge"):
                edge = self.advance()
                sig = self.expect("ident", what="clock signal").text
                if edge.text == "negedge":
                    raise UnsupportedConstruct("negedge clock", edge.line, edge.col)
                if sig != "clk":
                    raise UnsupportedConstruct(
                        f"clock signal must be named 'clk' (got '{sig}')", edge.line, edge.col
                    )
                if self.at("ident", "or") or self.at(","):
                    tok = self.cur
                    raise UnsupportedConstruct(
                        "multiple events in clocked sensitivity list", tok.line, tok.col
                    )
                clocked = True
            elif self.at("ident"):
                # classic combinational list: @(a or b or c)
                self.advance()
                while self.at("ident", "or") or self.at(","):
                    self.advance()
                    self.expect("ident", what="signal name")
            else:
                raise self.fail("malformed sensitivity list", ("*", "posedge", "signal name"))
            self.expect(")")
        body = self._statement()
        kind = ProcessKind.CLOCKED if clocked else ProcessKind.COMBINATIONAL
        end_pos = self.tokens[self.idx - 1].end if self.idx else start.end
        return Process(kind, body, span=(start.pos, end_pos))

    # -- statements --------------------------------------------------------

    def _statement(self) -> list[Stmt]:
        if self.at("keyword", "begin"):
            self.advance()
            stmts: list[Stmt] = []
            while not self.at("keyword", "end"):
                if self.at("eof"):
                    raise self.fail("unexpected end of input inside begin/end", ("end",))
                stmts.extend(self._statement())
            self.advance()
            return stmts
        if self.at("keyword", "if"):
            self.advance()
            self.expect("(")
            cond = self._expr()
            self.expect(")")
            then_body = self._statement()
            else_body = None
            if self.at("keyword", "else"):
                self.advance()
                else_body = self._statement()
            return [If(cond, then_body, else_body)]
        if self.at("ident"):
            tok = self.advance()
            if self.at("["):
                raise UnsupportedConstruct("bit/part select on assignment target", tok.line, tok.col)
            if self.at("<="):
                nonblocking = True
            elif self.at("="):
                nonblocking = False
            else:
                raise self.fail("expected assignment", ("'='", "'<='"))
            self.advance()
            rhs = self._expr()
            end = self.expect(";")
            return [Assign(tok.text, rhs, nonblocking, span=(tok.pos, end.end))]
        raise self.fail("expected a statement", ("begin", "if", "identifier"))

    # -- expressions ---------------------------------------------------------
    # Precedence (tightest first): unary, + -, == !=, &, ^, |, &&, ||, ?:

    def _expr(self):
        cond = self._lor()
        if self.at("?"):
            self.advance()
            then = self._expr()
            self.expect(":")
            other = self._expr()
            return Ternary(cond, then, other)
        return cond

    def _binop_chain(self, ops: tuple[str, ...], next_level):
        left = next_level()
        while self.cur.kind in ops:
            op = self.advance().text
            left = Binary(op, left, next_level())
        return left

    def _lor(self):
        return self._binop_chain(("||",), self._land)

    def _land(self):
        return self._binop_chain(("&&",), self._bor)

    def _bor(self):
        return self._binop_chain(("|",), self._bxor)

    def _bxor(self):
        return self._binop_chain(("^",), self._band)

    def _band(self):
        return self._binop_chain(("&",), self._eq)

    def _eq(self):
        return self._binop_chain(("==", "!="), self._add)

    def _add(self):
        return self._binop_chain(("+", "-"), self._unary)

    def _unary(self):
        if self.cur.kind in ("~", "!", "-"):
            op = self.advance().text
            return Unary(op, self._unary())
        return self._primary()

    def _primary(self):
        tok = self.cur
        if tok.kind == "(":
            self.advance()
            inner = self._expr()
            self.expect(")")
            return inner
        if tok.kind == "number":
            self.advance()
            return Const(tok.value, None)
        if tok.kind == "sized_number":
            self.advance()
            return Const(tok.value, tok.width)
        if tok.kind == "ident":
            self.advance()
            if self.at("["):
                raise UnsupportedConstruct("bit/part select", tok.line, tok.col)
            return Var(tok.text)
        if tok.kind == "{":
            raise UnsupportedConstruct("concatenation", tok.line, tok.col)
        if tok.kind in ("*", "/", "%", "<", ">"):
            raise UnsupportedConstruct(f"operator '{tok.kind}'", tok.line, tok.col)
        raise self.fail("expected an expression", _EXPR_START)

    # -- semantic finishing --------------------------------------------------

    def _finalize(self, name: str, processes: list[Process]) -> Design:
        decls = self.decls
        for port in self.port_order:
            if port not in decls:
                raise ParseError(f"port '{port}' is never declared", 1, 1)
            if decls[port].direction is None:
                raise ParseError(f"port '{port}' has no direction", decls[port].line, decls[port].col)
        for signal, info in decls.items():
            if info.direction is not None and signal not in self.port_order:
                raise ParseError(
                    f"directed signal '{signal}' does not appear in the port list",
                    info.line,
                    info.col,
                )

        nb_targets: set[str] = set()
        comb_targets: set[str] = set()
        for proc in processes:
            targets = assigned_targets(proc.body)
            reads: set[str] = set()
            for expr in walk_exprs(proc.body):
                reads |= expr_vars(expr)
            for ref in reads | targets:
                if ref not in decls:
                    raise ParseError(f"undeclared identifier '{ref}'", 1, 1)
            if "clk" in reads:
                raise UnsupportedConstruct("reading the clock as data", 1, 1)
            for stmt_targets, nonblocking in _assignment_styles(proc.body):
                if proc.kind is ProcessKind.CLOCKED and not nonblocking:
                    raise UnsupportedConstruct(
                        f"blocking assignment to '{stmt_targets}' in clocked process", 1, 1
                    )
                if proc.kind is not ProcessKind.CLOCKED and nonblocking:
                    raise UnsupportedConstruct(
                        f"nonblocking assignment to '{stmt_targets}' outside a clocked process",
                        1,
                        1,
                    )
            for target in targets:
                info = decls[target]
                if info.direction is Direction.INPUT:
                    raise ParseError(f"cannot assign to input '{target}'", info.line, info.col)
                if proc.kind is ProcessKind.CONTINUOUS and info.is_reg:
                    raise ParseError(
                        f"continuous assign drives '{target}' which is declared 'reg'",
                        info.line,
                        info.col,
                    )
                if proc.kind is not ProcessKind.CONTINUOUS and not info.is_reg:
                    raise ParseError(
                        f"procedural assignment target '{target}' must be declared 'reg'",
                        info.line,
                        info.col,
                    )
            if proc.kind is ProcessKind.CLOCKED:
                nb_targets |= targets
            else:
                comb_targets |= targets

        if any(p.kind is ProcessKind.CLOCKED for p in processes) and "clk" not in decls:
            raise ParseError("design has clocked processes but no 'clk' input", 1, 1)
        if "clk" in decls and decls["clk"].direction is not Direction.INPUT:
            info = decls["clk"]
            raise ParseError("'clk' must be an input", info.line, info.col)
        if "rst" in decls and decls["rst"].direction is not Direction.INPUT:
            info = decls["rst"]
            raise ParseError("'rst' must be an input", info.line, info.col)
        overlap = nb_targets & comb_targets
        if overlap:
            sig = sorted(overlap)[0]
            info = decls[sig]
            raise ParseError(
                f"'{sig}' is driven by both clocked and combinational logic", info.line, info.col
            )

        signals: dict[str, SignalDecl] = {}
        for sig, info in decls.items():
            if info.direction is Direction.INPUT:
                kind = SignalKind.INPUT
            elif sig in nb_targets:
                kind = SignalKind.REGISTER
            elif info.direction is Direction.OUTPUT:
                kind = SignalKind.OUTPUT
            else:
                kind = SignalKind.WIRE
            signals[sig] = SignalDecl(sig, info.width, kind, span=info.span)

        ports = [PortDecl(p, decls[p].direction) for p in self.port_order]
        return Design(name, ports, signals, processes)


def _assignment_styles(stmts: list[Stmt]):
    for stmt in stmts:
        if isinstance(stmt, Assign):
            yield stmt.target, stmt.nonblocking
        else:
            yield from _assignment_styles(stmt.then_body)
            if stmt.else_body is not None:
                yield from _assignment_styles(stmt.else_body)


def parse_design(source: str) -> Design:
    """Parse Verilog source text into a :class:`Design`.

    Raises :class:`ParseError` for malformed syntax (with line/column and the
    expected-token set) and :class:`UnsupportedConstruct` for legal Verilog
    outside the subset.
    """
    return _Parser(source).parse()


# -- rendering -----------------------------------------------------------


def render_expr(expr) -> str:
    if isinstance(expr, Const):
        if expr.width is None:
            return str(expr.value)
        return f"{expr.width}'d{expr.value}"
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Unary):
        return f"{expr.op}{_wrap(expr.operand)}"
    if isinstance(expr, Binary):
        return f"{_wrap(expr.left)} {expr.op} {_wrap(expr.right)}"
    return f"{_wrap(expr.cond)} ? {_wrap(expr.then)} : {_wrap(expr.other)}"


def _wrap(expr) -> str:
    text = render_expr(expr)
    if isinstance(expr, (Const, Var)):
        return text
    return f"({text})"


def _render_stmts(stmts: list[Stmt], indent: str) -> list[str]:
    lines: list[str] = []
    for stmt in stmts:
        if isinstance(stmt, Assign):
            op = "<=" if stmt.nonblocking else "="
            lines.append(f"{indent}{stmt.target} {op} {render_expr(stmt.rhs)};")
        else:
            lines.append(f"{indent}if ({render_expr(stmt.cond)}) begin")
            lines.extend(_render_stmts(stmt.then_body, indent + "  "))
            if stmt.else_body is not None:
                lines.append(f"{indent}end else begin")
                lines.extend(_render_stmts(stmt.else_body, indent + "  "))
            lines.append(f"{indent}end")
    return lines


def render_design(design: Design) -> str:
    """Pretty-print a design in canonical subset syntax.

    ``parse_design(render_design(d))`` yields a structurally identical AST.
    """
    proc_targets: set[str] = set()
    for proc in design.processes:
        if proc.kind is not ProcessKind.CONTINUOUS:
            proc_targets |= assigned_targets(proc.body)

    def declare(sig: SignalDecl, direction: Direction | None) -> str:
        parts = []
        if direction is not None:
            parts.append(direction.value)
        if sig.name in proc_targets:
            parts.append("reg")
        elif direction is None:
            parts.append("wire")
        if sig.width > 1:
            parts.append(f"[{sig.width - 1}:0]")
        parts.append(sig.name)
        return " ".join(parts)

    dirs = {p.name: p.direction for p in design.ports}
    header = ", ".join(declare(design.signals[p.name], p.direction) for p in design.ports)
    lines = [f"module {design.name}({header});"]
    for sig in design.signals.values():
        if sig.name not in dirs:
            lines.append(f"  {declare(sig, None)};")
    for proc in design.processes:
        if proc.kind is ProcessKind.CONTINUOUS:
            stmt = proc.body[0]
            lines.append(f"  assign {stmt.target} = {render_expr(stmt.rhs)};")
        elif proc.kind is ProcessKind.COMBINATIONAL:
            lines.append("  always @(*) begin")
            lines.extend(_render_stmts(proc.body, "    "))
            lines.append("  end")
        else:
            lines.append("  always @(posedge clk) begin")
            lines.extend(_render_stmts(proc.body, "    "))
            lines.append("  end")
    lines.append("endmodule")
    return "\n".join(lines) + "\n"
