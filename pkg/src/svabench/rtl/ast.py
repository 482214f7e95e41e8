"""AST for the supported synthesizable Verilog subset.

Structural equality deliberately ignores source spans so that a parse /
render round trip compares equal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union


class SignalKind(enum.Enum):
    INPUT = "input"
    OUTPUT = "output"
    REGISTER = "register"
    WIRE = "wire"


class Direction(enum.Enum):
    INPUT = "input"
    OUTPUT = "output"


class ProcessKind(enum.Enum):
    CONTINUOUS = "continuous"  # assign y = ...;
    COMBINATIONAL = "combinational"  # always @(*)
    CLOCKED = "clocked"  # always @(posedge clk)


# --- expressions ------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: int
    width: Optional[int] = None  # None for unsized decimal literals


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # ~ ! -
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str  # & | ^ && || == != + -
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Ternary:
    cond: "Expr"
    then: "Expr"
    other: "Expr"


Expr = Union[Const, Var, Unary, Binary, Ternary]


# --- statements and processes -----------------------------------------------


@dataclass
class Assign:
    target: str
    rhs: Expr
    nonblocking: bool
    span: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass
class If:
    cond: Expr
    then_body: list["Stmt"]
    else_body: Optional[list["Stmt"]] = None


Stmt = Union[Assign, If]


@dataclass
class Process:
    kind: ProcessKind
    body: list[Stmt]
    span: tuple[int, int] = field(default=(0, 0), compare=False)

    @property
    def clocked(self) -> bool:
        return self.kind is ProcessKind.CLOCKED


# --- declarations and the design --------------------------------------------


@dataclass
class SignalDecl:
    name: str
    width: int
    kind: SignalKind
    span: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass
class PortDecl:
    name: str
    direction: Direction


@dataclass
class Design:
    name: str
    ports: list[PortDecl]
    signals: dict[str, SignalDecl]
    processes: list[Process]

    @property
    def input_names(self) -> list[str]:
        return [p.name for p in self.ports if p.direction is Direction.INPUT]

    @property
    def output_names(self) -> list[str]:
        return [p.name for p in self.ports if p.direction is Direction.OUTPUT]

    @property
    def register_names(self) -> list[str]:
        return [s.name for s in self.signals.values() if s.kind is SignalKind.REGISTER]

    @property
    def has_clock(self) -> bool:
        return any(p.kind is ProcessKind.CLOCKED for p in self.processes)


def walk_exprs(stmts: list[Stmt]):
    """Yield every expression appearing in a statement list."""
    for stmt in stmts:
        if isinstance(stmt, Assign):
            yield stmt.rhs
        else:
            yield stmt.cond
            yield from walk_exprs(stmt.then_body)
            if stmt.else_body is not None:
                yield from walk_exprs(stmt.else_body)


def expr_vars(expr: Expr) -> set[str]:
    """Names of all signals read by an expression."""
    if isinstance(expr, Var):
        return {expr.name}
    if isinstance(expr, Const):
        return set()
    if isinstance(expr, Unary):
        return expr_vars(expr.operand)
    if isinstance(expr, Binary):
        return expr_vars(expr.left) | expr_vars(expr.right)
    return expr_vars(expr.cond) | expr_vars(expr.then) | expr_vars(expr.other)


def assigned_targets(stmts: list[Stmt]) -> set[str]:
    """Every signal assigned anywhere in a statement list."""
    out: set[str] = set()
    for stmt in stmts:
        if isinstance(stmt, Assign):
            out.add(stmt.target)
        else:
            out |= assigned_targets(stmt.then_body)
            if stmt.else_body is not None:
                out |= assigned_targets(stmt.else_body)
    return out
