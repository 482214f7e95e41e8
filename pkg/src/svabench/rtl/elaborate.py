"""Elaborate a parsed design into a finite transition system.

Clocked processes compose simultaneously with nonblocking semantics (every
right-hand side reads pre-cycle values). Combinational processes and
continuous assigns are topologically ordered and evaluated to their fixed
point; cyclic dependencies are rejected. All arithmetic is modular over
2-valued bit-vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .ast import (
    Assign,
    Binary,
    Const,
    Design,
    Direction,
    Process,
    ProcessKind,
    SignalKind,
    Stmt,
    Unary,
    Var,
    assigned_targets,
    expr_vars,
)
from .errors import CombinationalLoop, MultipleDrivers, UnsupportedConstruct, WidthMismatch

_BOOL_CTX = 64  # width used for self-determined boolean operands

Env = dict[str, int]


# -- expression compilation ----------------------------------------------


def _infer_width(expr, widths: dict[str, int]) -> int | None:
    """Natural width of an expression; None when only unsized literals occur."""
    if isinstance(expr, Const):
        return expr.width
    if isinstance(expr, Var):
        return widths[expr.name]
    if isinstance(expr, Unary):
        if expr.op == "!":
            return 1
        return _infer_width(expr.operand, widths)
    if isinstance(expr, Binary):
        if expr.op in ("==", "!=", "&&", "||"):
            return 1
        return _combine(_infer_width(expr.left, widths), _infer_width(expr.right, widths))
    return _combine(_infer_width(expr.then, widths), _infer_width(expr.other, widths))


def _combine(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def compile_expr(expr, widths: dict[str, int], ctx: int, where: str) -> Callable[[Env], int]:
    """Compile an expression to a closure evaluating it at context width ctx.

    Narrower operands are zero-extended; an expression naturally wider than
    its context raises WidthMismatch (no implicit truncation).
    """
    mask = (1 << ctx) - 1
    if isinstance(expr, Const):
        if expr.width is not None and expr.width > ctx:
            raise WidthMismatch(
                f"{expr.width}-bit literal in {ctx}-bit context ({where})"
            )
        if expr.width is None and expr.value > mask:
            raise WidthMismatch(
                f"literal {expr.value} does not fit in {ctx} bits ({where})"
            )
        value = expr.value
        return lambda env: value
    if isinstance(expr, Var):
        if widths[expr.name] > ctx:
            raise WidthMismatch(
                f"{widths[expr.name]}-bit signal '{expr.name}' in {ctx}-bit context ({where})"
            )
        name = expr.name
        return lambda env: env[name]
    if isinstance(expr, Unary):
        if expr.op == "!":
            f = _compile_bool(expr.operand, widths, where)
            return lambda env: int(f(env) == 0)
        f = compile_expr(expr.operand, widths, ctx, where)
        if expr.op == "~":
            return lambda env: ~f(env) & mask
        return lambda env: -f(env) & mask  # unary minus, two's complement
    if isinstance(expr, Binary):
        op = expr.op
        if op in ("&&", "||"):
            lf = _compile_bool(expr.left, widths, where)
            rf = _compile_bool(expr.right, widths, where)
            if op == "&&":
                return lambda env: int(lf(env) != 0 and rf(env) != 0)
            return lambda env: int(lf(env) != 0 or rf(env) != 0)
        if op in ("==", "!="):
            wc = _combine(_infer_width(expr.left, widths), _infer_width(expr.right, widths))
            wc = wc if wc is not None else _BOOL_CTX
            lf = compile_expr(expr.left, widths, wc, where)
            rf = compile_expr(expr.right, widths, wc, where)
            if op == "==":
                return lambda env: int(lf(env) == rf(env))
            return lambda env: int(lf(env) != rf(env))
        lf = compile_expr(expr.left, widths, ctx, where)
        rf = compile_expr(expr.right, widths, ctx, where)
        if op == "&":
            return lambda env: lf(env) & rf(env)
        if op == "|":
            return lambda env: lf(env) | rf(env)
        if op == "^":
            return lambda env: lf(env) ^ rf(env)
        if op == "+":
            return lambda env: (lf(env) + rf(env)) & mask
        return lambda env: (lf(env) - rf(env)) & mask
    cf = _compile_bool(expr.cond, widths, where)
    tf = compile_expr(expr.then, widths, ctx, where)
    of = compile_expr(expr.other, widths, ctx, where)
    return lambda env: tf(env) if cf(env) != 0 else of(env)


def _compile_bool(expr, widths: dict[str, int], where: str) -> Callable[[Env], int]:
    ctx = _infer_width(expr, widths)
    return compile_expr(expr, widths, ctx if ctx is not None else _BOOL_CTX, where)


# -- statement compilation -------------------------------------------------


@dataclass
class _CAssign:
    target: str
    fn: Callable[[Env], int]


@dataclass
class _CIf:
    cond: Callable[[Env], int]
    then_body: list
    else_body: list


def _compile_stmts(stmts: list[Stmt], widths: dict[str, int], where: str) -> list:
    out = []
    for stmt in stmts:
        if isinstance(stmt, Assign):
            tw = widths[stmt.target]
            natural = _infer_width(stmt.rhs, widths)
            if natural is not None and natural > tw:
                raise WidthMismatch(
                    f"cannot assign {natural}-bit expression to "
                    f"{tw}-bit '{stmt.target}' ({where})"
                )
            out.append(_CAssign(stmt.target, compile_expr(stmt.rhs, widths, tw, where)))
        else:
            out.append(
                _CIf(
                    _compile_bool(stmt.cond, widths, where),
                    _compile_stmts(stmt.then_body, widths, where),
                    _compile_stmts(stmt.else_body or [], widths, where),
                )
            )
    return out


def _run_blocking(compiled: list, env: Env) -> None:
    for node in compiled:
        if isinstance(node, _CAssign):
            env[node.target] = node.fn(env)
        elif node.cond(env) != 0:
            _run_blocking(node.then_body, env)
        else:
            _run_blocking(node.else_body, env)


def _run_nonblocking(compiled: list, env: Env, updates: Env) -> None:
    for node in compiled:
        if isinstance(node, _CAssign):
            updates[node.target] = node.fn(env)
        elif node.cond(env) != 0:
            _run_nonblocking(node.then_body, env, updates)
        else:
            _run_nonblocking(node.else_body, env, updates)


# -- dataflow analysis -------------------------------------------------------


def _external_reads(stmts: list[Stmt], written: frozenset[str]) -> tuple[set[str], frozenset[str]]:
    """Signals read before being assigned, and signals assigned on all paths."""
    reads: set[str] = set()
    for stmt in stmts:
        if isinstance(stmt, Assign):
            reads |= expr_vars(stmt.rhs) - written
            written = written | {stmt.target}
        else:
            reads |= expr_vars(stmt.cond) - written
            r1, w1 = _external_reads(stmt.then_body, written)
            r2, w2 = _external_reads(stmt.else_body or [], written)
            reads |= r1 | r2
            written = w1 & w2
    return reads, written


# -- the transition system ---------------------------------------------------


@dataclass
class TransitionSystem:
    """Finite-state semantic model of an elaborated design.

    ``inputs`` lists the free inputs only: the clock is implicit time and a
    ``rst`` input is applied once at time zero and held at 0 afterwards.
    """

    design_name: str
    registers: list[tuple[str, int]]
    inputs: list[tuple[str, int]]
    outputs: list[tuple[str, int]]
    reset_state: tuple[int, ...]
    has_reset: bool
    signal_widths: dict[str, int]
    _step: Callable[[tuple[int, ...], tuple[int, ...], int], tuple[tuple[int, ...], Env]] = field(
        repr=False
    )
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def state_bits(self) -> int:
        return sum(w for _, w in self.registers)

    @property
    def input_bits(self) -> int:
        return sum(w for _, w in self.inputs)

    def _eval(self, state: tuple[int, ...], inputs: tuple[int, ...]):
        key = (state, inputs)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._step(state, inputs, 0)
            if len(self._cache) < (1 << 20):
                self._cache[key] = hit
        return hit

    def next_state(self, state: tuple[int, ...], inputs: tuple[int, ...]) -> tuple[int, ...]:
        return self._eval(state, inputs)[0]

    def observe(self, state: tuple[int, ...], inputs: tuple[int, ...]) -> Env:
        """Valuation of every design signal except the clock."""
        return self._eval(state, inputs)[1]

    def output_values(self, state: tuple[int, ...], inputs: tuple[int, ...]) -> Env:
        env = self.observe(state, inputs)
        return {name: env[name] for name, _ in self.outputs}

    def zero_inputs(self) -> tuple[int, ...]:
        return (0,) * len(self.inputs)

    def input_space(self):
        """All input valuations in lexicographic order. Use sparingly."""
        import itertools

        return itertools.product(*[range(1 << w) for _, w in self.inputs])


def elaborate(design: Design) -> TransitionSystem:
    """Build the transition system for a parsed design.

    Raises CombinationalLoop, MultipleDrivers, or WidthMismatch; implicit
    latches and undriven signals are outside the subset and raise
    UnsupportedConstruct.
    """
    widths = {s.name: s.width for s in design.signals.values()}

    drivers: dict[str, Process] = {}
    for proc in design.processes:
        for target in sorted(_targets_of(proc)):
            if target in drivers:
                raise MultipleDrivers(target)
            drivers[target] = proc

    registers = [
        (s.name, s.width) for s in design.signals.values() if s.kind is SignalKind.REGISTER
    ]
    free_inputs = [
        (p.name, widths[p.name])
        for p in design.ports
        if p.direction is Direction.INPUT and p.name not in ("clk", "rst")
    ]
    outputs = [(p.name, widths[p.name]) for p in design.ports if p.direction is Direction.OUTPUT]
    has_reset = "rst" in design.signals

    known = {name for name, _ in registers} | {name for name, _ in free_inputs}
    if has_reset:
        known.add("rst")
    for sig in design.signals.values():
        if sig.name in ("clk", "rst") or sig.name in known:
            continue
        if sig.name not in drivers:
            raise UnsupportedConstruct(f"undriven signal '{sig.name}'")

    # Order combinational units by dependency; reject cycles and latches.
    comb_units = [p for p in design.processes if p.kind is not ProcessKind.CLOCKED]
    produced_by: dict[str, int] = {}
    for i, unit in enumerate(comb_units):
        for target in _targets_of(unit):
            produced_by[target] = i
    unit_reads: list[set[str]] = []
    for unit in comb_units:
        reads, written = _external_reads(unit.body, frozenset())
        missing = _targets_of(unit) - set(written)
        if missing:
            raise UnsupportedConstruct(
                f"implicit latch: '{sorted(missing)[0]}' is not assigned on every path "
                "of a combinational process"
            )
        unit_reads.append(reads)

    comb_sigs = set(produced_by)
    sig_deps = {
        s: sorted(unit_reads[produced_by[s]] & comb_sigs) for s in sorted(comb_sigs)
    }
    color: dict[str, int] = {}  # 0 visiting, 1 done
    stack: list[str] = []

    def visit_sig(s: str) -> None:
        color[s] = 0
        stack.append(s)
        for t in sig_deps[s]:
            if color.get(t) == 0:
                raise CombinationalLoop(stack[stack.index(t):])
            if t not in color:
                visit_sig(t)
        color[s] = 1
        stack.pop()

    for s in sig_deps:
        if s not in color:
            visit_sig(s)

    order: list[int] = []
    seen: set[int] = set()

    def visit_unit(i: int) -> None:
        if i in seen:
            return
        seen.add(i)
        for read in sorted(unit_reads[i]):
            j = produced_by.get(read)
            if j is not None and j != i:
                visit_unit(j)
        order.append(i)

    for i in range(len(comb_units)):
        visit_unit(i)

    comb_compiled = [
        (_compile_stmts(comb_units[i].body, widths, f"combinational logic in {design.name}"))
        for i in order
    ]
    clocked_compiled = [
        _compile_stmts(p.body, widths, f"clocked logic in {design.name}")
        for p in design.processes
        if p.kind is ProcessKind.CLOCKED
    ]

    reg_names = [name for name, _ in registers]
    input_names = [name for name, _ in free_inputs]

    def step(state: tuple[int, ...], inputs: tuple[int, ...], rst: int):
        env: Env = dict(zip(input_names, inputs))
        env.update(zip(reg_names, state))
        if has_reset:
            env["rst"] = rst
        for compiled in comb_compiled:
            _run_blocking(compiled, env)
        updates: Env = {}
        for compiled in clocked_compiled:
            _run_nonblocking(compiled, env, updates)
        nxt = tuple(updates.get(r, env[r]) for r in reg_names)
        return nxt, env

    if has_reset:
        zero_state = (0,) * len(registers)
        reset_state = step(zero_state, (0,) * len(free_inputs), 1)[0]
    else:
        reset_state = (0,) * len(registers)

    return TransitionSystem(
        design_name=design.name,
        registers=registers,
        inputs=free_inputs,
        outputs=outputs,
        reset_state=reset_state,
        has_reset=has_reset,
        signal_widths={n: w for n, w in widths.items() if n != "clk"},
        _step=step,
    )


def _targets_of(proc: Process) -> set[str]:
    return assigned_targets(proc.body)
