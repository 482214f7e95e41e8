"""Exhaustive explicit-state property checking.

The checker enumerates every reachable state and every input sequence of
window length n+1 (n = absolute consequent cycle). A window matches when
all antecedent terms hold at their delays; the verdict follows the
pre/post-condition table: no matching window anywhere -> Vacuous, all
matching windows satisfy the consequent -> Valid, otherwise Cex with the
lexicographically first failing window prefixed by a concrete reset path.

Random mode samples seeded runs instead and can only ever produce Cex or an
inconclusive Error: the formal meaning of Valid/Vacuous is reserved for the
exhaustive engine.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..rtl.elaborate import TransitionSystem
from ..sva.ast import Assertion, NormalAssertion, Proposition
from ..sva.errors import SvaError
from ..sva.parser import parse_assertion
from ..sva.transform import desugar
from .verdict import BudgetExceeded, CheckConfig, Trace, Verdict, VerdictKind


@dataclass(frozen=True)
class ReachableSet:
    states: frozenset
    fixed_point: bool
    depth_used: int
    paths: dict  # state -> shortest, lexicographically-first input sequence from reset


def reachable_states(
    ts: TransitionSystem, depth: int = 64, bit_budget: int = 24
) -> ReachableSet:
    """BFS fixed point from the reset state over all input valuations.

    Exploration is truncated at `depth` steps; `fixed_point` records whether
    the frontier emptied before that. Raises BudgetExceeded when more than
    2**bit_budget states are discovered.
    """
    limit = 1 << bit_budget
    input_vectors = list(ts.input_space())
    paths: dict = {ts.reset_state: ()}
    frontier = [ts.reset_state]
    level = 0
    while frontier and level < depth:
        next_frontier = []
        for state in frontier:
            base = paths[state]
            for u in input_vectors:
                nxt = ts.next_state(state, u)
                if nxt not in paths:
                    paths[nxt] = base + (u,)
                    next_frontier.append(nxt)
                    if len(paths) > limit:
                        raise BudgetExceeded(
                            f"more than 2^{bit_budget} reachable states discovered"
                        )
        frontier = next_frontier
        level += 1
    return ReachableSet(
        states=frozenset(paths),
        fixed_point=not frontier,
        depth_used=level,
        paths=paths,
    )


def _props_hold(props: tuple[Proposition, ...], env: dict[str, int]) -> bool:
    return all(env[p.var] == p.value for p in props)


class _Exhaustive:
    def __init__(self, ts: TransitionSystem, na: NormalAssertion, reach: ReachableSet):
        self.ts = ts
        self.reach = reach
        self.inputs = list(ts.input_space())
        self.ant = {t.delay: t.props for t in na.antecedent}
        self.cons = na.consequent.props
        self.m = na.max_antecedent_delay
        self.n = na.consequent_cycle
        self.any_match = False
        self._safe: dict = {}

    def run(self) -> tuple[tuple, list] | None:
        """First failing (start_state, window_inputs) in lexicographic order."""
        for state in sorted(self.reach.states):
            fail = self._prefix(state, 0, [])
            if fail is not None:
                return state, fail
        return None

    def _prefix(self, state, cycle: int, chosen: list) -> list | None:
        for u in self.inputs:
            env = self.ts.observe(state, u)
            props = self.ant.get(cycle)
            if props is not None and not _props_hold(props, env):
                continue
            if cycle < self.m:
                fail = self._prefix(self.ts.next_state(state, u), cycle + 1, chosen + [u])
                if fail is not None:
                    return fail
                continue
            # antecedent fully matched at this cycle
            self.any_match = True
            if self.n == self.m:
                if not _props_hold(self.cons, env):
                    return chosen + [u]
            else:
                nxt = self.ts.next_state(state, u)
                if not self._all_safe(nxt, self.n - self.m):
                    return chosen + [u] + self._first_fail(nxt, self.n - self.m)
        return None

    def _all_safe(self, state, d: int) -> bool:
        key = (state, d)
        cached = self._safe.get(key)
        if cached is not None:
            return cached
        ok = True
        for u in self.inputs:
            if d == 1:
                if not _props_hold(self.cons, self.ts.observe(state, u)):
                    ok = False
                    break
            elif not self._all_safe(self.ts.next_state(state, u), d - 1):
                ok = False
                break
        self._safe[key] = ok
        return ok

    def _first_fail(self, state, d: int) -> list:
        for u in self.inputs:
            if d == 1:
                if not _props_hold(self.cons, self.ts.observe(state, u)):
                    return [u]
            else:
                nxt = self.ts.next_state(state, u)
                if not self._all_safe(nxt, d - 1):
                    return [u] + self._first_fail(nxt, d - 1)
        raise AssertionError("no failing suffix below an unsafe state")


def _build_trace(ts: TransitionSystem, input_seq: list) -> Trace:
    cycles = []
    state = ts.reset_state
    for u in input_seq:
        cycles.append(dict(ts.observe(state, u)))
        state = ts.next_state(state, u)
    return Trace(tuple(cycles), dict(ts.signal_widths))


def replay_trace(ts: TransitionSystem, na: NormalAssertion, trace: Trace, window_start: int) -> None:
    """Re-simulate a Cex trace and confirm it refutes the assertion.

    Runs on every counterexample before it is reported; a failure here means
    the checker itself is inconsistent with the elaborated semantics.
    """
    input_names = [name for name, _ in ts.inputs]
    state = ts.reset_state
    for k, recorded in enumerate(trace.cycles):
        u = tuple(recorded[name] for name in input_names)
        env = ts.observe(state, u)
        if any(env[name] != value for name, value in recorded.items()):
            raise AssertionError(f"trace self-check: cycle {k} diverges from the design")
        state = ts.next_state(state, u)
    ant = {t.delay: t.props for t in na.antecedent}
    for delay, props in ant.items():
        if not _props_hold(props, trace.cycles[window_start + delay]):
            raise AssertionError("trace self-check: antecedent does not match")
    if _props_hold(na.consequent.props, trace.cycles[window_start + na.consequent_cycle]):
        raise AssertionError("trace self-check: consequent is not violated")


def check(
    ts: TransitionSystem,
    assertion: Assertion | NormalAssertion,
    cfg: CheckConfig | None = None,
) -> Verdict:
    """Classify one assertion against a transition system.

    All failures are folded into Error verdicts rather than raised, so a
    batch over untrusted input never aborts.
    """
    cfg = cfg or CheckConfig()
    na = desugar(assertion) if isinstance(assertion, Assertion) else assertion

    for var in sorted(na.variables()):
        width = ts.signal_widths.get(var)
        if width is None:
            return Verdict(VerdictKind.ERROR, f"signal not found: '{var}'")
        for term in list(na.antecedent) + [na.consequent]:
            for p in term.props:
                if p.var == var and p.value >= (1 << width):
                    return Verdict(
                        VerdictKind.ERROR,
                        f"width mismatch: value {p.value} does not fit "
                        f"{width}-bit signal '{var}'",
                    )

    n = na.consequent_cycle
    if cfg.mode == "random":
        return _check_random(ts, na, cfg)

    need = ts.state_bits + ts.input_bits * (n + 1)
    if need > cfg.bit_budget:
        return Verdict(
            VerdictKind.ERROR,
            f"budget exceeded: window needs {need} bits > budget {cfg.bit_budget}",
        )
    try:
        reach = reachable_states(ts, cfg.reachability_depth, cfg.bit_budget)
    except BudgetExceeded as exc:
        return Verdict(VerdictKind.ERROR, f"budget exceeded: {exc}")
    if not reach.fixed_point:
        return Verdict(
            VerdictKind.ERROR,
            f"reachability fixed point not reached within depth {cfg.reachability_depth}",
        )

    engine = _Exhaustive(ts, na, reach)
    failure = engine.run()
    if failure is not None:
        state, window_inputs = failure
        prefix = list(reach.paths[state])
        trace = _build_trace(ts, prefix + window_inputs)
        replay_trace(ts, na, trace, window_start=len(prefix))
        return Verdict(
            VerdictKind.CEX,
            f"counterexample at window cycle {len(prefix)} "
            f"({len(reach.states)} reachable states)",
            trace,
        )
    if engine.any_match:
        return Verdict(
            VerdictKind.VALID,
            f"no violation over {len(reach.states)} reachable states "
            f"(fixed point at depth {reach.depth_used})",
        )
    return Verdict(VerdictKind.VACUOUS, "pre-condition unreachable")


def _check_random(ts: TransitionSystem, na: NormalAssertion, cfg: CheckConfig) -> Verdict:
    rng = random.Random(cfg.seed)
    ant = {t.delay: t.props for t in na.antecedent}
    cons = na.consequent.props
    n = na.consequent_cycle
    input_widths = [w for _, w in ts.inputs]

    def rand_input() -> tuple:
        return tuple(rng.randrange(1 << w) for w in input_widths)

    for _ in range(cfg.random_trials):
        prefix_len = rng.randrange(cfg.reachability_depth + 1)
        state = ts.reset_state
        prefix = []
        for _ in range(prefix_len):
            u = rand_input()
            prefix.append(u)
            state = ts.next_state(state, u)
        window = [rand_input() for _ in range(n + 1)]
        envs = []
        s = state
        for u in window:
            envs.append(ts.observe(s, u))
            s = ts.next_state(s, u)
        if not all(_props_hold(props, envs[d]) for d, props in ant.items()):
            continue
        if not _props_hold(cons, envs[n]):
            trace = _build_trace(ts, prefix + window)
            replay_trace(ts, na, trace, window_start=prefix_len)
            return Verdict(
                VerdictKind.CEX,
                f"counterexample at window cycle {prefix_len} (random mode)",
                trace,
            )
    return Verdict(
        VerdictKind.ERROR,
        f"inconclusive: random mode ({cfg.random_trials} trials, no counterexample)",
    )


def check_batch(
    ts: TransitionSystem, assertions: list[str], cfg: CheckConfig | None = None
) -> list[tuple[str, Verdict]]:
    """Parse, desugar, and check each assertion text; order preserved.

    Parse failures become Error verdicts carrying the parser message; the
    batch itself never raises.
    """
    out: list[tuple[str, Verdict]] = []
    for text in assertions:
        try:
            assertion = parse_assertion(text)
        except SvaError as exc:
            out.append((text, Verdict(VerdictKind.ERROR, str(exc))))
            continue
        out.append((text, check(ts, assertion, cfg)))
    return out
