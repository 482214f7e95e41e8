"""Desugaring to the overlapped normal form and canonical rendering."""

from __future__ import annotations

from .ast import Assertion, Implication, NormalAssertion, TemporalTerm


def desugar(assertion: Assertion) -> NormalAssertion:
    """Rewrite to overlapped form with an absolute consequent cycle.

    A non-overlapped implication moves the consequent to m + 1 + k, where m
    is the antecedent's maximum delay and k is the offset written after the
    operator; overlapped implications keep n = m + k. Delays never decrease
    and the resulting consequent cycle is always >= m.
    """
    m = assertion.max_antecedent_delay
    k = assertion.consequent.delay
    if assertion.implication is Implication.OVERLAPPED:
        n = m + k
    else:
        n = m + 1 + k
    return NormalAssertion(
        antecedent=list(assertion.antecedent),
        consequent=TemporalTerm(n, assertion.consequent.props),
        source_text=assertion.source_text,
    )


def _render_term(term: TemporalTerm) -> str:
    return "(" + " && ".join(f"{p.var} == {p.value}" for p in term.props) + ")"


def _render_sequence(terms: list[TemporalTerm]) -> str:
    parts = [_render_term(terms[0])]
    for prev, term in zip(terms, terms[1:]):
        parts.append(f"##{term.delay - prev.delay}")
        parts.append(_render_term(term))
    return " ".join(parts)


def render(assertion: Assertion | NormalAssertion) -> str:
    """Emit canonical fragment syntax that parse_assertion round-trips."""
    if isinstance(assertion, NormalAssertion):
        implication = Implication.OVERLAPPED
        offset = assertion.consequent.delay - assertion.max_antecedent_delay
    else:
        implication = assertion.implication
        offset = assertion.consequent.delay
    antecedent = _render_sequence(assertion.antecedent)
    consequent = _render_term(assertion.consequent)
    delay = f"##{offset} " if offset > 0 else ""
    return (
        f"assert property (@(posedge clk) {antecedent} "
        f"{implication.value} {delay}{consequent});"
    )
