"""Finite-stage verdicts for the benchmark equivalence relations on traces.

Each evaluator looks at two traces up to a stage and answers with a Verdict.
A verdict marked ``final`` cannot change at later stages.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import EnumerationTrace
from .coding import unzigzag
from .ordinals import OMEGA, rank_of

EQUIVALENT = "EquivalentSoFar"
DIFFER = "Differ"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    kind: str
    witness: object = None
    final: bool = False

    def __str__(self):
        tag = " final" if self.final else ""
        return f"{self.kind}{tag} ({self.witness})" if self.witness is not None else f"{self.kind}{tag}"


def complete_at(trace: EnumerationTrace, s: int) -> bool:
    return trace.complete_at(s)


def eval_eqce(t1, t2, s) -> Verdict:
    a, b = t1.elements(s), t2.elements(s)
    c1, c2 = complete_at(t1, s), complete_at(t2, s)
    if c1 and c2:
        if a == b:
            return Verdict(EQUIVALENT, None, True)
        return Verdict(DIFFER, min(a ^ b), True)
    # an element can never leave a set, so a missing element on a complete side is decisive
    if c2 and a - b:
        return Verdict(DIFFER, min(a - b), True)
    if c1 and b - a:
        return Verdict(DIFFER, min(b - a), True)
    if a ^ b:
        return Verdict(UNKNOWN, sorted(a ^ b))
    return Verdict(EQUIVALENT)


def _least(trace, s, key):
    elems = trace.elements(s)
    return min(elems, key=key) if elems else None


def _eval_least(t1, t2, s, key, bottom) -> Verdict:
    m1, m2 = _least(t1, s, key), _least(t2, s, key)
    c1, c2 = complete_at(t1, s), complete_at(t2, s)
    if m1 is None and m2 is None:
        return Verdict(EQUIVALENT, "both empty", c1 and c2)
    if m1 is not None and m2 is not None and key(m1) == key(m2):
        final = (c1 and c2) or key(m1) == bottom
        return Verdict(EQUIVALENT, m1, final)
    # a complete side keeps its least element; the other side can only go lower
    for mine, other, done in ((m1, m2, c1), (m2, m1, c2)):
        if done and other is not None and (mine is None or key(other) < key(mine)):
            return Verdict(DIFFER, (m1, m2), True)
    return Verdict(UNKNOWN, (m1, m2))


def eval_emin(t1, t2, s) -> Verdict:
    return _eval_least(t1, t2, s, key=lambda c: c, bottom=0)


def eval_emin_alpha(alpha, t1, t2, s) -> Verdict:
    return _eval_least(t1, t2, s, key=lambda c: rank_of(c, alpha), bottom=rank_of(0, alpha))


def eval_emax(t1, t2, s) -> Verdict:
    a, b = t1.elements(s), t2.elements(s)
    c1, c2 = complete_at(t1, s), complete_at(t2, s)
    m1, m2 = (max(a) if a else None), (max(b) if b else None)
    if c1 and c2:
        return Verdict(EQUIVALENT if m1 == m2 else DIFFER, (m1, m2), True)
    # maxima only grow; a complete side with a smaller maximum is decisive
    for mine, other, done in ((m1, m2, c1), (m2, m1, c2)):
        if done and other is not None and (mine is None or other > mine):
            return Verdict(DIFFER, (m1, m2), True)
    return Verdict(UNKNOWN, (m1, m2))


def eval_e0ce(t1, t2, s) -> Verdict:
    a, b = t1.elements(s), t2.elements(s)
    if complete_at(t1, s) and complete_at(t2, s):
        return Verdict(EQUIVALENT, len(a ^ b), True)
    return Verdict(UNKNOWN, len(a ^ b))


def shift_of(a: frozenset, b: frozenset, shift_bound: int | None = None):
    """The x with a + x = b, or None."""
    if not a and not b:
        return 0
    if len(a) != len(b) or not a:
        return None
    x = min(b) - min(a)
    if shift_bound is not None and abs(x) > shift_bound:
        return None
    return x if {v + x for v in a} == b else None


def eval_shift(t1, t2, s, shift_bound: int | None = None) -> Verdict:
    """Shift equivalence of subsets of Z coded by zig-zag; unbounded shifts by default."""
    a = frozenset(unzigzag(c) for c in t1.elements(s))
    b = frozenset(unzigzag(c) for c in t2.elements(s))
    if complete_at(t1, s) and complete_at(t2, s):
        x = shift_of(a, b, shift_bound)
        if x is None:
            return Verdict(DIFFER, (sorted(a), sorted(b)), True)
        return Verdict(EQUIVALENT, x, True)
    return Verdict(UNKNOWN, (sorted(a), sorted(b)))
