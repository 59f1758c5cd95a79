"""Ordinals below w^w in Cantor normal form.

An ordinal is a tuple of ``(exponent, coefficient)`` terms with strictly
descending exponents and positive coefficients; the empty tuple is zero.
Rank codes give a bijection between the ordinals below a bound and the
natural numbers, with the identity on N for the bound w.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering

from .coding import pair, tuple_code, tuple_decode, unpair

LESS, EQUAL, GREATER = -1, 0, 1


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        last = None
        for e, c in self.terms:
            if e < 0 or c < 1:
                raise ValueError(f"bad CNF term {(e, c)}")
            if last is not None and e >= last:
                raise ValueError("CNF exponents must strictly descend")
            last = e

    @classmethod
    def of(cls, k: int) -> "Ordinal":
        if k < 0:
            raise ValueError("ordinals are non-negative")
        return cls(((0, k),)) if k else cls()

    @classmethod
    def from_coefficients(cls, coeffs) -> "Ordinal":
        """Build from ``coeffs[i]`` = coefficient of w^i."""
        return cls(tuple((e, c) for e, c in reversed(list(enumerate(coeffs))) if c))

    def coefficient(self, e: int) -> int:
        for ee, c in self.terms:
            if ee == e:
                return c
        return 0

    def coefficients(self, length: int) -> tuple[int, ...]:
        """Coefficients of w^0 .. w^(length-1)."""
        if self.terms and self.terms[0][0] >= length:
            raise ValueError(f"{self} has a term at or above w^{length}")
        return tuple(self.coefficient(e) for e in range(length))

    @property
    def degree(self) -> int:
        return self.terms[0][0] if self.terms else 0

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0] == 0

    def __lt__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms < other.terms

    def __add__(self, other):
        return add_absorb(self, other)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
                continue
            base = "w" if e == 1 else f"w^{e}"
            parts.append(base if c == 1 else f"{base}*{c}")
        return " + ".join(parts)


ZERO = Ordinal()
OMEGA = Ordinal(((1, 1),))


class _OmegaToOmega:
    """The bound w^w, larger than every Ordinal value."""

    def __repr__(self):
        return "OMEGA_OMEGA"

    def __str__(self):
        return "w^w"


OMEGA_OMEGA = _OmegaToOmega()


def omega_power(e: int, c: int = 1) -> Ordinal:
    return Ordinal(((e, c),)) if c else ZERO


def compare(a: Ordinal, b: Ordinal) -> int:
    if a.terms == b.terms:
        return EQUAL
    return LESS if a.terms < b.terms else GREATER


def add_absorb(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum a + b: terms of a below the leading exponent of b are absorbed."""
    if not b.terms:
        return a
    top, lead = b.terms[0]
    kept = [(e, c) for e, c in a.terms if e > top]
    same = a.coefficient(top)
    return Ordinal(tuple(kept) + ((top, lead + same),) + b.terms[1:])


def make(terms) -> Ordinal:
    """Fold ``(exponent, coefficient)`` pairs left to right with ordinal addition."""
    out = ZERO
    for e, c in terms:
        if c:
            out = add_absorb(out, omega_power(e, c))
    return out


_TERM = re.compile(r"^(?:(\d+)|(?:w|ω)(?:\^(\d+))?(?:\*(\d+))?)$")


def parse_ordinal(text: str) -> Ordinal:
    """Parse ``w^e*c + ... + c0``; ``ω`` is accepted for ``w``."""
    text = text.strip()
    if not text:
        raise ValueError("empty ordinal literal")
    terms = []
    for chunk in text.split("+"):
        chunk = chunk.replace(" ", "")
        m = _TERM.match(chunk)
        if not m:
            raise ValueError(f"cannot parse ordinal term {chunk!r}")
        if m.group(1) is not None:
            terms.append((0, int(m.group(1))))
        else:
            e = int(m.group(2)) if m.group(2) else 1
            c = int(m.group(3)) if m.group(3) else 1
            terms.append((e, c))
    return make(terms)


def _check_below(o: Ordinal, bound) -> None:
    if bound is OMEGA_OMEGA:
        return
    if not isinstance(bound, Ordinal) or bound.is_zero():
        raise ValueError("bound must be a positive ordinal or OMEGA_OMEGA")
    if not o < bound:
        raise ValueError(f"{o} is not below the bound {bound}")


def _blocks(bound: Ordinal):
    """Split the ordinals below ``bound`` into singletons and copies of w^e.

    Returns ``(finite_base, finite_count, infinite_blocks)`` where each infinite
    block is ``(prefix, exponent, d)`` standing for prefix + w^e*d + r, r < w^e.
    """
    infinite = []
    prefix = ZERO
    finite_base, finite_count = ZERO, 0
    for e, c in bound.terms:
        if e == 0:
            finite_base, finite_count = prefix, c
        else:
            for d in range(c):
                infinite.append((prefix, e, d))
        prefix = add_absorb(prefix, omega_power(e, c))
    return finite_base, finite_count, infinite


def _remainder_code(r: Ordinal, e: int) -> int:
    return tuple_code(reversed(r.coefficients(e)))


def _remainder(code: int, e: int) -> Ordinal:
    return Ordinal.from_coefficients(tuple(reversed(tuple_decode(code, e))))


def code_of(o: Ordinal, bound=OMEGA) -> int:
    _check_below(o, bound)
    if bound is OMEGA_OMEGA:
        if o.is_zero():
            return 0
        n, lead = o.terms[0]
        rest = Ordinal(o.terms[1:])
        return 1 + pair(n, tuple_code((lead - 1,) + tuple(reversed(rest.coefficients(n)))))
    finite_base, finite_count, infinite = _blocks(bound)
    # locate the first exponent where o falls below the bound
    exps = sorted({e for e, _ in bound.terms} | {e for e, _ in o.terms}, reverse=True)
    for E in exps:
        if o.coefficient(E) != bound.coefficient(E):
            break
    d = o.coefficient(E)
    rest = Ordinal(tuple(t for t in o.terms if t[0] < E))
    if E == 0:
        return d
    idx = next(i for i, (_, e, dd) in enumerate(infinite) if e == E and dd == d)
    return finite_count + idx + len(infinite) * _remainder_code(rest, E)


def rank_of(code: int, bound=OMEGA) -> Ordinal:
    if code < 0:
        raise ValueError("rank codes are non-negative")
    if bound is OMEGA_OMEGA:
        if code == 0:
            return ZERO
        n, inner = unpair(code - 1)
        vals = tuple_decode(inner, n + 1)
        head = omega_power(n, vals[0] + 1)
        return add_absorb(head, Ordinal.from_coefficients(tuple(reversed(vals[1:]))))
    _check_below(ZERO, bound)
    finite_base, finite_count, infinite = _blocks(bound)
    if code < finite_count:
        return add_absorb(finite_base, Ordinal.of(code))
    if not infinite:
        raise ValueError(f"code {code} has no rank below {bound}")
    k = code - finite_count
    prefix, e, d = infinite[k % len(infinite)]
    r = _remainder(k // len(infinite), e)
    return add_absorb(add_absorb(prefix, omega_power(e, d)), r)


def bound_omega_times(n: int) -> Ordinal:
    return omega_power(1, n)


def is_below(o: Ordinal, bound) -> bool:
    return bound is OMEGA_OMEGA or o < bound
