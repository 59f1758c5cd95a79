"""Terms, identities, presentations and enumeration traces.

Five varieties are supported: commutative semigroups (cs), commutative
monoids (cm), abelian groups (ag), unary algebras with m function symbols
(ufm) and pure sets (sets).  Terms of the commutative varieties are kept as
exponent vectors; unary terms as a symbol string applied to one generator.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .coding import pair, unpair


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class UnmappedCode(ValueError):
    pass


@dataclass(frozen=True)
class Variety:
    kind: str
    arity: int = 0

    def __post_init__(self):
        if self.kind not in ("cs", "cm", "ag", "uf", "sets"):
            raise ValueError(f"unknown variety {self.kind!r}")
        if self.kind == "uf" and self.arity < 1:
            raise ValueError("UF(m) needs m >= 1")

    @property
    def name(self) -> str:
        return f"uf{self.arity}" if self.kind == "uf" else self.kind

    @property
    def commutative(self) -> bool:
        return self.kind in ("cs", "cm", "ag")

    @property
    def unary(self) -> bool:
        return self.kind in ("uf", "sets")

    def __str__(self):
        return self.name


CS = Variety("cs")
CM = Variety("cm")
AG = Variety("ag")
SETS = Variety("sets")


def UF(m: int) -> Variety:
    return Variety("uf", m)


def parse_variety(name: str) -> Variety:
    name = name.strip().lower()
    if name in ("cs", "cm", "ag", "sets"):
        return Variety(name)
    m = re.fullmatch(r"uf(\d+)", name)
    if m:
        return UF(int(m.group(1)))
    raise ParseError(f"unknown variety {name!r}")


@dataclass(frozen=True, order=True)
class UTerm:
    """``symbols[0](symbols[1](...(x_gen)))`` with symbols numbered from 1."""

    gen: int
    symbols: tuple[int, ...] = ()

    @property
    def depth(self) -> int:
        return len(self.symbols)

    def apply(self, *syms: int) -> "UTerm":
        return UTerm(self.gen, tuple(syms) + self.symbols)


def power(gen: int, k: int) -> UTerm:
    """f^k(x_gen) for the single symbol of UF(1)."""
    return UTerm(gen, (1,) * k)


@dataclass(frozen=True)
class Identity:
    lhs: object
    rhs: object

    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    def flipped(self) -> "Identity":
        return Identity(self.rhs, self.lhs)


@dataclass(frozen=True)
class Term:
    """Parsed syntax tree together with its variety and generator count.

    Nodes are tuples: ("gen", i), ("unit",), ("zero",), ("mul", a, b),
    ("pow", a, k), ("add", a, b), ("neg", a), ("scale", k, a), ("app", s, a).
    """

    variety: Variety
    n: int
    node: tuple


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(x\d+)|(f\d+)|(\d+)|(\^)|(\*)|(\+)|(-)|(\()|(\))|(e)|(.))")


def _tokens(text: str):
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        kinds = ("gen", "sym", "int", "^", "*", "+", "-", "(", ")", "e", "bad")
        for kind, g in zip(kinds, m.groups()):
            if g is not None:
                if kind == "bad":
                    raise ParseError(f"unexpected character {g!r}", start)
                out.append((kind, g, start))
                break
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, variety: Variety, n: int):
        self.toks = _tokens(text)
        self.i = 0
        self.variety = variety
        self.n = n

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def gen(self, tok):
        idx = int(tok[1][1:])
        if idx >= self.n:
            raise ParseError(f"generator x{idx} out of range for {self.n} generators", tok[2])
        return ("gen", idx)

    def parse(self):
        kind = self.variety.kind
        if kind in ("cs", "cm"):
            node = self.product()
        elif kind == "ag":
            node = self.sum()
        else:
            node = self.unary()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return node

    # commutative semigroups and monoids
    def product(self):
        node = self.factor()
        while self.peek()[0] in ("gen", "(", "e", "*"):
            if self.peek()[0] == "*":
                self.take()
            node = ("mul", node, self.factor())
        return node

    def factor(self):
        tok = self.take()
        if tok[0] == "gen":
            node = self.gen(tok)
        elif tok[0] == "e":
            if self.variety.kind != "cm":
                raise ParseError("the unit e exists only in cm", tok[2])
            node = ("unit",)
        elif tok[0] == "(":
            node = self.product()
            self.take(")")
        else:
            raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2])
        while self.peek()[0] == "^":
            self.take()
            k = int(self.take("int")[1])
            if k == 0 and self.variety.kind == "cs":
                raise ParseError("zero powers are not semigroup terms", tok[2])
            node = ("pow", node, k)
        return node

    # abelian groups
    def sum(self):
        if self.peek()[0] == "-":
            self.take()
            node = ("neg", self.summand())
        else:
            node = self.summand()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.summand()
            node = ("add", node, rhs if op == "+" else ("neg", rhs))
        return node

    def summand(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            k = int(tok[1])
            nxt = self.peek()[0]
            if nxt == "*":
                self.take()
                return ("scale", k, self.atom())
            if nxt in ("gen", "("):
                return ("scale", k, self.atom())
            if k != 0:
                raise ParseError("bare integers other than 0 are not group terms", tok[2])
            return ("zero",)
        if tok[0] == "-":
            self.take()
            return ("neg", self.summand())
        return self.atom()

    def atom(self):
        tok = self.take()
        if tok[0] == "gen":
            return self.gen(tok)
        if tok[0] == "(":
            node = self.sum()
            self.take(")")
            return node
        raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2])

    # unary algebras and sets
    def unary(self):
        tok = self.take()
        if tok[0] == "gen":
            return self.gen(tok)
        if tok[0] == "sym":
            s = int(tok[1][1:])
            m = self.variety.arity if self.variety.kind == "uf" else 0
            if not 1 <= s <= m:
                raise ParseError(f"symbol {tok[1]} not in the signature of {self.variety}", tok[2])
            self.take("(")
            inner = self.unary()
            if self.peek()[0] != ")":
                raise ParseError("unary symbols take exactly one argument", self.peek()[2])
            self.take(")")
            return ("app", s, inner)
        raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2])


def parse_term(text: str, variety: Variety, n: int) -> Term:
    if n < 1:
        raise ValueError("presentations need at least one generator")
    return Term(variety, n, _Parser(text, variety, n).parse())


def _render_node(node, variety) -> str:
    op = node[0]
    if op == "gen":
        return f"x{node[1]}"
    if op == "unit":
        return "e"
    if op == "zero":
        return "0"
    if op == "mul":
        return f"{_wrap(node[1], variety, 'mul')} {_wrap(node[2], variety, 'mul')}"
    if op == "pow":
        return f"{_wrap(node[1], variety, 'pow')}^{node[2]}"
    if op == "add":
        return f"{_render_node(node[1], variety)} + {_wrap(node[2], variety, 'add')}"
    if op == "neg":
        return f"-{_wrap(node[1], variety, 'neg')}"
    if op == "scale":
        return f"{node[1]}*{_wrap(node[2], variety, 'scale')}"
    if op == "app":
        return f"f{node[1]}({_render_node(node[2], variety)})"
    raise ValueError(f"bad node {node!r}")


def _wrap(node, variety, ctx) -> str:
    text = _render_node(node, variety)
    simple = node[0] in ("gen", "unit", "zero") or (ctx == "mul" and node[0] in ("mul", "pow"))
    return text if simple else f"({text})"


def render(term: Term) -> str:
    return _render_node(term.node, term.variety)


def normalize(term: Term) -> tuple[int, ...]:
    """Exponent vector of a cs/cm/ag term (signed for ag)."""
    if not term.variety.commutative:
        raise TypeError(f"normalize() does not apply to {term.variety} terms")
    vec = _vector(term.node, term.n)
    if term.variety.kind == "cs" and sum(vec) < 1:
        raise ValueError("semigroup terms have degree at least 1")
    return vec


def _vector(node, n):
    op = node[0]
    if op == "gen":
        v = [0] * n
        v[node[1]] = 1
        return tuple(v)
    if op in ("unit", "zero"):
        return (0,) * n
    if op in ("mul", "add"):
        return tuple(a + b for a, b in zip(_vector(node[1], n), _vector(node[2], n)))
    if op == "pow":
        return tuple(node[2] * a for a in _vector(node[1], n))
    if op == "scale":
        return tuple(node[1] * a for a in _vector(node[2], n))
    if op == "neg":
        return tuple(-a for a in _vector(node[1], n))
    raise ValueError(f"cannot normalize node {op}")


def unary_term(term: Term) -> UTerm:
    if not term.variety.unary:
        raise TypeError(f"{term.variety} terms are not unary")
    syms = []
    node = term.node
    while node[0] == "app":
        syms.append(node[1])
        node = node[2]
    return UTerm(node[1], tuple(syms))


def canonical(term: Term):
    """Internal canonical form: exponent vector or UTerm."""
    return normalize(term) if term.variety.commutative else unary_term(term)


def parse_value(text: str, variety: Variety, n: int):
    return canonical(parse_term(text, variety, n))


def render_value(value, variety: Variety) -> str:
    if variety.commutative:
        if variety.kind == "ag":
            parts = []
            for i, c in enumerate(value):
                if c == 0:
                    continue
                mag = "" if abs(c) == 1 else str(abs(c))
                sign = "-" if c < 0 else "+"
                parts.append((sign, f"{mag}x{i}"))
            if not parts:
                return "0"
            out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
            for sign, body in parts[1:]:
                out += f" {sign} {body}"
            return out
        parts = [f"x{i}" if c == 1 else f"x{i}^{c}" for i, c in enumerate(value) if c]
        return " ".join(parts) if parts else "e"
    text = f"x{value.gen}"
    for s in reversed(value.symbols):
        text = f"f{s}({text})"
    return text


def render_identity(ident: Identity, variety: Variety) -> str:
    return f"{render_value(ident.lhs, variety)} = {render_value(ident.rhs, variety)}"


def parse_identity(text: str, variety: Variety, n: int) -> Identity:
    if text.count("=") != 1:
        raise ParseError("an identity has exactly one '='")
    lhs, rhs = text.split("=")
    return Identity(parse_value(lhs, variety, n), parse_value(rhs, variety, n))


# ---------------------------------------------------------------- encodings
#
# Terms are enumerated by size (total degree, L1 norm, or symbol count), then
# lexicographically; identities pair the two term codes.

def _stars(rem: int, k: int) -> int:
    """Vectors in N^k with coordinate sum exactly rem."""
    if k == 0:
        return 1 if rem == 0 else 0
    return comb(rem + k - 1, k - 1)


def _nat_rank(v) -> int:
    rank, rem = 0, sum(v)
    n = len(v)
    for i in range(n - 1):
        k = n - i - 1
        rank += comb(rem + k, k) - comb(rem - v[i] + k, k)
        rem -= v[i]
    return rank


def _nat_unrank(rank: int, d: int, n: int):
    out, rem = [], d
    for i in range(n - 1):
        k = n - i - 1
        lo, hi = 0, rem
        # largest a with count(values < a) <= rank
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if comb(rem + k, k) - comb(rem - mid + k, k) <= rank:
                lo = mid
            else:
                hi = mid - 1
        rank -= comb(rem + k, k) - comb(rem - lo + k, k)
        out.append(lo)
        rem -= lo
    out.append(rem)
    return tuple(out)


@lru_cache(maxsize=None)
def _ball(k: int, t: int) -> int:
    """Vectors in Z^k with L1 norm at most t."""
    if t < 0:
        return 0
    return sum((1 << j) * comb(k, j) * comb(t, j) for j in range(min(k, t) + 1))


def _sphere(k: int, t: int) -> int:
    return _ball(k, t) - _ball(k, t - 1)


def _band(k: int, rem: int, p: int, q: int) -> int:
    """Sum of _sphere(k, rem - u) for u in [p, q]."""
    if p > q:
        return 0
    return _ball(k, rem - p) - _ball(k, rem - q - 1)


def _int_less(k: int, rem: int, a: int) -> int:
    """Completions with a coordinate value below a (coordinate ranges over [-rem, rem])."""
    if a <= -rem:
        return 0
    if a <= 0:
        return _band(k, rem, 1 - a, rem)
    return _band(k, rem, 1, rem) + _band(k, rem, 0, min(a - 1, rem))


def _int_rank(v) -> int:
    rank, rem = 0, sum(abs(a) for a in v)
    n = len(v)
    for i in range(n):
        k = n - i - 1
        rank += _int_less(k, rem, v[i])
        rem -= abs(v[i])
    return rank


def _int_unrank(rank: int, d: int, n: int):
    out, rem = [], d
    for i in range(n):
        k = n - i - 1
        lo, hi = -rem, rem
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if _int_less(k, rem, mid) <= rank:
                lo = mid
            else:
                hi = mid - 1
        # skip values with no completion (only possible at the last coordinate)
        while _sphere(k, rem - abs(lo)) == 0 or (k == 0 and abs(lo) != rem):
            lo -= 1
        rank -= _int_less(k, rem, lo)
        out.append(lo)
        rem -= abs(lo)
    return tuple(out)


def _least(pred, lo: int) -> int:
    """Least t >= lo with pred(t), for a monotone predicate."""
    hi = max(lo, 1)
    while not pred(hi):
        lo, hi = hi + 1, hi * 2
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def term_code(value, variety: Variety, n: int) -> int:
    kind = variety.kind
    if kind in ("cs", "cm"):
        if len(value) != n or any(a < 0 for a in value):
            raise ValueError(f"bad exponent vector {value} for n={n}")
        d = sum(value)
        if kind == "cs" and d == 0:
            raise ValueError("semigroup terms have degree at least 1")
        below = comb(d - 1 + n, n) if d else 0
        if kind == "cs":
            below -= 1 if d else 0
        return below + _nat_rank(value)
    if kind == "ag":
        if len(value) != n:
            raise ValueError(f"bad vector {value} for n={n}")
        d = sum(abs(a) for a in value)
        return _ball(n, d - 1) + _int_rank(value)
    if kind == "sets":
        if value.symbols or not 0 <= value.gen < n:
            raise ValueError(f"bad set term {value}")
        return value.gen
    m = variety.arity
    if not 0 <= value.gen < n or any(not 1 <= s <= m for s in value.symbols):
        raise ValueError(f"bad unary term {value}")
    s = len(value.symbols)
    below = n * s if m == 1 else n * (m ** s - 1) // (m - 1)
    digits = 0
    for sym in value.symbols:
        digits = digits * m + (sym - 1)
    return below + digits * n + value.gen


def term_decode(code: int, variety: Variety, n: int):
    if code < 0:
        raise ValueError("codes are non-negative")
    kind = variety.kind
    if kind in ("cs", "cm"):
        offset = 1 if kind == "cs" else 0
        d = _least(lambda t: code < comb(t + n, n) - offset, offset)
        start = (comb(d - 1 + n, n) if d else 0) - (1 if kind == "cs" else 0)
        return _nat_unrank(code - start, d, n)
    if kind == "ag":
        d = _least(lambda t: code < _ball(n, t), 0)
        return _int_unrank(code - _ball(n, d - 1), d, n)
    if kind == "sets":
        if code >= n:
            raise UnmappedCode(f"no set term has code {code}")
        return UTerm(code)
    m = variety.arity
    if m == 1:
        s, rest = divmod(code, n)
        return UTerm(rest, (1,) * s)
    if m == 2:
        s = (code // n + 1).bit_length() - 1
        digits, gen = divmod(code - n * ((1 << s) - 1), n)
        bits = bin(digits)[2:].zfill(s) if s else ""
        return UTerm(gen, tuple(1 if b == "0" else 2 for b in bits))
    s, below = 0, 0
    while below + n * m ** s <= code:
        below += n * m ** s
        s += 1
    digits, gen = divmod(code - below, n)
    syms = []
    for _ in range(s):
        digits, r = divmod(digits, m)
        syms.append(r + 1)
    return UTerm(gen, tuple(reversed(syms)))


def encode_identity(ident: Identity, variety: Variety, n: int) -> int:
    if variety.kind == "sets":
        return term_code(ident.lhs, variety, n) * n + term_code(ident.rhs, variety, n)
    return pair(term_code(ident.lhs, variety, n), term_code(ident.rhs, variety, n))


@lru_cache(maxsize=1 << 16)
def decode_identity(code: int, variety: Variety, n: int) -> Identity:
    """Inverse of encode_identity; raises UnmappedCode for set codes past n*n."""
    if variety.kind == "sets":
        if not 0 <= code < n * n:
            raise UnmappedCode(f"code {code} encodes no identity between {n} set generators")
        a, b = divmod(code, n)
        return Identity(UTerm(a), UTerm(b))
    a, b = unpair(code)
    return Identity(term_decode(a, variety, n), term_decode(b, variety, n))


def decode_or_none(code: int, variety: Variety, n: int) -> Identity | None:
    try:
        return decode_identity(code, variety, n)
    except UnmappedCode:
        return None


# ---------------------------------------------------------------- presentations

@dataclass(frozen=True)
class Presentation:
    variety: Variety
    n: int
    relations: tuple[Identity, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("presentations need at least one generator")
        object.__setattr__(self, "relations", tuple(self.relations))
        for r in self.relations:
            _check_value(r.lhs, self.variety, self.n)
            _check_value(r.rhs, self.variety, self.n)

    def nontrivial(self) -> list[Identity]:
        return [r for r in self.relations if not r.is_trivial()]

    def is_free(self) -> bool:
        return not self.nontrivial()

    def with_relations(self, rels) -> "Presentation":
        return Presentation(self.variety, self.n, tuple(rels))


def _check_value(value, variety, n):
    if variety.commutative:
        if not isinstance(value, tuple) or len(value) != n:
            raise ValueError(f"{value!r} is not an exponent vector of length {n}")
        if variety.kind != "ag" and any(a < 0 for a in value):
            raise ValueError(f"negative exponent in {value}")
        if variety.kind == "cs" and sum(value) < 1:
            raise ValueError("semigroup terms have degree at least 1")
    else:
        if not isinstance(value, UTerm) or not 0 <= value.gen < n:
            raise ValueError(f"{value!r} is not a term over {n} generators")
        m = variety.arity if variety.kind == "uf" else 0
        if any(not 1 <= s <= m for s in value.symbols):
            raise ValueError(f"{value!r} uses symbols outside {variety}")


def free(variety: Variety, n: int) -> Presentation:
    return Presentation(variety, n, ())


def merge(p: Presentation, extra) -> Presentation:
    """Presentation with ``extra`` appended; it presents a quotient of ``p``."""
    return Presentation(p.variety, p.n, p.relations + tuple(extra))


# ---------------------------------------------------------------- traces

@dataclass(frozen=True)
class EnumerationTrace:
    """Finite prefix of an enumeration: (stage, code) pairs in order.

    ``stabilized`` asserts that nothing beyond the listed entries will ever be
    enumerated.  For transformer outputs it asserts that the input was complete;
    declared lazy families may still be filled in past the last stage.
    """

    entries: tuple[tuple[int, int], ...] = ()
    stabilized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((int(s), int(c)) for s, c in self.entries))
        last = -1
        for s, c in self.entries:
            if s < last:
                raise ValueError("trace stages must be non-decreasing")
            if s < 0 or c < 0:
                raise ValueError("stages and codes are non-negative")
            last = s

    @classmethod
    def from_codes(cls, codes, stabilized=True, start=0, step=1):
        return cls(tuple((start + i * step, c) for i, c in enumerate(codes)), stabilized)

    @property
    def last_stage(self) -> int:
        return self.entries[-1][0] if self.entries else -1

    def codes_until(self, s: int) -> list[int]:
        return [c for st, c in self.entries if st <= s]

    def elements(self, s: int | None = None) -> frozenset[int]:
        if s is None:
            return frozenset(c for _, c in self.entries)
        return frozenset(self.codes_until(s))

    def new_at(self, s: int) -> list[int]:
        return [c for st, c in self.entries if st == s]

    def complete_at(self, s: int) -> bool:
        return self.stabilized and s >= self.last_stage

    def prefix(self, s: int) -> "EnumerationTrace":
        return EnumerationTrace(tuple(e for e in self.entries if e[0] <= s), False)


def snapshot_at(trace: EnumerationTrace, s: int, variety: Variety, n: int) -> Presentation:
    rels = []
    for code in trace.codes_until(s):
        ident = decode_or_none(code, variety, n)
        if ident is not None:
            rels.append(ident)
    return Presentation(variety, n, tuple(rels))


def trace_of(p: Presentation, stabilized=True, start=0) -> EnumerationTrace:
    """Enumerate the relations of ``p`` one per stage."""
    codes = [encode_identity(r, p.variety, p.n) for r in p.relations]
    return EnumerationTrace.from_codes(codes, stabilized=stabilized, start=start)


# ---------------------------------------------------------------- file formats

def parse_presentation(text: str) -> Presentation:
    variety, n, rels = None, None, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "variety":
                variety = parse_variety(rest)
            elif head == "generators":
                n = int(rest)
                if n < 1:
                    raise ParseError("generator count must be positive")
            elif head == "rel":
                if variety is None or n is None:
                    raise ParseError("'variety' and 'generators' must precede relations")
                rels.append(parse_identity(rest, variety, n))
            else:
                raise ParseError(f"unknown directive {head!r}")
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if variety is None or n is None:
        raise ParseError("missing 'variety' or 'generators' line")
    return Presentation(variety, n, tuple(rels))


def render_presentation(p: Presentation) -> str:
    lines = [f"variety {p.variety.name}", f"generators {p.n}"]
    lines += [f"rel {render_identity(r, p.variety)}" for r in p.relations]
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> EnumerationTrace:
    entries, stabilized = [], False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if stabilized:
            raise ParseError(f"line {lineno}: nothing may follow 'stabilized'")
        if line == "stabilized":
            stabilized = True
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"line {lineno}: expected '<stage> <code>'")
        entries.append((int(parts[0]), int(parts[1])))
    try:
        return EnumerationTrace(tuple(entries), stabilized)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def render_trace(trace: EnumerationTrace) -> str:
    lines = [f"{s} {c}" for s, c in trace.entries]
    if trace.stabilized:
        lines.append("stabilized")
    return "\n".join(lines) + ("\n" if lines else "")
