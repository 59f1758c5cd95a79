"""Computable reductions as stage-driven transformers on enumeration traces.

A transformer sees the codes enumerated at each stage and answers with the
codes it enumerates at that stage.  Output is never retracted.  Transformers
that fill infinite families do so lazily: at stage s they have emitted every
family member whose index is at most s.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import factorial

from .algebra import (AG, CM, CS, SETS, UF, EnumerationTrace, Identity, Presentation,
                      UTerm, Variety, decode_identity, decode_or_none, encode_identity,
                      power, snapshot_at)
from .benchmarks import DIFFER, EQUIVALENT, UNKNOWN, Verdict, shift_of
from .coding import pair, tuple_code, unzigzag
from .invariants import abelian_invariant, index_period, uf1_invariant
from .isochecker import ISOMORPHIC, NON_ISOMORPHIC, decide_iso
from .ordinals import OMEGA, Ordinal, code_of, omega_power, rank_of
from .wordproblem import GroundCongruence


class CappedInput(ValueError):
    """Raised when an input lies beyond a transformer's documented cap."""


class Transformer:
    name = "transformer"
    source = ""
    target = ""
    well_defined = False  # output set depends only on the input set
    lazy = False          # fills an infinite family up to a stage frontier

    def start(self):
        return {}

    def step(self, state, stage: int, new_codes: list[int]) -> list[int]:
        raise NotImplementedError

    def settled(self, code: int, horizon: int) -> bool:
        """Whether ``code`` lies in the window that is final by ``horizon``."""
        return not self.lazy or code <= horizon

    def __repr__(self):
        return f"<{self.name}: {self.source} -> {self.target}>"


def run(transformer: Transformer, trace: EnumerationTrace, horizon: int) -> EnumerationTrace:
    state = transformer.start()
    entries = []
    for stage in range(horizon + 1):
        for code in transformer.step(state, stage, trace.new_at(stage)):
            entries.append((stage, code))
    return EnumerationTrace(tuple(entries), trace.complete_at(horizon))


class _Composite(Transformer):
    def __init__(self, first: Transformer, second: Transformer):
        self.first, self.second = first, second
        self.name = f"{second.name}*{first.name}"
        self.source, self.target = first.source, second.target
        self.well_defined = second.well_defined and (first.well_defined or second.name == "saturate-upward")
        self.lazy = first.lazy or second.lazy

    def start(self):
        return {"a": self.first.start(), "b": self.second.start()}

    def step(self, state, stage, new_codes):
        mid = self.first.step(state["a"], stage, new_codes)
        return self.second.step(state["b"], stage, mid)

    def settled(self, code, horizon):
        return self.second.settled(code, horizon)


def compose(first: Transformer, second: Transformer) -> Transformer:
    """Feed the output of ``first`` into ``second``."""
    return _Composite(first, second)


def _emit_new(state, codes):
    seen = state.setdefault("emitted", set())
    out = []
    for c in codes:
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


# ---------------------------------------------------------------- E_min(alpha) internals

class SaturateUpward(Transformer):
    name = "saturate-upward"
    well_defined = True
    lazy = True

    def __init__(self, alpha=OMEGA):
        self.alpha = alpha
        self.source = self.target = f"emin({alpha})"

    def _limit(self, stage):
        alpha = self.alpha
        if isinstance(alpha, Ordinal) and alpha.is_finite():
            return min(stage, alpha.coefficient(0) - 1)
        return stage

    def step(self, state, stage, new_codes):
        least = state.get("least")
        for c in new_codes:
            r = rank_of(c, self.alpha)
            if least is None or r < least:
                least = r
        state["least"] = least
        out = list(new_codes)
        if least is not None:
            out += [c for c in range(self._limit(stage) + 1) if rank_of(c, self.alpha) > least]
        return _emit_new(state, out)


class EminOrdinal(Transformer):
    name = "emin-ordinal"
    well_defined = True

    def __init__(self, alpha, beta):
        from .ordinals import OMEGA_OMEGA
        if beta is not OMEGA_OMEGA and (alpha is OMEGA_OMEGA or beta < alpha):
            raise ValueError("the target bound must be at least the source bound")
        self.alpha, self.beta = alpha, beta
        self.source, self.target = f"emin({alpha})", f"emin({beta})"

    def step(self, state, stage, new_codes):
        return _emit_new(state, [code_of(rank_of(c, self.alpha), self.beta) for c in new_codes])


# ---------------------------------------------------------------- monogenic

class MonogenicToEmin(Transformer):
    """Emit pair(index, period) of the current snapshot whenever it changes."""

    well_defined = False

    def __init__(self, variety: Variety):
        if variety.kind not in ("cs", "cm"):
            raise ValueError("monogenic reductions start from cs or cm")
        self.variety = variety
        self.name = f"{variety.name}1-to-emin"
        self.source, self.target = f"{variety.name}1", "emin"

    def start(self):
        return {"rels": [], "last": None}

    def step(self, state, stage, new_codes):
        for c in new_codes:
            state["rels"].append(decode_identity(c, self.variety, 1))
        ip = index_period(Presentation(self.variety, 1, tuple(state["rels"])))
        if ip.is_free:
            return []
        code = pair(ip.index, ip.period)
        if code == state["last"]:
            return []
        state["last"] = code
        return [code]


class EminToCs1(Transformer):
    """Input k becomes x^(k+1) = x^(k+2): index k+1, period 1."""

    name = "emin-to-cs1"
    source, target = "emin", "cs1"
    well_defined = True

    def step(self, state, stage, new_codes):
        return _emit_new(state, [encode_identity(Identity((k + 1,), (k + 2,)), CS, 1) for k in new_codes])


# ---------------------------------------------------------------- UF(1)

class Uf1nToEmin(Transformer):
    def __init__(self, n: int):
        self.n = n
        self.bound = omega_power(1, n + 1)
        self.name = "uf1n-to-emin"
        self.source, self.target = f"uf1_{n}", f"emin({self.bound})"

    def start(self):
        return {"rels": [], "last": None}

    def step(self, state, stage, new_codes):
        for c in new_codes:
            state["rels"].append(decode_identity(c, UF(1), self.n))
        inv = uf1_invariant(Presentation(UF(1), self.n, tuple(state["rels"])))
        code = code_of(omega_power(1, inv.infinite_components) + Ordinal.of(inv.icode), self.bound)
        if code == state["last"]:
            return []
        state["last"] = code
        return [code]


class EminToUf1n(Transformer):
    """Least rank w*k + j: x_k gets a tail of length j into a loop, x_i (i > k) become loops."""

    def __init__(self, n: int):
        self.n = n
        self.bound = omega_power(1, n)
        self.name = "emin-to-uf1n"
        self.source, self.target = f"emin({self.bound})", f"uf1_{n}"

    def relations(self, rank: Ordinal) -> list[Identity]:
        k, j = rank.coefficient(1), rank.coefficient(0)
        rels = [Identity(power(k, j + 1), power(k, j))]
        rels += [Identity(power(i, 1), power(i, 0)) for i in range(k + 1, self.n)]
        return rels

    def step(self, state, stage, new_codes):
        out = []
        for c in new_codes:
            r = rank_of(c, self.bound)
            if state.get("least") is None or r < state["least"]:
                state["least"] = r
                out += [encode_identity(x, UF(1), self.n) for x in self.relations(r)]
        return _emit_new(state, out)


# ---------------------------------------------------------------- abelian groups

FACTORIAL_CAP = 10


def torsion_code(factors, n: int) -> int:
    """Tuple code of the invariant factors read from the largest down, minus one, padded to n."""
    top_down = [k - 1 for k in reversed(factors)]
    return tuple_code(top_down + [0] * (n - len(top_down)))


class AgnToEmin(Transformer):
    def __init__(self, n: int):
        self.n = n
        self.bound = omega_power(1, n + 1)
        self.name = "agn-to-emin"
        self.source, self.target = f"ag{n}", f"emin({self.bound})"

    def start(self):
        return {"rels": [], "last": None}

    def step(self, state, stage, new_codes):
        for c in new_codes:
            state["rels"].append(decode_identity(c, AG, self.n))
        t = abelian_invariant(Presentation(AG, self.n, tuple(state["rels"])))
        code = code_of(omega_power(1, t.free_rank) + Ordinal.of(torsion_code(t.factors, self.n)), self.bound)
        if code == state["last"]:
            return []
        state["last"] = code
        return [code]


class EminToAgn(Transformer):
    """Least rank w*i + k: Z^i + Z/(k+1)!, with x_j = 0 above i."""

    def __init__(self, n: int):
        self.n = n
        self.bound = omega_power(1, n)
        self.name = "emin-to-agn"
        self.source, self.target = f"emin({self.bound})", f"ag{n}"

    def relations(self, rank: Ordinal) -> list[Identity]:
        i, k = rank.coefficient(1), rank.coefficient(0)
        if k > FACTORIAL_CAP:
            raise CappedInput(f"finite part {k} exceeds the factorial cap {FACTORIAL_CAP}")
        zero = (0,) * self.n
        torsion = tuple(factorial(k + 1) if j == i else 0 for j in range(self.n))
        rels = [Identity(torsion, zero)]
        rels += [Identity(tuple(int(j == m) for j in range(self.n)), zero) for m in range(i + 1, self.n)]
        return rels

    def step(self, state, stage, new_codes):
        out = []
        for c in new_codes:
            r = rank_of(c, self.bound)
            if state.get("least") is None or r < state["least"]:
                state["least"] = r
                out += [encode_identity(x, AG, self.n) for x in self.relations(r)]
        return _emit_new(state, out)


# ---------------------------------------------------------------- E_min(w^n) into CS_n

class EminOmegaNToCsn(Transformer):
    """Coding equation x0^(c0+1) x^c = x0^(c0+2) x^c for the least element, plus
    deletions x0 x^k = x0^2 x^k for every higher pattern k, emitted lazily."""

    lazy = True

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("this reduction needs at least two generators")
        self.n = n
        self.bound = omega_power(n)
        self.name = "emin-omegan-to-csn"
        self.source, self.target = f"emin({self.bound})", f"cs{n}"

    def coding_equation(self, coeffs) -> Identity:
        lhs = (coeffs[0] + 1,) + tuple(coeffs[1:])
        rhs = (coeffs[0] + 2,) + tuple(coeffs[1:])
        return Identity(lhs, rhs)

    def deletion(self, pattern) -> Identity:
        return Identity((1,) + tuple(pattern), (2,) + tuple(pattern))

    def step(self, state, stage, new_codes):
        out = []
        for c in new_codes:
            r = rank_of(c, self.bound)
            if state.get("least") is None or r < state["least"]:
                state["least"] = r
                out.append(self.coding_equation(r.coefficients(self.n)))
        least = state.get("least")
        if least is not None:
            high = tuple(reversed(least.coefficients(self.n)[1:]))
            for pattern in product(range(stage + 1), repeat=self.n - 1):
                if tuple(reversed(pattern)) > high:
                    out.append(self.deletion(pattern))
        return _emit_new(state, [encode_identity(x, CS, self.n) for x in out])

    def settled(self, code, horizon):
        return True


# ---------------------------------------------------------------- semigroups and monoids

class CsnToCmn(Transformer):
    name = "csn-to-cmn"
    well_defined = True

    def __init__(self, n: int):
        self.n = n
        self.source, self.target = f"cs{n}", f"cm{n}"

    def step(self, state, stage, new_codes):
        return _emit_new(state, [encode_identity(decode_identity(c, CS, self.n), CM, self.n) for c in new_codes])


class CmnToCsn1(Transformer):
    """The extra generator x_n plays the unit; unit relations come first."""

    name = "cmn-to-csn1"
    well_defined = True

    def __init__(self, n: int):
        self.n = n
        self.source, self.target = f"cm{n}", f"cs{n + 1}"

    def embed(self, v):
        return tuple(v) + (0,) if any(v) else tuple(int(i == self.n) for i in range(self.n + 1))

    def unit_relations(self) -> list[Identity]:
        m = self.n + 1
        unit = tuple(int(i == self.n) for i in range(m))
        rels = []
        for i in range(m):
            gen = tuple(int(j == i) for j in range(m))
            rels.append(Identity(tuple(a + b for a, b in zip(unit, gen)), gen))
        return rels

    def step(self, state, stage, new_codes):
        out = []
        if not state.get("started"):
            state["started"] = True
            out += [encode_identity(r, CS, self.n + 1) for r in self.unit_relations()]
        for c in new_codes:
            r = decode_identity(c, CM, self.n)
            out.append(encode_identity(Identity(self.embed(r.lhs), self.embed(r.rhs)), CS, self.n + 1))
        return _emit_new(state, out)


# ---------------------------------------------------------------- least relation

class S2ToAny(Transformer):
    """Nothing until x0 = x1 shows up; then every identity of the target, lazily."""

    name = "s2-to-any"
    well_defined = True
    lazy = True

    def __init__(self, variety: Variety, n: int = 1):
        self.variety, self.n = variety, n
        self.source, self.target = "sets2", f"{variety.name}{n}"
        self.trigger = {encode_identity(Identity(UTerm(0), UTerm(1)), SETS, 2),
                        encode_identity(Identity(UTerm(1), UTerm(0)), SETS, 2)}

    def step(self, state, stage, new_codes):
        if any(c in self.trigger for c in new_codes):
            state["on"] = True
        if not state.get("on"):
            return []
        limit = stage if self.variety.kind != "sets" else min(stage, self.n * self.n - 1)
        return _emit_new(state, range(limit + 1))


# ---------------------------------------------------------------- shifts into UF(2)

F, G = 1, 2


def a_term(i: int) -> UTerm:
    """a_i: (f f)^i a for i >= 0 and (g g)^(-i) a below zero."""
    return UTerm(0, (F, F) * i if i >= 0 else (G, G) * (-i))


def skeleton_relations(i: int) -> list[Identity]:
    a = a_term(i)
    rels = []
    if i < 0:
        rels.append(Identity(a.apply(F, F), a_term(i + 1)))
    if i > 0:
        rels.append(Identity(a.apply(G, G), a_term(i - 1)))
    b1 = a.apply(G, F)          # g(b_i), b_i = f(a_i)
    b2 = b1.apply(F)
    rels += [Identity(b1.apply(G), b2), Identity(b2.apply(F), b2), Identity(b2.apply(G), b2)]
    c1 = a.apply(F, G)          # f(c_i), c_i = g(a_i)
    c2 = c1.apply(F)
    rels += [Identity(c1.apply(G), c2), Identity(c2.apply(F), c2), Identity(c2.apply(G), c2)]
    return rels


def collapse_relations(z: int) -> list[Identity]:
    a = a_term(z)
    b1, c1 = a.apply(G, F), a.apply(F, G)
    return [Identity(b1, b1.apply(F)), Identity(c1, c1.apply(F))]


class UToUf21(Transformer):
    name = "u-to-uf21"
    source, target = "u", "uf2_1"
    well_defined = True
    lazy = True

    def step(self, state, stage, new_codes):
        out = []
        done = state.setdefault("positions", set())
        for i in sorted({stage, -stage} - done):
            done.add(i)
            out += skeleton_relations(i)
        for c in new_codes:
            out += collapse_relations(unzigzag(c))
        return _emit_new(state, [encode_identity(r, UF(2), 1) for r in out])

    def settled(self, code, horizon):
        return True


def collapse_positions(p: Presentation, window: int) -> frozenset[int]:
    """Positions i in [-window, window] where g f(a_i) is a fixed point of f, read off
    the presented algebra with the congruence-closure decider."""
    queries = []
    for i in range(-window, window + 1):
        b1 = a_term(i).apply(G, F)
        queries += [b1, b1.apply(F)]
    closure = GroundCongruence(p, queries)
    return frozenset(i for i in range(-window, window + 1)
                     if closure.equal(a_term(i).apply(G, F), a_term(i).apply(F, G, F)))


# ---------------------------------------------------------------- registry construction

def column_code(column: int, row: int) -> int:
    return pair(column, row)


def invariant_for(variety: Variety, n: int):
    if variety.kind == "ag":
        return lambda rels: abelian_invariant(Presentation(AG, n, tuple(rels)))
    if variety.kind == "uf" and variety.arity == 1:
        return lambda rels: uf1_invariant(Presentation(UF(1), n, tuple(rels)))
    raise ValueError(f"no complete invariant for {variety}")


def accfg_to_eqce(variety: Variety, registry, horizon: int) -> list[EnumerationTrace]:
    """Column construction over a finite registry of (generator count, trace) entries.

    Member p always receives its own column.  Whenever members q and r are
    isomorphic at a stage, everything q has collected so far flows into r.
    """
    members = list(registry)
    invs = [invariant_for(variety, n) for n, _ in members]
    outputs = [set() for _ in members]
    entries = [[] for _ in members]
    for s in range(horizon + 1):
        stage_inv = []
        for (n, trace), inv in zip(members, invs):
            rels = [decode_identity(c, variety, n) for c in trace.codes_until(s)]
            stage_inv.append((n, inv(rels)) if variety.kind == "uf" else inv(rels))
        for p in range(len(members)):
            code = column_code(p, s)
            if code not in outputs[p]:
                outputs[p].add(code)
                entries[p].append((s, code))
        changed = True
        while changed:
            changed = False
            for q in range(len(members)):
                for r in range(len(members)):
                    if q != r and _same_type(variety, stage_inv[q], stage_inv[r]):
                        missing = outputs[q] - outputs[r]
                        if missing:
                            outputs[r] |= missing
                            entries[r].extend((s, c) for c in sorted(missing))
                            changed = True
    done = all(t.complete_at(horizon) for _, t in members)
    return [EnumerationTrace(tuple(e), done) for e in entries]


def _same_type(variety, a, b) -> bool:
    if variety.kind == "uf":
        return a[1] == b[1]
    return a == b


def ag_surjects(a, b) -> bool:
    """Whether an abelian group of type ``a`` maps onto one of type ``b``.

    Cyclic factors are listed with Z as 0 on top; aligned from the top, every
    factor of b must divide the matching factor of a.
    """
    fa = list(a.factors) + [0] * a.free_rank
    fb = list(b.factors) + [0] * b.free_rank
    if len(fb) > len(fa):
        return False
    for x, y in zip(reversed(fa), reversed(fb)):
        if (y == 0 and x != 0) or (y != 0 and x % y):
            return False
    return True


def uf1_surjects(p: Presentation, q: Presentation, depth: int = 3) -> bool:
    """Bounded search for a homomorphism from p onto q."""
    from .wordproblem import UnaryAlgebra
    target = UnaryAlgebra(q)
    cands = [power(g, k) for g in range(q.n) for k in range(depth + 1)]
    for images in product(cands, repeat=p.n):
        def img(t):
            base = images[t.gen]
            return UTerm(base.gen, t.symbols + base.symbols)
        if not all(target.equal(img(r.lhs), img(r.rhs)) for r in p.nontrivial()):
            continue
        hit = {target.locate(img(power(g, k))) for g in range(p.n) for k in range(depth + 1)}
        if all(target.locate(power(h, 0)) in hit for h in range(q.n)):
            return True
    return False


def registry_qualifies(variety: Variety, presentations) -> bool:
    """No two non-isomorphic members map onto each other in both directions."""
    for i, p in enumerate(presentations):
        for q in presentations[i + 1:]:
            if decide_iso(p, q).kind == ISOMORPHIC:
                continue
            if variety.kind == "ag":
                both = ag_surjects(abelian_invariant(p), abelian_invariant(q)) and \
                    ag_surjects(abelian_invariant(q), abelian_invariant(p))
            else:
                both = uf1_surjects(p, q) and uf1_surjects(q, p)
            if both:
                return False
    return True


# ---------------------------------------------------------------- verification harness

@dataclass
class PairRecord:
    pair_id: int
    source: Verdict
    target: Verdict
    status: str

    def line(self) -> str:
        return f"{self.pair_id}, {self.source.kind}, {self.target.kind}, {self.status}"


@dataclass
class Report:
    name: str
    records: list = field(default_factory=list)

    def count(self, status) -> int:
        return sum(r.status == status for r in self.records)

    @property
    def agree(self):
        return self.count("agree")

    @property
    def disagree(self):
        return self.count("disagree")

    @property
    def inconclusive(self):
        return self.count("inconclusive")

    def lines(self) -> list[str]:
        head = f"# {self.name}: agree={self.agree} disagree={self.disagree} inconclusive={self.inconclusive}"
        return [head] + [r.line() for r in self.records]


def _status(a: Verdict, b: Verdict) -> str:
    if not (a.final and b.final) or UNKNOWN in (a.kind, b.kind):
        return "inconclusive"
    return "agree" if a.kind == b.kind else "disagree"


def check_reduction(red: Transformer, source_rel, target_rel, pairs, horizon: int) -> Report:
    """Run ``red`` on each pair and compare source and target verdicts at the horizon."""
    report = Report(red.name)
    for k, (t1, t2) in enumerate(pairs):
        src = source_rel(t1, t2, horizon)
        o1, o2 = run(red, t1, horizon), run(red, t2, horizon)
        tgt = target_rel(o1, o2, horizon)
        report.records.append(PairRecord(k, src, tgt, _status(src, tgt)))
    return report


def check_monotone(red: Transformer, chains, horizon: int) -> Report:
    """Output inclusion at the horizon for input pairs with W1 contained in W2."""
    report = Report(f"monotone {red.name}")
    for k, (t1, t2) in enumerate(chains):
        o1 = {c for c in run(red, t1, horizon).elements() if red.settled(c, horizon)}
        o2 = {c for c in run(red, t2, horizon).elements() if red.settled(c, horizon)}
        ok = o1 <= o2
        v = Verdict(EQUIVALENT if ok else DIFFER, None if ok else min(o1 - o2), True)
        report.records.append(PairRecord(k, v, v, "agree" if ok else "disagree"))
    return report


def iso_relation(variety: Variety, n: int, **bounds):
    """Evaluator: isomorphism of the presented algebras, decided once both traces are complete."""
    def evaluate(t1, t2, s):
        if not (t1.complete_at(s) and t2.complete_at(s)):
            return Verdict(UNKNOWN, "incomplete")
        v = decide_iso(snapshot_at(t1, s, variety, n), snapshot_at(t2, s, variety, n), **bounds)
        if v.kind == ISOMORPHIC:
            return Verdict(EQUIVALENT, v.reason, True)
        if v.kind == NON_ISOMORPHIC:
            return Verdict(DIFFER, v.reason, True)
        return Verdict(UNKNOWN, v.reason)
    return evaluate


def shift_structure_relation(window: int):
    """Evaluator for outputs of u-to-uf21: read collapse positions, compare up to shift."""
    def evaluate(t1, t2, s):
        if not (t1.complete_at(s) and t2.complete_at(s)):
            return Verdict(UNKNOWN, "incomplete")
        z1 = collapse_positions(snapshot_at(t1, s, UF(2), 1), window)
        z2 = collapse_positions(snapshot_at(t2, s, UF(2), 1), window)
        x = shift_of(z1, z2)
        return Verdict(DIFFER, (sorted(z1), sorted(z2)), True) if x is None else Verdict(EQUIVALENT, x, True)
    return evaluate


class ConstantTransformer(Transformer):
    """Negative control: ignores its input."""

    name = "constant"

    def __init__(self, code: int = 0):
        self.code = code

    def step(self, state, stage, new_codes):
        return _emit_new(state, [self.code])


# ---------------------------------------------------------------- name registry

def _saturated(inner: Transformer, bound) -> Transformer:
    return compose(inner, SaturateUpward(bound))


REGISTRY = {
    "saturate-upward": lambda n: SaturateUpward(OMEGA),
    "cs1-to-emin": lambda n: MonogenicToEmin(CS),
    "cm1-to-emin": lambda n: MonogenicToEmin(CM),
    "cs1-to-emin-saturated": lambda n: _saturated(MonogenicToEmin(CS), OMEGA),
    "cm1-to-emin-saturated": lambda n: _saturated(MonogenicToEmin(CM), OMEGA),
    "emin-to-cs1": lambda n: EminToCs1(),
    "emin-ordinal": lambda n: EminOrdinal(omega_power(1, n), omega_power(n)),
    "uf1n-to-emin": lambda n: Uf1nToEmin(n),
    "uf1n-to-emin-saturated": lambda n: _saturated(Uf1nToEmin(n), omega_power(1, n + 1)),
    "emin-to-uf1n": lambda n: EminToUf1n(n),
    "agn-to-emin": lambda n: AgnToEmin(n),
    "agn-to-emin-saturated": lambda n: _saturated(AgnToEmin(n), omega_power(1, n + 1)),
    "emin-to-agn": lambda n: EminToAgn(n),
    "emin-omegan-to-csn": lambda n: EminOmegaNToCsn(n),
    "csn-to-cmn": lambda n: CsnToCmn(n),
    "cmn-to-csn1": lambda n: CmnToCsn1(n),
    "s2-to-any": lambda n: S2ToAny(CS, n),
    "u-to-uf21": lambda n: UToUf21(),
    "constant": lambda n: ConstantTransformer(),
}


def build(name: str, n: int = 2) -> Transformer:
    """Instantiate a registered transformer; ``n`` is the generator count where one applies."""
    try:
        factory = REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown reduction {name!r}; registered: {', '.join(sorted(REGISTRY))}") from None
    return factory(n)
