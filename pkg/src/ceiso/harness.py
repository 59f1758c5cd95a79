"""Seeded random suites: instance generators, reduction checks and the acceptance runs.

Every suite takes a seed and a :class:`SuiteConfig` and returns a
:class:`SuiteResult` whose report lines are byte-identical across runs.
Wall-clock time is kept on the result object and never written into reports.
"""
from __future__ import annotations

import random
import time
from itertools import product
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from .algebra import (AG, CM, CS, SETS, UF, EnumerationTrace, Identity, Presentation, UTerm,
                      encode_identity, merge, parse_presentation, power, trace_of)
from .benchmarks import DIFFER, EQUIVALENT, UNKNOWN, Verdict, eval_emin_alpha, eval_shift
from .coding import zigzag
from .invariants import (UpwardClosedSet, abelian_invariant, gamma, index_period,
                         index_period_leq, uf1_invariant)
from .isochecker import (ISOMORPHIC, NON_ISOMORPHIC, bounded_iso_search, check_witness,
                         decide_iso, finite_oracle, uf1_saturation_oracle)
from .ordinals import OMEGA, Ordinal, code_of, omega_power
from .reductions import (AgnToEmin, CmnToCsn1, CsnToCmn, EminOmegaNToCsn, EminOrdinal,
                         EminToAgn, EminToCs1, EminToUf1n, MonogenicToEmin, Report, S2ToAny,
                         SaturateUpward, Uf1nToEmin, UToUf21, accfg_to_eqce, check_monotone,
                         check_reduction, compose, iso_relation, registry_qualifies,
                         shift_structure_relation, torsion_code, FACTORIAL_CAP)
from .wordproblem import implies, smith_normal_form


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    horizon: int = 64
    box: int = 8
    degree: int = 3
    derivation: int = 6
    shift_bound: int | None = None
    pairs: int | None = None  # overrides each suite's default count

    def __post_init__(self):
        for name in ("horizon", "box", "degree", "derivation"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.shift_bound is not None and self.shift_bound < 0:
            raise ValueError("shift bound must be non-negative")
        if self.pairs is not None and self.pairs < 0:
            raise ValueError("pair count must be non-negative")

    def count(self, default: int) -> int:
        return default if self.pairs is None else self.pairs


@dataclass
class SuiteResult:
    name: str
    passed: bool
    summary: str
    lines: list = field(default_factory=list)
    seconds: float = 0.0

    def status_line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.summary}"


# ---------------------------------------------------------------- instance generators

def emin_rank(rng: random.Random, alpha) -> Ordinal:
    """A random rank below ``alpha`` from a small window near zero."""
    if alpha == OMEGA:
        return Ordinal.of(rng.randint(0, 20))
    if alpha.coefficient(1) and alpha.degree == 1:  # omega * n
        return omega_power(1, rng.randrange(alpha.coefficient(1))) + Ordinal.of(rng.randint(0, 4))
    return Ordinal.from_coefficients([rng.randint(0, 3) for _ in range(alpha.degree)])


def emin_trace(rng, ranks, alpha) -> EnumerationTrace:
    codes = [code_of(r, alpha) for r in ranks]
    rng.shuffle(codes)
    return EnumerationTrace.from_codes(codes, True, rng.randint(0, 3), rng.randint(1, 3))


def emin_pair(rng, alpha):
    """Two stabilized traces; about half share their least rank."""
    first = [emin_rank(rng, alpha) for _ in range(rng.randint(0, 4))]
    if rng.random() < 0.5:
        second = ([min(first)] + [r for r in (emin_rank(rng, alpha) for _ in range(3)) if r > min(first)]
                  if first else [])
    else:
        second = [emin_rank(rng, alpha) for _ in range(rng.randint(0, 4))]
    return emin_trace(rng, first, alpha), emin_trace(rng, second, alpha)


def random_monogenic(rng, variety, rels=None) -> Presentation:
    lo = 1 if variety.kind == "cs" else 0
    out = []
    for _ in range(rng.randint(0, 2) if rels is None else rels):
        a = rng.randint(lo, 5)
        out.append(Identity((a,), (a + rng.randint(1, 5),)))
    return Presentation(variety, 1, tuple(out))


def random_uf1(rng, n, rels=None) -> Presentation:
    out = []
    for _ in range(rng.randint(0, 3) if rels is None else rels):
        out.append(Identity(power(rng.randrange(n), rng.randint(0, 3)), power(rng.randrange(n), rng.randint(0, 3))))
    return Presentation(UF(1), n, tuple(out))


def random_ag(rng, n, rels=None, entries=6) -> Presentation:
    out = []
    zero = (0,) * n
    for _ in range(rng.randint(0, n) if rels is None else rels):
        out.append(Identity(tuple(rng.randint(-entries, entries) for _ in range(n)), zero))
    return Presentation(AG, n, tuple(out))


def random_cs(rng, variety, n, rels=None, top=3) -> Presentation:
    lo = 1 if variety.kind == "cs" else 0

    def mono():
        while True:
            v = tuple(rng.randint(0, 2) for _ in range(n))
            if lo <= sum(v) <= top:
                return v
    out = [Identity(mono(), mono()) for _ in range(rng.randint(1, 2) if rels is None else rels)]
    return Presentation(variety, n, tuple(out))


def _implied(rng, p: Presentation) -> list[Identity]:
    """A consequence of one relation: multiply through, apply the symbol, or scale."""
    rels = p.nontrivial()
    if not rels:
        return []
    r = rng.choice(rels)
    k = p.variety.kind
    if k == "uf":
        return [Identity(r.lhs.apply(1), r.rhs.apply(1))]
    if k == "ag":
        c = rng.choice((-2, 2, 3))
        return [Identity(tuple(c * (a - b) for a, b in zip(r.lhs, r.rhs)), (0,) * p.n)]
    m = tuple(rng.randint(0, 1) for _ in range(p.n))
    if not any(m):
        m = (1,) + (0,) * (p.n - 1)
    return [Identity(tuple(a + b for a, b in zip(r.lhs, m)), tuple(a + b for a, b in zip(r.rhs, m)))]


def _relabel(rng, p: Presentation) -> Presentation:
    """An isomorphic copy: permuted generators, shuffled and augmented relations,
    and for abelian groups a unimodular change of basis."""
    n = p.n
    perm = list(range(n))
    rng.shuffle(perm)
    rels = list(p.relations) + _implied(rng, p)
    out = []
    for r in rels:
        if p.variety.kind == "uf":
            out.append(Identity(UTerm(perm[r.lhs.gen], r.lhs.symbols), UTerm(perm[r.rhs.gen], r.rhs.symbols)))
        else:
            lhs, rhs = [0] * n, [0] * n
            for i in range(n):
                lhs[perm[i]], rhs[perm[i]] = r.lhs[i], r.rhs[i]
            out.append(Identity(tuple(lhs), tuple(rhs)))
    if p.variety.kind == "ag" and n > 1:
        # substitute x_i -> x_i + t x_j: a relation row v becomes v with column j += t * column i
        i, j = rng.sample(range(n), 2)
        t = rng.choice((-1, 1))
        mixed = []
        for r in out:
            v = [a - b for a, b in zip(r.lhs, r.rhs)]
            v[j] += t * v[i]
            mixed.append(Identity(tuple(v), (0,) * n))
        out = mixed
    rng.shuffle(out)
    return Presentation(p.variety, n, tuple(out))


def presentation_pair(rng, make):
    """``make(rng)`` draws a presentation; half the partners are relabelled copies."""
    p = make(rng)
    q = _relabel(rng, p) if rng.random() < 0.5 else make(rng)
    return p, q


def as_traces(rng, p, q):
    return trace_of(p, True, rng.randint(0, 3)), trace_of(q, True, rng.randint(0, 3))


def sets2_pair(rng):
    collapse = Identity(UTerm(0), UTerm(1))

    def make():
        return Presentation(SETS, 2, (collapse,) if rng.random() < 0.5 else ())
    return make(), make()


def int_set(rng, size=None, spread=6) -> frozenset:
    return frozenset(rng.randint(-spread, spread) for _ in range(rng.randint(0, 4) if size is None else size))


def shift_pair(rng):
    """Finite subsets of Z; half of the partners are shifts."""
    a = int_set(rng)
    if rng.random() < 0.5:
        x = rng.randint(-4, 4)
        b = frozenset(z + x for z in a)
    else:
        b = int_set(rng, len(a) if rng.random() < 0.7 else None)
    return a, b


def int_trace(rng, values) -> EnumerationTrace:
    codes = [zigzag(z) for z in values]
    rng.shuffle(codes)
    return EnumerationTrace.from_codes(codes, True, rng.randint(0, 3))


# ---------------------------------------------------------------- reduction suites

def _emin_rel(alpha):
    return lambda t1, t2, s: eval_emin_alpha(alpha, t1, t2, s)


def _iso(cfg, variety, n):
    return iso_relation(variety, n, degree=cfg.degree, derivation=cfg.derivation, box=cfg.box)


def _class_pairs(rng, count, make):
    return [as_traces(rng, *presentation_pair(rng, make)) for _ in range(count)]


def reduction_suites(cfg: SuiteConfig):
    """name -> (transformer, source relation, target relation, pair factory)."""
    w2, w3 = omega_power(1, 2), omega_power(1, 3)
    sq2 = omega_power(2)
    u_window = 12
    return {
        "saturate-upward": (SaturateUpward(OMEGA), _emin_rel(OMEGA), _emin_rel(OMEGA),
                            lambda rng, k: [emin_pair(rng, OMEGA) for _ in range(k)]),
        "cs1-to-emin": (compose(MonogenicToEmin(CS), SaturateUpward(OMEGA)), _iso(cfg, CS, 1), _emin_rel(OMEGA),
                        lambda rng, k: _class_pairs(rng, k, lambda r: random_monogenic(r, CS))),
        "cm1-to-emin": (compose(MonogenicToEmin(CM), SaturateUpward(OMEGA)), _iso(cfg, CM, 1), _emin_rel(OMEGA),
                        lambda rng, k: _class_pairs(rng, k, lambda r: random_monogenic(r, CM))),
        "emin-to-cs1": (EminToCs1(), _emin_rel(OMEGA), _iso(cfg, CS, 1),
                        lambda rng, k: [emin_pair(rng, OMEGA) for _ in range(k)]),
        "emin-ordinal": (EminOrdinal(w2, sq2), _emin_rel(w2), _emin_rel(sq2),
                         lambda rng, k: [emin_pair(rng, w2) for _ in range(k)]),
        "uf1n-to-emin": (Uf1nToEmin(2), _iso(cfg, UF(1), 2), _emin_rel(w3),
                         lambda rng, k: _class_pairs(rng, k, lambda r: random_uf1(r, 2))),
        "emin-to-uf1n": (EminToUf1n(2), _emin_rel(w2), _iso(cfg, UF(1), 2),
                         lambda rng, k: [emin_pair(rng, w2) for _ in range(k)]),
        "agn-to-emin": (AgnToEmin(2), _iso(cfg, AG, 2), _emin_rel(w3),
                        lambda rng, k: _class_pairs(rng, k, lambda r: random_ag(r, 2))),
        "emin-to-agn": (EminToAgn(2), _emin_rel(w2), _iso(cfg, AG, 2),
                        lambda rng, k: [emin_pair(rng, w2) for _ in range(k)]),
        "emin-omegan-to-csn": (EminOmegaNToCsn(2), _emin_rel(sq2), _iso(cfg, CS, 2),
                               lambda rng, k: [emin_pair(rng, sq2) for _ in range(k)]),
        "csn-to-cmn": (CsnToCmn(2), _iso(cfg, CS, 2), _iso(cfg, CM, 2),
                       lambda rng, k: _class_pairs(rng, k, lambda r: random_cs(r, CS, 2))),
        "cmn-to-csn1": (CmnToCsn1(1), _iso(cfg, CM, 1), _iso(cfg, CS, 2),
                        lambda rng, k: _class_pairs(rng, k, lambda r: random_monogenic(r, CM))),
        "s2-to-any": (S2ToAny(CS, 1), _iso(cfg, SETS, 2), _iso(cfg, CS, 1),
                      lambda rng, k: [as_traces(rng, *sets2_pair(rng)) for _ in range(k)]),
        "u-to-uf21": (UToUf21(), lambda t1, t2, s: eval_shift(t1, t2, s, cfg.shift_bound),
                      shift_structure_relation(u_window),
                      lambda rng, k: [tuple(int_trace(rng, v) for v in shift_pair(rng)) for _ in range(k)]),
    }


def run_reduction_suite(name: str, cfg: SuiteConfig, count: int = 200) -> tuple[Report, float]:
    red, src, tgt, make = reduction_suites(cfg)[name]
    rng = random.Random(f"{cfg.seed}:{name}")
    pairs = make(rng, cfg.count(count))
    t0 = time.perf_counter()
    report = check_reduction(red, src, tgt, pairs, cfg.horizon)
    return report, time.perf_counter() - t0


# ---------------------------------------------------------------- inclusion chains

def _superset(rng, relations, extra):
    rels = list(relations) + list(extra)
    rng.shuffle(rels)
    return rels


def inclusion_chain(rng, kind: str):
    """Two stabilized traces over the same code space with W1 contained in W2."""
    if kind == "emin":
        a = [emin_rank(rng, OMEGA) for _ in range(rng.randint(0, 3))]
        b = _superset(rng, a, [emin_rank(rng, OMEGA) for _ in range(rng.randint(0, 3))])
        return emin_trace(rng, a, OMEGA), emin_trace(rng, b, OMEGA)
    if kind == "emin-w2":
        w2 = omega_power(1, 2)
        a = [emin_rank(rng, w2) for _ in range(rng.randint(0, 3))]
        b = _superset(rng, a, [emin_rank(rng, w2) for _ in range(rng.randint(0, 3))])
        return emin_trace(rng, a, w2), emin_trace(rng, b, w2)
    if kind == "u":
        a = int_set(rng)
        b = a | int_set(rng)
        return int_trace(rng, a), int_trace(rng, b)
    makers = {
        "cs1": lambda r, k: random_monogenic(r, CS, k),
        "cm1": lambda r, k: random_monogenic(r, CM, k),
        "uf1_2": lambda r, k: random_uf1(r, 2, k),
        "ag2": lambda r, k: random_ag(r, 2, k),
        "cs2": lambda r, k: random_cs(r, CS, 2, k),
        "sets2": lambda r, k: Presentation(SETS, 2, tuple(
            Identity(UTerm(r.randrange(2)), UTerm(r.randrange(2))) for _ in range(k))),
    }
    small = makers[kind](rng, rng.randint(0, 2))
    extra = makers[kind](rng, rng.randint(0, 2)).relations
    big = small.with_relations(_superset(rng, small.relations, extra))
    return trace_of(small, True, rng.randint(0, 3)), trace_of(big, True, rng.randint(0, 3))


def monotone_suites():
    """Every transformer declared well-defined on c.e. sets, with its chain kind."""
    w3 = omega_power(1, 3)
    items = {
        "saturate-upward": (SaturateUpward(OMEGA), "emin"),
        "cs1-to-emin-saturated": (compose(MonogenicToEmin(CS), SaturateUpward(OMEGA)), "cs1"),
        "cm1-to-emin-saturated": (compose(MonogenicToEmin(CM), SaturateUpward(OMEGA)), "cm1"),
        "uf1n-to-emin-saturated": (compose(Uf1nToEmin(2), SaturateUpward(w3)), "uf1_2"),
        "agn-to-emin-saturated": (compose(AgnToEmin(2), SaturateUpward(w3)), "ag2"),
        "emin-to-cs1": (EminToCs1(), "emin"),
        "emin-ordinal": (EminOrdinal(omega_power(1, 2), omega_power(2)), "emin-w2"),
        "csn-to-cmn": (CsnToCmn(2), "cs2"),
        "cmn-to-csn1": (CmnToCsn1(1), "cm1"),
        "s2-to-any": (S2ToAny(CS, 1), "sets2"),
        "u-to-uf21": (UToUf21(), "u"),
    }
    for red, _ in items.values():
        assert red.well_defined, red
    return items


# ---------------------------------------------------------------- acceptance criteria

def _result(name, ok, summary, lines, t0) -> SuiteResult:
    return SuiteResult(name, ok, summary, lines, time.perf_counter() - t0)


EXAMPLE_P = """variety cs
generators 2
rel x0 = x0^2 x1^2
"""
EXAMPLE_Q = """variety cs
generators 2
rel x0 = x0^2 x1^3
"""


def criterion_witness(cfg: SuiteConfig) -> SuiteResult:
    t0 = time.perf_counter()
    p, q = parse_presentation(EXAMPLE_P), parse_presentation(EXAMPLE_Q)
    v = bounded_iso_search(p, q, cfg.degree, cfg.derivation)
    elapsed = time.perf_counter() - t0
    ok = v.kind == ISOMORPHIC and elapsed < 1.0
    recheck = ok and check_witness(p, q, v.witness[0], v.witness[1], cfg.derivation + 4)
    ok = bool(recheck)
    lines = [f"verdict {v.kind}", f"witness {v.witness}", f"recheck {recheck}"]
    return _result("witness-regression", ok, f"{v.kind} witness={v.witness}", lines, t0)


def _oracle_pairs(rng, count, make):
    return [presentation_pair(rng, make) for _ in range(count)]


def criterion_oracles(cfg: SuiteConfig, count: int = 500) -> SuiteResult:
    # the abelian boxes shrink with the generator count: box volume grows like size^n
    t0 = time.perf_counter()
    rng = random.Random(f"{cfg.seed}:oracles")
    count = cfg.count(count)
    classes = [
        ("monogenic-cs", lambda r: random_monogenic(r, CS), lambda p, q: finite_oracle(p, q, cfg.box)),
        ("monogenic-cm", lambda r: random_monogenic(r, CM), lambda p, q: finite_oracle(p, q, cfg.box)),
        ("uf1_2", lambda r: random_uf1(r, 2), uf1_saturation_oracle),
        ("uf1_3", lambda r: random_uf1(r, 3), uf1_saturation_oracle),
        ("ag2", lambda r: random_ag(r, 2, entries=3), lambda p, q: finite_oracle(p, q, min(cfg.box, 5))),
        ("ag3", lambda r: random_ag(r, 3, entries=2), lambda p, q: finite_oracle(p, q, min(cfg.box, 4))),
    ]
    lines, bad, concluded = [], 0, 0
    for name, make, oracle in classes:
        agree = contra = unknown = 0
        for p, q in _oracle_pairs(rng, count, make):
            d = decide_iso(p, q)
            o = oracle(p, q)
            if not o.conclusive:
                unknown += 1
            elif o.kind == d.kind:
                agree += 1
            else:
                contra += 1
                lines.append(f"contradiction {name}: {p} vs {q}: decider {d.kind}, oracle {o.kind}")
        bad += contra
        concluded += agree
        lines.append(f"{name}: agree={agree} contradictions={contra} oracle-unknown={unknown}")
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and concluded > 0 and elapsed < 60
    return _result("invariant-oracle", ok, f"{bad} contradictions, {concluded} concluded, {elapsed:.1f}s", lines, t0)


SOUNDNESS_SUITES = ("saturate-upward", "cs1-to-emin", "cm1-to-emin", "emin-to-cs1", "emin-ordinal",
                    "uf1n-to-emin", "emin-to-uf1n", "agn-to-emin", "emin-to-agn", "emin-omegan-to-csn",
                    "csn-to-cmn", "cmn-to-csn1", "s2-to-any", "u-to-uf21")


def criterion_soundness(cfg: SuiteConfig, count: int = 200, names=SOUNDNESS_SUITES) -> SuiteResult:
    t0 = time.perf_counter()
    lines, ok = [], True
    for name in names:
        report, _ = run_reduction_suite(name, cfg, count)
        total = len(report.records)
        share = report.inconclusive / total if total else 0.0
        equiv = sum(r.source.kind == EQUIVALENT for r in report.records)
        good = report.disagree == 0 and share <= 0.05
        ok &= good
        lines.append(f"{name}: pairs={total} equivalent={equiv} agree={report.agree} "
                     f"disagree={report.disagree} inconclusive={report.inconclusive}")
        lines += [f"  {ln}" for ln in report.lines()[1:] if not ln.endswith(", agree")]
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 180
    return _result("reduction-soundness", ok, f"{len(names)} transformers, {elapsed:.1f}s", lines, t0)


ROUND_TRIP_GRAPH_CAP = 200


def _prefixes(p):
    return [p.with_relations(p.relations[:k]) for k in range(len(p.relations) + 1)]


def _ag_within_cap(p) -> bool:
    return all(torsion_code(abelian_invariant(x).factors, p.n) <= FACTORIAL_CAP for x in _prefixes(p))


def _uf1_within_cap(p) -> bool:
    return all(uf1_invariant(x).icode <= ROUND_TRIP_GRAPH_CAP for x in _prefixes(p))


def capped_pairs(rng, count, make, accept):
    """Presentation pairs in which both members pass ``accept`` on every enumeration prefix."""
    out = []
    while len(out) < count:
        p, q = presentation_pair(rng, make)
        if accept(p) and accept(q):
            out.append(as_traces(rng, p, q))
    return out


def criterion_round_trips(cfg: SuiteConfig, count: int = 200) -> SuiteResult:
    t0 = time.perf_counter()
    rng = random.Random(f"{cfg.seed}:round-trips")
    count = cfg.count(count)
    trips = [("cs1", compose(MonogenicToEmin(CS), EminToCs1()), CS, 1, CS, 1,
              lambda r: random_monogenic(r, CS), lambda p: True)]
    for n in (2, 3):
        trips.append((f"uf1_{n}", compose(Uf1nToEmin(n), EminToUf1n(n + 1)), UF(1), n, UF(1), n + 1,
                      lambda r, n=n: random_uf1(r, n), _uf1_within_cap))
    for n in (2, 3):
        trips.append((f"ag{n}", compose(AgnToEmin(n), EminToAgn(n + 1)), AG, n, AG, n + 1,
                      lambda r, n=n: random_ag(r, n, entries=3), _ag_within_cap))
    lines, ok = [], True
    for name, red, sv, sn, tv, tn, make, accept in trips:
        pairs = capped_pairs(rng, count, make, accept)
        report = check_reduction(red, _iso(cfg, sv, sn), _iso(cfg, tv, tn), pairs, cfg.horizon)
        good = report.agree == len(pairs)
        ok &= good
        lines.append(f"{name}: agree={report.agree}/{len(pairs)} disagree={report.disagree} "
                     f"inconclusive={report.inconclusive}")
    return _result("round-trips", ok, "; ".join(lines), lines, t0)


def random_upset(rng, dim, box, size=None):
    return [tuple(rng.randint(0, box) for _ in range(dim)) for _ in range(rng.randint(1, 4) if size is None else size)]


GAMMA_EXAMPLES = [((( 0, 0),), "0"), (((1, 0), (0, 1)), "1"), (((2, 0),), "w*2")]


def criterion_gamma(cfg: SuiteConfig, count: int = 1000) -> SuiteResult:
    t0 = time.perf_counter()
    rng = random.Random(f"{cfg.seed}:gamma")
    count = cfg.count(count)
    lines, bad = [], 0
    for dim in (2, 3):
        for _ in range(count):
            while True:
                small = UpwardClosedSet(dim, random_upset(rng, dim, cfg.box))
                outside = [v for v in product(range(cfg.box + 1), repeat=dim) if not small.contains(v)]
                if outside:
                    break
            v = rng.choice(outside)
            big = UpwardClosedSet(dim, list(small.generators) + [v])
            if not gamma(big) < gamma(small):
                bad += 1
                lines.append(f"violation: {sorted(big.generators)} vs {sorted(small.generators)}")
    examples = [(str(gamma(UpwardClosedSet(2, gens))), want) for gens, want in GAMMA_EXAMPLES]
    ex_ok = all(got == want for got, want in examples)
    lines.append(f"examples {examples}")
    return _result("gamma-descent", bad == 0 and ex_ok, f"{bad} violations over {2 * count} pairs", lines, t0)


def _chain_classes():
    def ag_key(p):
        t = abelian_invariant(p)
        return (t.free_rank, torsion_code(t.factors, p.n))

    def uf_key(p):
        t = uf1_invariant(p)
        return (t.infinite_components, t.icode)

    return {
        "monogenic-cs": (lambda r: random_monogenic(r, CS, 1), index_period,
                         lambda a, b: index_period_leq(a, b)),
        "monogenic-cm": (lambda r: random_monogenic(r, CM, 1), index_period,
                         lambda a, b: index_period_leq(a, b)),
        "uf1_2": (lambda r: random_uf1(r, 2, 1), uf_key, lambda a, b: a <= b),
        "uf1_3": (lambda r: random_uf1(r, 3, 1), uf_key, lambda a, b: a <= b),
        "ag2": (lambda r: random_ag(r, 2, 1), ag_key, lambda a, b: a <= b),
    }


def criterion_descent(cfg: SuiteConfig, count: int = 500, length: int = 5) -> SuiteResult:
    t0 = time.perf_counter()
    rng = random.Random(f"{cfg.seed}:descent")
    count = cfg.count(count)
    lines, bad = [], 0
    for name, (draw, key, leq) in _chain_classes().items():
        strict = 0
        for _ in range(count):
            first = draw(rng)
            p = first.with_relations(())
            prev = key(p)
            for _ in range(length):
                rel = draw(rng).relations[0]
                was_implied = implies(p, rel)
                p = merge(p, [rel])
                cur = key(p)
                decreased = cur != prev
                if not leq(cur, prev) or decreased == was_implied:
                    bad += 1
                    lines.append(f"violation {name}: {p.relations}: {prev} -> {cur}, implied={was_implied}")
                strict += decreased
                prev = cur
        lines.append(f"{name}: chains={count} strict-steps={strict}")
    return _result("invariant-descent", bad == 0, f"{bad} violations", lines, t0)


def criterion_monotone(cfg: SuiteConfig, count: int = 200) -> SuiteResult:
    t0 = time.perf_counter()
    lines, ok = [], True
    for name, (red, kind) in monotone_suites().items():
        rng = random.Random(f"{cfg.seed}:monotone:{name}")
        chains = [inclusion_chain(rng, kind) for _ in range(cfg.count(count))]
        report = check_monotone(red, chains, cfg.horizon)
        ok &= report.disagree == 0
        lines.append(f"{name}: inclusions={report.agree}/{len(chains)}")
    return _result("monotonicity", ok, f"{len(lines)} transformers", lines, t0)


def integer_determinant(m) -> int:
    """Fraction-free Bareiss elimination."""
    a = [list(r) for r in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def snf_violations(m) -> list[str]:
    s, u, v = smith_normal_form(m)
    out = []
    if _matmul(_matmul(u, m), v) != s:
        out.append("U*M*V != S")
    rows, cols = len(m), len(m[0])
    diag = [s[i][i] for i in range(min(rows, cols))]
    if any(s[i][j] for i in range(rows) for j in range(cols) if i != j):
        out.append("S not diagonal")
    if any(d < 0 for d in diag):
        out.append("negative diagonal entry")
    for a, b in zip(diag, diag[1:]):
        if (a == 0 and b != 0) or (a and b % a):
            out.append(f"divisibility fails at {a}, {b}")
    if abs(integer_determinant(u)) != 1 or abs(integer_determinant(v)) != 1:
        out.append("transform not unimodular")
    if rows == cols:
        det = integer_determinant(m)
        if det:
            prod = 1
            for d in diag:
                prod *= d
            if prod != abs(det):
                out.append(f"product {prod} != |det| {abs(det)}")
    return out


def random_matrix(rng, max_dim=6, bound=50):
    r, c = rng.randint(1, max_dim), rng.randint(1, max_dim)
    return [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)]


def criterion_snf(cfg: SuiteConfig, count: int = 1000) -> SuiteResult:
    t0 = time.perf_counter()
    rng = random.Random(f"{cfg.seed}:snf")
    lines = []
    for k in range(cfg.count(count)):
        m = random_matrix(rng)
        for problem in snf_violations(m):
            lines.append(f"matrix {k}: {problem}")
    return _result("snf-exactness", not lines, f"{len(lines)} violations", lines, t0)


def criterion_shift(cfg: SuiteConfig, count: int = 200) -> SuiteResult:
    t0 = time.perf_counter()
    report, _ = run_reduction_suite("u-to-uf21", cfg, count)
    ok = report.agree == len(report.records)
    return _result("shift-structure", ok, f"agree={report.agree}/{len(report.records)}", report.lines(), t0)


def _registry_member(rng, kind, base=None):
    if kind == "ag":
        p = random_ag(rng, 2, entries=4) if base is None else _relabel(rng, base)
    else:
        p = random_uf1(rng, 2) if base is None else _relabel(rng, base)
    return p


def criterion_registry(cfg: SuiteConfig, count: int = 50) -> SuiteResult:
    t0 = time.perf_counter()
    rng = random.Random(f"{cfg.seed}:registry")
    lines, bad, qualifying = [], 0, 0
    for k in range(cfg.count(count)):
        kind = "ag" if k % 2 else "uf1"
        variety = AG if kind == "ag" else UF(1)
        a, b = _registry_member(rng, kind), _registry_member(rng, kind)
        members = [a, _registry_member(rng, kind, a), b,
                   _registry_member(rng, kind, b) if rng.random() < 0.5 else _registry_member(rng, kind)]
        rng.shuffle(members)
        if not registry_qualifies(variety, members):
            lines.append(f"registry {k} ({kind}): skipped, precondition fails")
            continue
        qualifying += 1
        traces = [(p.n, trace_of(p, True, rng.randint(0, 3))) for p in members]
        outs = accfg_to_eqce(variety, traces, cfg.horizon)
        for i in range(4):
            for j in range(i + 1, 4):
                same_out = outs[i].elements(cfg.horizon) == outs[j].elements(cfg.horizon)
                iso = decide_iso(members[i], members[j]).kind == ISOMORPHIC
                if same_out != iso:
                    bad += 1
                    lines.append(f"registry {k} ({kind}) members {i},{j}: outputs equal={same_out}, iso={iso}")
    lines.append(f"qualifying registries {qualifying}")
    ok = bad == 0 and qualifying > 0
    return _result("registry-columns", ok, f"{bad} mismatches on {qualifying} qualifying registries", lines, t0)


CRITERIA = {
    1: criterion_witness,
    2: criterion_oracles,
    3: criterion_soundness,
    4: criterion_round_trips,
    5: criterion_gamma,
    6: criterion_descent,
    7: criterion_monotone,
    8: criterion_snf,
    9: criterion_shift,
    10: criterion_registry,
}


def run_criterion(number: int, cfg: SuiteConfig) -> SuiteResult:
    t0 = time.perf_counter()
    result = CRITERIA[number](cfg)
    return replace(result, seconds=time.perf_counter() - t0)


def run_criteria(numbers, cfg: SuiteConfig, workers: int = 1) -> list[SuiteResult]:
    """Run criteria, optionally across processes; results come back in input order."""
    numbers = list(numbers)
    if workers <= 1 or len(numbers) <= 1:
        return [run_criterion(k, cfg) for k in numbers]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_criterion, numbers, [cfg] * len(numbers)))


def with_seed(cfg: SuiteConfig, seed: int) -> SuiteConfig:
    return replace(cfg, seed=seed)
