"""Isomorphism verdicts for finite presentations.

Complete deciders use the class invariants.  Elsewhere the checker combines a
search for mutually inverse homomorphisms, a brute-force oracle for finite
quotients, and a certificate that one algebra is a proper quotient of the
other (finitely generated commutative semigroups are Hopfian, so a proper
quotient is never isomorphic to the original).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .algebra import Identity, Presentation, UTerm
from .invariants import abelian_invariant, index_period, uf1_invariant
from .wordproblem import (DisjointSets, box_terms, closure_partition, derives,
                          saturate_uf1, term_size)

ISOMORPHIC = "Isomorphic"
NON_ISOMORPHIC = "NonIsomorphic"
UNKNOWN_AT_BOUND = "UnknownAtBound"


@dataclass(frozen=True)
class IsoVerdict:
    kind: str
    witness: object = None
    reason: str = ""
    bounds: dict = field(default_factory=dict, compare=False)

    @property
    def conclusive(self) -> bool:
        return self.kind != UNKNOWN_AT_BOUND

    def __str__(self):
        text = self.kind
        if self.reason:
            text += f": {self.reason}"
        return text


def _same_class(p, q, kinds):
    if p.variety != q.variety:
        raise ValueError("presentations must share a variety")
    if p.variety.kind not in kinds:
        raise ValueError(f"decider does not apply to {p.variety}")


def _by_invariant(a, b, label) -> IsoVerdict:
    if a == b:
        return IsoVerdict(ISOMORPHIC, a, f"{label} {a}")
    return IsoVerdict(NON_ISOMORPHIC, (a, b), f"{label} {a} vs {b}")


def decide_iso_monogenic(p: Presentation, q: Presentation) -> IsoVerdict:
    _same_class(p, q, ("cs", "cm"))
    return _by_invariant(index_period(p), index_period(q), "index/period")


def decide_iso_ag(p: Presentation, q: Presentation) -> IsoVerdict:
    _same_class(p, q, ("ag",))
    return _by_invariant(abelian_invariant(p), abelian_invariant(q), "abelian type")


def decide_iso_uf1(p: Presentation, q: Presentation) -> IsoVerdict:
    _same_class(p, q, ("uf",))
    if p.variety.arity != 1:
        raise ValueError("complete decider only for one unary symbol")
    return _by_invariant(uf1_invariant(p), uf1_invariant(q), "graph invariant")


def set_size(p: Presentation) -> int:
    sets = DisjointSets(range(p.n))
    for r in p.nontrivial():
        sets.union(r.lhs.gen, r.rhs.gen)
    return len(sets.classes())


def decide_iso_sets(p: Presentation, q: Presentation) -> IsoVerdict:
    _same_class(p, q, ("sets",))
    return _by_invariant(set_size(p), set_size(q), "size")


# ---------------------------------------------------------------- homomorphism search

def _image(vec, images):
    out = [0] * len(images[0])
    for k, img in zip(vec, images):
        if k:
            out = [a + k * b for a, b in zip(out, img)]
    return tuple(out)


def _equal_in(pres: Presentation, u, v, slack: int) -> bool:
    if u == v:
        return True
    rels = pres.nontrivial()
    if Identity(u, v) in rels or Identity(v, u) in rels:
        return True
    sides = [term_size(x, pres.variety) for r in rels for x in (r.lhs, r.rhs)]
    bound = max(sides + [term_size(u, pres.variety), term_size(v, pres.variety)]) + slack
    return derives(pres, u, v, max_size=bound)


def _respects(src: Presentation, dst: Presentation, images, slack) -> bool:
    return all(_equal_in(dst, _image(r.lhs, images), _image(r.rhs, images), slack)
               for r in src.nontrivial())


def _unit_vec(n, i):
    return tuple(int(j == i) for j in range(n))


def check_witness(p, q, phi, psi, derivation: int = 6) -> bool:
    """Conditions (1)-(4): both maps are homomorphisms and mutually inverse."""
    if not (_respects(p, q, phi, derivation) and _respects(q, p, psi, derivation)):
        return False
    if not all(_equal_in(p, _image(phi[i], psi), _unit_vec(p.n, i), derivation) for i in range(p.n)):
        return False
    return all(_equal_in(q, _image(psi[j], phi), _unit_vec(q.n, j), derivation) for j in range(q.n))


def _image_candidates(variety, n, degree):
    terms = box_terms(variety, n, degree)
    return sorted(terms, key=lambda v: (sum(v), tuple(-a for a in v)))


def _maps(src, dst, degree):
    cands = _image_candidates(dst.variety, dst.n, degree)
    maps = list(product(cands, repeat=src.n))
    maps.sort(key=lambda m: (sum(map(sum, m)), [tuple(-a for a in v) for v in m]))
    return maps


def bounded_iso_search(p: Presentation, q: Presentation, degree: int = 3,
                       derivation: int = 6) -> IsoVerdict:
    if p.variety != q.variety or p.variety.kind not in ("cs", "cm"):
        raise ValueError("bounded search covers cs and cm presentations of one variety")
    bounds = {"degree": degree, "derivation": derivation}
    phis = [m for m in _maps(p, q, degree) if _respects(p, q, m, derivation)]
    if not phis:
        return IsoVerdict(UNKNOWN_AT_BOUND, None, "no homomorphism found", bounds)
    psis = [m for m in _maps(q, p, degree) if _respects(q, p, m, derivation)]
    for phi in phis:
        for psi in psis:
            if all(_equal_in(p, _image(phi[i], psi), _unit_vec(p.n, i), derivation) for i in range(p.n)) and \
               all(_equal_in(q, _image(psi[j], phi), _unit_vec(q.n, j), derivation) for j in range(q.n)):
                return IsoVerdict(ISOMORPHIC, (phi, psi), "inverse homomorphisms found", bounds)
    return IsoVerdict(UNKNOWN_AT_BOUND, None, "search exhausted", bounds)


# ---------------------------------------------------------------- finite quotients

@dataclass
class FiniteModel:
    """A finite quotient recovered from a box: classes plus generator actions."""

    variety: object
    n: int
    classes: list
    action: list  # action[c][i] = class of c * x_i
    base: int | None  # class of the identity word (cm, ag); None for cs
    gen_class: list
    index: dict

    @property
    def size(self) -> int:
        return len(self.classes)

    def apply(self, c, vec):
        for i, k in enumerate(vec):
            if k < 0:
                inverse = {self.action[d][i]: d for d in range(self.size)}
                for _ in range(-k):
                    c = inverse[c]
            for _ in range(max(k, 0)):
                c = self.action[c][i]
        return c

    def evaluate(self, vec):
        if self.base is not None:
            return self.apply(self.base, vec)
        first = next(i for i, k in enumerate(vec) if k)
        rest = list(vec)
        rest[first] -= 1
        return self.apply(self.gen_class[first], rest)

    def rep(self, c):
        return self.classes[c][0]

    def multiply(self, a, b):
        return self.apply(a, self.rep(b))


def finite_model(p: Presentation, box: int = 8) -> FiniteModel | None:
    """Exact finite model of ``p`` when the box already closes up, else None."""
    kind = p.variety.kind
    if kind not in ("cs", "cm", "ag"):
        return None
    part = closure_partition(p, depth=10 ** 6, size=box)
    classes = [sorted(c, key=lambda v: (term_size(v, p.variety), v)) for c in part.classes]
    order = sorted(range(len(classes)), key=lambda i: (term_size(classes[i][0], p.variety), classes[i][0]))
    classes = [classes[i] for i in order]
    index = {t: k for k, c in enumerate(classes) for t in c}
    n = p.n
    action = []
    for c in classes:
        row = []
        for i in range(n):
            t = tuple(a + (j == i) for j, a in enumerate(c[0]))
            if t not in index:
                return None
            row.append(index[t])
        action.append(row)
    for t, k in index.items():
        for i in range(n):
            t2 = tuple(a + (j == i) for j, a in enumerate(t))
            if t2 in index and index[t2] != action[k][i]:
                return None
    for row in action:
        for i in range(n):
            for j in range(n):
                if action[row[i]][j] != action[row[j]][i]:
                    return None
    if kind == "ag":
        for i in range(n):
            if len({row[i] for row in action}) != len(action):
                return None
    gen_class = [index[_unit_vec(n, i)] for i in range(n)]
    base = index[(0,) * n] if kind != "cs" else None
    model = FiniteModel(p.variety, n, classes, action, base, gen_class, index)
    for r in p.nontrivial():
        if model.evaluate(r.lhs) != model.evaluate(r.rhs):
            return None
    return model


def _cyclic_type(model: FiniteModel, x):
    seen, y, k = {}, x, 1
    while y not in seen:
        seen[y] = k
        y = model.multiply(y, x)
        k += 1
    return seen[y], k - seen[y]


def models_isomorphic(a: FiniteModel, b: FiniteModel):
    """Generator-image search for an isomorphism; returns the images or None."""
    if a.size != b.size:
        return None
    types_b = {x: _cyclic_type(b, x) for x in range(b.size)}
    cands = []
    for i in range(a.n):
        t = _cyclic_type(a, a.gen_class[i])
        cands.append([x for x in range(b.size) if types_b[x] == t])
    for images in product(*cands):
        mapping = {}
        for c in range(a.size):
            rep = a.rep(c)
            if b.base is not None:
                img = b.base
            else:
                first = next(i for i, k in enumerate(rep) if k)
                img = images[first]
                rep = tuple(k - (i == first) for i, k in enumerate(rep))
            for i, k in enumerate(rep):
                for _ in range(abs(k)):
                    img = b.multiply(img, images[i]) if k > 0 else _inverse(b, img, images[i])
            mapping[c] = img
        if len(set(mapping.values())) != a.size:
            continue
        if all(mapping[a.action[c][i]] == b.multiply(mapping[c], images[i])
               for c in range(a.size) for i in range(a.n)):
            return images
    return None


def _inverse(model, c, g):
    return next(d for d in range(model.size) if model.multiply(d, g) == c)


def finite_oracle(p: Presentation, q: Presentation, box: int = 8) -> IsoVerdict:
    bounds = {"box": box}
    mp, mq = finite_model(p, box), finite_model(q, box)
    if mp is None or mq is None:
        return IsoVerdict(UNKNOWN_AT_BOUND, None, "not finite within the box", bounds)
    if mp.size != mq.size:
        return IsoVerdict(NON_ISOMORPHIC, (mp.size, mq.size), f"orders {mp.size} vs {mq.size}", bounds)
    images = models_isomorphic(mp, mq)
    if images is None:
        return IsoVerdict(NON_ISOMORPHIC, (mp.size, mq.size), "no isomorphism between finite models", bounds)
    return IsoVerdict(ISOMORPHIC, images, f"finite models of order {mp.size}", bounds)


# ---------------------------------------------------------------- certificates

def balanced_weight(p: Presentation, limit: int = 4):
    """A positive weight preserved by every relation, proving the quotient infinite."""
    rels = p.nontrivial()
    for w in product(range(1, limit + 1), repeat=p.n):
        if all(sum(a * b for a, b in zip(w, r.lhs)) == sum(a * b for a, b in zip(w, r.rhs)) for r in rels):
            return w
    return None


def rees_refutes(q: Presentation, u, v, max_degree: int) -> bool:
    """Prove u != v in q inside the quotient that sends every word of degree
    above ``max_degree`` to zero.  False means no proof at this size."""
    rules = [(r.lhs, r.rhs) for r in q.nontrivial()] + [(r.rhs, r.lhs) for r in q.nontrivial()]
    for start, goal in ((u, v), (v, u)):
        if sum(start) > max_degree:
            continue
        seen, queue, leaked = {start}, deque([start]), False
        while queue and not leaked:
            w = queue.popleft()
            for l, r in rules:
                if any(a < b for a, b in zip(w, l)):
                    continue
                x = tuple(a - b + c for a, b, c in zip(w, l, r))
                if sum(x) > max_degree:
                    leaked = True
                    break
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
        if not leaked and goal not in seen:
            return True
    return False


def weight_refutes(q: Presentation, u, v, limit: int = 4, moduli=(0, 2, 3, 4, 5, 6)) -> bool:
    """Prove u != v in q with a weight homomorphism into (N, +) or Z/k that
    respects every relation of q but separates u and v."""
    rels = q.nontrivial()
    for k in moduli:
        for w in product(range(limit + 1), repeat=q.n):
            def weigh(x):
                total = sum(a * b for a, b in zip(w, x))
                return total % k if k else total
            if weigh(u) != weigh(v) and all(weigh(r.lhs) == weigh(r.rhs) for r in rels):
                return True
    return False


def refutes(q: Presentation, u, v, top: int, extra: int = 4) -> bool:
    return any(rees_refutes(q, u, v, top + k) for k in range(1, extra + 1)) or weight_refutes(q, u, v)


def proper_quotient(p: Presentation, q: Presentation, derivation: int = 6, extra: int = 4):
    """A relation of p refuted in q, when p is shown to be a quotient of q."""
    if p.n != q.n:
        return None
    if not all(_equal_in(p, r.lhs, r.rhs, derivation) for r in q.nontrivial()):
        return None
    top = max([sum(x) for r in p.nontrivial() + q.nontrivial() for x in (r.lhs, r.rhs)] + [1])
    for r in p.nontrivial():
        if refutes(q, r.lhs, r.rhs, top, extra):
            return r
    return None


def same_congruence(p: Presentation, q: Presentation, derivation: int = 6) -> bool:
    if p.n != q.n:
        return False
    return all(_equal_in(p, r.lhs, r.rhs, derivation) for r in q.nontrivial()) and \
        all(_equal_in(q, r.lhs, r.rhs, derivation) for r in p.nontrivial())


@dataclass(frozen=True)
class SmallTable:
    """A finite commutative semigroup given by its multiplication table."""

    size: int
    table: tuple  # table[a * size + b]
    unit: int | None

    def mul(self, a, b):
        return self.table[a * self.size + b]


def _unit_of(size, table):
    for e in range(size):
        if all(table[e * size + a] == a for a in range(size)):
            return e
    return None


@lru_cache(maxsize=None)
def small_targets(max_order: int = 3, max_modulus: int = 8) -> tuple:
    """Every commutative table of order <= max_order, plus Z/k under + and under *."""
    out = []
    for t in range(1, max_order + 1):
        cells = [(a, b) for a in range(t) for b in range(a, t)]
        for vals in product(range(t), repeat=len(cells)):
            table = [0] * (t * t)
            for (a, b), v in zip(cells, vals):
                table[a * t + b] = table[b * t + a] = v
            if all(table[table[a * t + b] * t + c] == table[a * t + table[b * t + c]]
                   for a in range(t) for b in range(t) for c in range(t)):
                out.append(SmallTable(t, tuple(table), _unit_of(t, table)))
    for k in range(max_order + 1, max_modulus + 1):
        add = tuple((a + b) % k for a in range(k) for b in range(k))
        mul = tuple((a * b) % k for a in range(k) for b in range(k))
        out += [SmallTable(k, add, 0), SmallTable(k, mul, 1)]
    return tuple(out)


def _evaluate(target: SmallTable, images, vec):
    acc = target.unit
    for img, k in zip(images, vec):
        for _ in range(k):
            acc = img if acc is None else target.mul(acc, img)
    return acc


def hom_count(p: Presentation, target: SmallTable) -> int:
    """Number of homomorphisms from the presented algebra into ``target``."""
    rels = p.nontrivial()
    return sum(all(_evaluate(target, images, r.lhs) == _evaluate(target, images, r.rhs) for r in rels)
               for images in product(range(target.size), repeat=p.n))


def hom_profile(p: Presentation) -> tuple:
    """Hom counts into every small target; monoid presentations use only targets with a unit."""
    targets = small_targets()
    if p.variety.kind == "cm":
        targets = [t for t in targets if t.unit is not None]
    return tuple(hom_count(p, t) for t in targets)


def decide_iso_commutative(p: Presentation, q: Presentation, degree: int = 3,
                           derivation: int = 6, box: int = 8) -> IsoVerdict:
    """Layered checker for cs and cm presentations with any number of generators."""
    if p.variety != q.variety or p.variety.kind not in ("cs", "cm"):
        raise ValueError("expected two cs or two cm presentations")
    bounds = {"degree": degree, "derivation": derivation, "box": box}
    if p.n == q.n == 1:
        return decide_iso_monogenic(p, q)
    if same_congruence(p, q, derivation):
        ident = tuple(_unit_vec(p.n, i) for i in range(p.n))
        return IsoVerdict(ISOMORPHIC, (ident, ident), "same congruence", bounds)
    wp, wq = balanced_weight(p), balanced_weight(q)
    if wp is None or wq is None:
        fin = finite_oracle(p, q, box)
        if fin.conclusive:
            return fin
        mp = finite_model(p, box) if wp is None else None
        mq = finite_model(q, box) if wq is None else None
        if (mp is not None and wq is not None) or (mq is not None and wp is not None):
            return IsoVerdict(NON_ISOMORPHIC, None, "finite versus infinite", bounds)
    found = bounded_iso_search(p, q, 1, derivation)
    if found.kind == ISOMORPHIC:
        return found
    hp, hq = hom_profile(p), hom_profile(q)
    if hp != hq:
        return IsoVerdict(NON_ISOMORPHIC, (hp, hq), "homomorphism counts into a small target differ", bounds)
    for a, b in ((p, q), (q, p)):
        r = proper_quotient(a, b, derivation)
        if r is not None:
            return IsoVerdict(NON_ISOMORPHIC, r, "proper quotient", bounds)
    if degree > 1:
        found = bounded_iso_search(p, q, degree, derivation)
        if found.kind == ISOMORPHIC:
            return found
    return IsoVerdict(UNKNOWN_AT_BOUND, None, "no certificate within bounds", bounds)


# ---------------------------------------------------------------- unary oracle

def _uf1_stats(graph, n, reach):
    cls = {t: i for i, c in enumerate(graph.classes) for t in c}
    sets = DisjointSets(range(n))
    classes_of = []
    for g in range(n):
        classes_of.append([cls[UTerm(g, (1,) * k)] for k in range(reach + 1)])
    owner = {}
    for g in range(n):
        for c in classes_of[g]:
            if c in owner:
                sets.union(owner[c], g)
            owner.setdefault(c, g)
    stats = []
    for comp in sets.classes():
        cyc = None
        for g in comp:
            seq = classes_of[g]
            for a in range(len(seq)):
                if seq[a] in seq[:a]:
                    cyc = a - seq.index(seq[a])
                    break
            if cyc:
                break
        if cyc is None:
            stats.append(("infinite",))
        else:
            elems = {c for g in comp for c in classes_of[g]}
            stats.append(("finite", len(elems), cyc))
    return sorted(stats)


def uf1_saturation_oracle(p: Presentation, q: Presentation, image_depth: int = 2,
                          depth: int | None = None) -> IsoVerdict:
    """Independent UF(1) oracle: box saturation plus a bounded search for inverse maps."""
    rel_depth = max([x.depth for r in p.nontrivial() + q.nontrivial() for x in (r.lhs, r.rhs)] + [0])
    if depth is None:
        depth = 4 * rel_depth + 4 * image_depth + 8
    reach = depth // 2
    gp, gq = saturate_uf1(p, depth), saturate_uf1(q, depth)
    sp, sq = _uf1_stats(gp, p.n, reach), _uf1_stats(gq, q.n, reach)
    bounds = {"depth": depth, "image_depth": image_depth}
    if sp != sq:
        return IsoVerdict(NON_ISOMORPHIC, (sp, sq), "component statistics differ", bounds)

    def same(graph, u, v):
        return u == v or graph.class_of(u) == graph.class_of(v)

    def compose(term, images):
        img = images[term.gen]
        return UTerm(img.gen, term.symbols + img.symbols)

    def maps(src, dst):
        cands = [UTerm(g, (1,) * k) for k in range(image_depth + 1) for g in range(dst.n)]
        return list(product(cands, repeat=src.n))

    def hom(src, dst, graph, images):
        return all(same(graph, compose(r.lhs, images), compose(r.rhs, images)) for r in src.nontrivial())

    phis = [m for m in maps(p, q) if hom(p, q, gq, m)]
    psis = [m for m in maps(q, p) if hom(q, p, gp, m)]
    for phi in phis:
        for psi in psis:
            if all(same(gp, compose(phi[i], psi), UTerm(i)) for i in range(p.n)) and \
               all(same(gq, compose(psi[j], phi), UTerm(j)) for j in range(q.n)):
                return IsoVerdict(ISOMORPHIC, (phi, psi), "inverse maps in the saturated box", bounds)
    return IsoVerdict(UNKNOWN_AT_BOUND, None, "no inverse maps found", bounds)


# ---------------------------------------------------------------- dispatch

def decide_iso(p: Presentation, q: Presentation, degree: int = 3, derivation: int = 6,
               box: int = 8) -> IsoVerdict:
    if p.variety != q.variety:
        raise ValueError("presentations must share a variety")
    kind = p.variety.kind
    if kind == "ag":
        return decide_iso_ag(p, q)
    if kind == "sets":
        return decide_iso_sets(p, q)
    if kind == "uf":
        if p.variety.arity == 1:
            return decide_iso_uf1(p, q)
        return IsoVerdict(UNKNOWN_AT_BOUND, None, "no decider for several unary symbols")
    return decide_iso_commutative(p, q, degree, derivation, box)
