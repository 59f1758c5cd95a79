"""Isomorphism invariants and the ordinal-valued gamma invariant for monoids."""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from itertools import combinations, product

from .algebra import CM, EnumerationTrace, Presentation, snapshot_at
from .ordinals import ZERO, Ordinal, make
from .wordproblem import (UnaryAlgebra, closure_partition, monogenic_index_period,
                          relation_matrix, smith_normal_form)


# ---------------------------------------------------------------- monogenic

@dataclass(frozen=True)
class IndexPeriod:
    index: int | None = None
    period: int | None = None

    @property
    def is_free(self) -> bool:
        return self.index is None

    def __str__(self):
        return "free" if self.is_free else f"index={self.index} period={self.period}"


FREE_MONOGENIC = IndexPeriod()


def index_period(p: Presentation) -> IndexPeriod:
    ip = monogenic_index_period(p)
    return FREE_MONOGENIC if ip is None else IndexPeriod(*ip)


def index_period_leq(a: IndexPeriod, b: IndexPeriod) -> bool:
    """Componentwise order with the free value on top."""
    if b.is_free:
        return True
    if a.is_free:
        return False
    return a.index <= b.index and a.period <= b.period


# ---------------------------------------------------------------- functional graphs

def _offset(k: int) -> int:
    return sum((j + 1) ** j for j in range(1, k))


def _validate(succ):
    k = len(succ)
    for s in succ:
        if s is not None and not 0 <= s < k:
            raise ValueError(f"successor {s} outside the vertex range")


def canonical_successor_array(succ) -> tuple:
    """Relabel a graph with out-degree at most one into a canonical form.

    Isomorphic graphs give identical arrays.  Trees hanging into a vertex are
    labelled by their nested certificates, cycles by their least rotation.
    """
    succ = list(succ)
    _validate(succ)
    k = len(succ)
    preds = [[] for _ in range(k)]
    for v, s in enumerate(succ):
        if s is not None:
            preds[s].append(v)

    # vertices on cycles
    on_cycle = [False] * k
    state = [0] * k
    for start in range(k):
        path = []
        v = start
        while v is not None and state[v] == 0:
            state[v] = 1
            path.append(v)
            v = succ[v]
        if v is not None and state[v] == 1:
            i = path.index(v)
            for w in path[i:]:
                on_cycle[w] = True
        for w in path:
            state[w] = 2

    cert = {}

    def tree_cert(v):
        stack = [(v, False)]
        while stack:
            x, expanded = stack.pop()
            if x in cert:
                continue
            kids = [u for u in preds[x] if not on_cycle[u]]
            if expanded:
                cert[x] = tuple(sorted(cert[u] for u in kids))
            else:
                stack.append((x, True))
                stack.extend((u, False) for u in kids if u not in cert)
        return cert[v]

    comps = []
    seen = [False] * k
    for v in range(k):
        if seen[v]:
            continue
        # walk to the root (sink or cycle)
        w, trail = v, set()
        while succ[w] is not None and w not in trail:
            trail.add(w)
            w = succ[w]
        if succ[w] is None:
            root_cert = ("sink", tree_cert(w))
            layout_roots = [w]
        else:
            cyc = [w]
            while succ[cyc[-1]] != w:
                cyc.append(succ[cyc[-1]])
            certs = [tree_cert(c) for c in cyc]
            rots = [(tuple(certs[i:] + certs[:i]), i) for i in range(len(cyc))]
            best, i = min(rots)
            root_cert = ("cycle", best)
            layout_roots = cyc[i:] + cyc[:i]
        comps.append((root_cert, layout_roots))
        stack = list(layout_roots)
        while stack:
            x = stack.pop()
            if seen[x]:
                continue
            seen[x] = True
            stack.extend(preds[x])
            if succ[x] is not None:
                stack.append(succ[x])

    comps.sort(key=lambda c: c[0])
    order = []
    for (kind, _), roots in comps:
        order.extend(roots)
        queue = list(roots)
        # breadth-first over hanging trees, children by certificate
        while queue:
            nxt = []
            for x in queue:
                kids = sorted((u for u in preds[x] if not on_cycle[u]), key=tree_cert)
                order.extend(kids)
                nxt.extend(kids)
            queue = nxt
    label = {v: i for i, v in enumerate(order)}
    return tuple(None if succ[v] is None else label[succ[v]] for v in order)


def canonical_graph_code(succ) -> int:
    """Code of the isomorphism type; fewer vertices always give a smaller code."""
    arr = canonical_successor_array(succ)
    k = len(arr)
    if k == 0:
        raise ValueError("graphs have at least one vertex")
    value = 0
    for s in arr:
        value = value * (k + 1) + (0 if s is None else k - s)
    return _offset(k) + value


def graph_of_code(code: int) -> tuple:
    k = 1
    while _offset(k + 1) <= code:
        k += 1
    value = code - _offset(k)
    digits = []
    for _ in range(k):
        value, t = divmod(value, k + 1)
        digits.append(t)
    return tuple(None if t == 0 else k - t for t in reversed(digits))


def successor_array_from_edges(k: int, edges) -> list:
    succ = [None] * k
    for a, b in edges:
        if succ[a] is not None:
            raise ValueError("graph codes cover graphs with out-degree at most one")
        succ[a] = b
    return succ


# ---------------------------------------------------------------- UF(1)

@total_ordering
@dataclass(frozen=True)
class UF1Invariant:
    infinite_components: int
    icode: int

    def __lt__(self, other):
        return (self.infinite_components, self.icode) < (other.infinite_components, other.icode)

    def __str__(self):
        return f"m={self.infinite_components} icode={self.icode}"


def surrogate_graph(algebra: UnaryAlgebra) -> tuple[int, list]:
    """(number of infinite components, finite surrogate as a successor array)."""
    verts = algebra.vertices()
    succ = {v: algebra.successor(v) for v in verts}
    indeg = {v: 0 for v in verts}
    for v, s in succ.items():
        if s is not None:
            indeg[s] += 1
    adj = {v: set() for v in verts}
    for v, s in succ.items():
        if s is not None:
            adj[v].add(s)
            adj[s].add(v)
    keep, joints, m, seen = [], set(), 0, set()
    for v in verts:
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x] - seen:
                seen.add(y)
                stack.append(y)
        if all(succ[x] is not None for x in comp):
            keep.extend(comp)
            continue
        # infinite component: cut at the first vertex shared by all paths from sources
        m += 1
        paths = []
        for x in comp:
            if indeg[x] == 0:
                path = [x]
                while succ[path[-1]] is not None:
                    path.append(succ[path[-1]])
                paths.append(path)
        common = set(paths[0]).intersection(*map(set, paths[1:]))
        joint = next(x for x in paths[0] if x in common)
        joints.add(joint)
        for x in comp:
            y = x
            while y is not None and y != joint:
                y = succ[y]
            if y == joint:
                keep.append(x)
    index = {v: i for i, v in enumerate(keep)}
    arr = [None] * len(keep)
    for v in keep:
        if v not in joints and succ[v] is not None:
            arr[index[v]] = index[succ[v]]
    return m, arr


def uf1_invariant(p: Presentation) -> UF1Invariant:
    m, arr = surrogate_graph(UnaryAlgebra(p))
    return UF1Invariant(m, canonical_graph_code(arr))


# ---------------------------------------------------------------- abelian groups

@dataclass(frozen=True)
class AbelianType:
    free_rank: int
    factors: tuple[int, ...] = ()

    def __str__(self):
        return f"rank={self.free_rank} factors={list(self.factors)}"


def abelian_invariant(p: Presentation) -> AbelianType:
    rows = relation_matrix(p)
    if not rows:
        return AbelianType(p.n, ())
    s, _, _ = smith_normal_form(rows)
    diag = [s[i][i] for i in range(min(len(rows), p.n))]
    nonzero = [d for d in diag if d]
    return AbelianType(p.n - len(nonzero), tuple(d for d in nonzero if d >= 2))


# ---------------------------------------------------------------- gamma

INF = float("inf")


class UpwardClosedSet:
    """Upward closure in N^n of a finite set, stored as its minimal antichain."""

    def __init__(self, dim: int, elements=()):
        self.dim = dim
        elems = {tuple(e) for e in elements}
        for e in elems:
            if len(e) != dim or any(x < 0 for x in e):
                raise ValueError(f"{e} is not in N^{dim}")
        self.generators = frozenset(
            e for e in elems if not any(f != e and _leq(f, e) for f in elems))

    def contains(self, v) -> bool:
        return any(_leq(g, v) for g in self.generators)

    def is_empty(self) -> bool:
        return not self.generators

    def beaten_by(self, v) -> bool:
        return not any(_leq(g, v) for g in self.generators)

    def __eq__(self, other):
        return isinstance(other, UpwardClosedSet) and (self.dim, self.generators) == (other.dim, other.generators)

    def __hash__(self):
        return hash((self.dim, self.generators))

    def __repr__(self):
        return f"UpwardClosedSet({self.dim}, {sorted(self.generators)})"


def _leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def beating_sets(upset: UpwardClosedSet) -> list[set]:
    """A_0 .. A_{n-1}: beating vectors with i infinite coordinates that stop
    beating once any further finite coordinate becomes infinite."""
    n = upset.dim
    top = [max(g[j] for g in upset.generators) for j in range(n)]
    out = [set() for _ in range(n)]
    for i in range(n):
        for inf_at in combinations(range(n), i):
            free = [j for j in range(n) if j not in inf_at]
            for vals in product(*(range(top[j] + 1) for j in free)):
                x = [INF] * n
                for j, val in zip(free, vals):
                    x[j] = val
                if not upset.beaten_by(x):
                    continue
                if any(upset.beaten_by(x[:j] + [INF] + x[j + 1:]) for j in free):
                    continue
                out[i].add(tuple(x))
    return out


def gamma(upset: UpwardClosedSet) -> Ordinal:
    if upset.is_empty():
        raise ValueError("gamma is undefined for the empty set")
    counts = [len(a) for a in beating_sets(upset)]
    return Ordinal.from_coefficients(counts)


@total_ordering
class _NoInvariant:
    """Value of gamma when no word has been identified yet; above every ordinal."""

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return not isinstance(other, _NoInvariant)

    def __eq__(self, other):
        return isinstance(other, _NoInvariant)

    def __hash__(self):
        return hash("no-invariant")

    def __repr__(self):
        return "NO_INVARIANT"

    __str__ = __repr__


NO_INVARIANT = _NoInvariant()


@dataclass(frozen=True)
class SApproximation:
    upset: UpwardClosedSet
    box: int

    @property
    def trivial(self) -> bool:
        return self.upset.is_empty()


def s_of_presentation(p: Presentation, box: int) -> SApproximation:
    """Words in [0, box]^n that are not the lexicographically least word of their class."""
    if p.variety != CM:
        raise TypeError("the S set is defined for commutative monoid presentations")
    cube = list(product(range(box + 1), repeat=p.n))
    part = closure_partition(p, depth=10 ** 6, size=box * p.n, box=cube)
    nonleast = [t for c in part.classes for t in c if t != min(c)]
    return SApproximation(UpwardClosedSet(p.n, nonleast), box)


def gamma_of_presentation(p: Presentation, box: int):
    approx = s_of_presentation(p, box)
    return NO_INVARIANT if approx.trivial else gamma(approx.upset)


def gamma_stage(trace: EnumerationTrace, s: int, n: int, box: int):
    return gamma_of_presentation(snapshot_at(trace, s, CM, n), box)
