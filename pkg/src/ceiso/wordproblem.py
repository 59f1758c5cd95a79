"""Deciding equality of terms in presented algebras.

Generic engines (bounded derivation closure, breadth-first derivation search)
work for every variety.  Complete deciders cover abelian groups (integer row
lattices), monogenic semigroups and monoids (index and period) and unary
algebras with one symbol (congruence closure with free rays).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from math import gcd

from .algebra import Identity, Presentation, UTerm, Variety


class DisjointSets:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def classes(self) -> list[list]:
        groups: dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return [sorted(g) for g in groups.values()]


# ---------------------------------------------------------------- term boxes

def term_size(value, variety: Variety) -> int:
    if variety.kind == "ag":
        return sum(abs(a) for a in value)
    if variety.commutative:
        return sum(value)
    return len(value.symbols)


def box_terms(variety: Variety, n: int, size: int) -> list:
    """All terms of size at most ``size``, in term-code order."""
    kind = variety.kind
    if kind in ("cs", "cm"):
        low = 1 if kind == "cs" else 0
        out = [v for v in product(range(size + 1), repeat=n) if low <= sum(v) <= size]
    elif kind == "ag":
        out = [v for v in product(range(-size, size + 1), repeat=n) if sum(map(abs, v)) <= size]
    elif kind == "sets":
        return [UTerm(g) for g in range(n)]
    else:
        syms = range(1, variety.arity + 1)
        out = []
        for depth in range(size + 1):
            for word in product(syms, repeat=depth):
                out.extend(UTerm(g, word) for g in range(n))
        return out
    from .algebra import term_code
    return sorted(out, key=lambda v: term_code(v, variety, n))


def _translates(u, v, variety: Variety, n: int, size: int, box):
    """Pairs (u + m, v + m) over multipliers m keeping both sides in the box."""
    if variety.commutative:
        nonneg = variety.kind != "ag"
        for w in box:
            m = tuple(a - b for a, b in zip(w, u))
            if nonneg and any(a < 0 for a in m):
                continue
            v2 = tuple(a + b for a, b in zip(v, m))
            if v2 in box:
                yield w, v2
    else:
        room = size - max(len(u.symbols), len(v.symbols))
        syms = range(1, (variety.arity if variety.kind == "uf" else 0) + 1)
        for depth in range(room + 1):
            for word in product(syms, repeat=depth):
                yield UTerm(u.gen, word + u.symbols), UTerm(v.gen, word + v.symbols)


@dataclass(frozen=True)
class Partition:
    """Classes of a bounded congruence; ``index`` maps each term to its class."""

    classes: tuple[tuple, ...]
    index: dict

    def same(self, a, b) -> bool:
        return a in self.index and b in self.index and self.index[a] == self.index[b]


def closure_partition(p: Presentation, depth: int = 6, size: int = 8, box=None) -> Partition:
    """Union-find over the size-``size`` box closed under ``depth`` translation rounds.

    A custom ``box`` (any finite term list) replaces the size box; unary
    translations still stop at depth ``size``.
    """
    if box is None:
        box = box_terms(p.variety, p.n, size)
    boxset = set(box)
    sets = DisjointSets(box)
    pairs = [(r.lhs, r.rhs) for r in p.nontrivial()]
    for _ in range(depth):
        changed = False
        for u, v in pairs:
            for a, b in _translates(u, v, p.variety, p.n, size, boxset):
                changed |= sets.union(a, b)
        if not changed:
            break
        pairs = [(c[0], x) for c in sets.classes() if len(c) > 1 for x in c[1:]]
    classes = tuple(tuple(c) for c in sorted(sets.classes()))
    index = {t: i for i, c in enumerate(classes) for t in c}
    return Partition(classes, index)


def derive_closure(p: Presentation, depth: int = 6, size: int = 8) -> frozenset[Identity]:
    part = closure_partition(p, depth, size)
    return frozenset(Identity(a, b) for c in part.classes for a in c for b in c if a != b)


def _rewrites(w, rules, variety: Variety):
    if variety.commutative:
        nonneg = variety.kind != "ag"
        for l, r in rules:
            if nonneg and any(a < b for a, b in zip(w, l)):
                continue
            yield tuple(a - b + c for a, b, c in zip(w, l, r))
    else:
        for l, r in rules:
            k = len(l.symbols)
            if w.gen == l.gen and w.symbols[len(w.symbols) - k:] == l.symbols:
                yield UTerm(r.gen, w.symbols[: len(w.symbols) - k] + r.symbols)


def derives(p: Presentation, u, v, max_size: int | None = None, max_nodes: int = 20000) -> bool:
    """Search for an elementary derivation from u to v through terms of bounded size.

    True is a proof of equality; False only means no derivation was found.
    """
    if u == v:
        return True
    rels = p.nontrivial()
    if not rels:
        return False
    rules = [(r.lhs, r.rhs) for r in rels] + [(r.rhs, r.lhs) for r in rels]
    if max_size is None:
        sides = [term_size(x, p.variety) for r in rels for x in (r.lhs, r.rhs)]
        max_size = max(sides + [term_size(u, p.variety), term_size(v, p.variety)]) + 2
    seen = {u}
    queue = deque([u])
    while queue and len(seen) < max_nodes:
        w = queue.popleft()
        for x in _rewrites(w, rules, p.variety):
            if x == v:
                return True
            if x not in seen and term_size(x, p.variety) <= max_size:
                seen.add(x)
                queue.append(x)
    return False


# ---------------------------------------------------------------- integer lattices

def _identity(k):
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith_normal_form(matrix):
    """Return (S, U, V) with U*M*V = S diagonal, d1 | d2 | ..., all d >= 0."""
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u, v = _identity(rows), _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for m in (a, v):
            for row in m:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for m in (a, v):
            for row in m:
                row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            pivot = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // pivot))
                    clean &= a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // pivot))
                    clean &= a[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, rows)
                        if any(a[i][j] % pivot for j in range(t + 1, cols))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < rows and t < cols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


class AbelianLattice:
    """Integer row lattice kept in echelon form for membership queries."""

    def __init__(self, n: int, rows=()):
        self.n = n
        self.basis: list[list[int]] = []  # pivots at strictly increasing columns
        for r in rows:
            self.add(r)

    def _pivot(self, row):
        return next((j for j, x in enumerate(row) if x), None)

    def add(self, row):
        row = list(row)
        if len(row) != self.n:
            raise ValueError("dimension mismatch")
        basis = self.basis
        k = 0
        while True:
            p = self._pivot(row)
            if p is None:
                break
            while k < len(basis) and self._pivot(basis[k]) < p:
                k += 1
            if k == len(basis) or self._pivot(basis[k]) > p:
                basis.insert(k, row if row[p] > 0 else [-x for x in row])
                break
            b = basis[k]
            # gcd step on column p between b and row
            x, y = b[p], row[p]
            g, s, t = _ext_gcd(x, y)
            new_b = [s * bi + t * ri for bi, ri in zip(b, row)]
            row = [(y // g) * bi - (x // g) * ri for bi, ri in zip(b, row)]
            basis[k] = new_b if new_b[p] > 0 else [-z for z in new_b]
            k += 1
        self._reduce_above()

    def _reduce_above(self):
        for i, b in enumerate(self.basis):
            p = self._pivot(b)
            for r in self.basis[:i]:
                q = r[p] // b[p]
                if q:
                    r[:] = [x - q * y for x, y in zip(r, b)]

    def contains(self, vec) -> bool:
        x = list(vec)
        if len(x) != self.n:
            raise ValueError("dimension mismatch")
        for b in self.basis:
            p = self._pivot(b)
            if any(x[:p]):
                return False
            q, rem = divmod(x[p], b[p])
            if rem:
                return False
            x = [xi - q * bi for xi, bi in zip(x, b)]
        return not any(x)


def _ext_gcd(a, b):
    """g, s, t with s*a + t*b = g = gcd(a, b) > 0 (a, b not both zero)."""
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def relation_matrix(p: Presentation) -> list[list[int]]:
    if p.variety.kind != "ag":
        raise TypeError("relation matrices are defined for abelian group presentations")
    return [[a - b for a, b in zip(r.lhs, r.rhs)] for r in p.nontrivial()]


def equal_ag(p: Presentation, v, w) -> bool:
    if len(v) != p.n or len(w) != p.n:
        raise ValueError("dimension mismatch")
    lattice = AbelianLattice(p.n, relation_matrix(p))
    return lattice.contains([a - b for a, b in zip(v, w)])


# ---------------------------------------------------------------- monogenic

def monogenic_index_period(p: Presentation):
    """(index, period) of a one-generator cs/cm presentation, None when free."""
    if p.variety.kind not in ("cs", "cm") or p.n != 1:
        raise TypeError("monogenic deciders need a one-generator cs or cm presentation")
    rels = p.nontrivial()
    if not rels:
        return None
    index = min(min(r.lhs[0], r.rhs[0]) for r in rels)
    period = 0
    for r in rels:
        period = gcd(period, abs(r.lhs[0] - r.rhs[0]))
    return index, period


def equal_monogenic(p: Presentation, a: int, b: int) -> bool:
    low = 1 if p.variety.kind == "cs" else 0
    if a < low or b < low:
        raise ValueError("exponent 0 is not a semigroup element")
    ip = monogenic_index_period(p)
    if a == b:
        return True
    if ip is None:
        return False
    index, period = ip
    return a >= index and b >= index and (a - b) % period == 0


# ---------------------------------------------------------------- unary, one symbol

@dataclass(frozen=True)
class CollapseGraph:
    classes: tuple[frozenset, ...]
    successor: tuple  # class index -> class index, or None at the box boundary

    def class_of(self, term) -> int:
        for i, c in enumerate(self.classes):
            if term in c:
                return i
        raise KeyError(term)


def _require_uf1(p):
    if p.variety.kind != "uf" or p.variety.arity != 1:
        raise TypeError("expected a UF(1) presentation")


def saturate_uf1(p: Presentation, depth: int) -> CollapseGraph:
    _require_uf1(p)
    terms = [UTerm(g, (1,) * k) for g in range(p.n) for k in range(depth + 1)]
    sets = DisjointSets(terms)
    for r in p.nontrivial():
        l, rr = r.lhs, r.rhs
        for j in range(depth + 1 - max(l.depth, rr.depth)):
            sets.union(l.apply(*(1,) * j), rr.apply(*(1,) * j))
    changed = True
    while changed:
        changed = False
        for c in sets.classes():
            succs = [t.apply(1) for t in c if t.depth < depth]
            for s in succs[1:]:
                changed |= sets.union(succs[0], s)
    classes = tuple(frozenset(c) for c in sorted(sets.classes()))
    where = {t: i for i, c in enumerate(classes) for t in c}
    succ = []
    for c in classes:
        inner = [t for t in c if t.depth < depth]
        succ.append(where[inner[0].apply(1)] if inner else None)
    return CollapseGraph(classes, tuple(succ))


class UnaryAlgebra:
    """Exact model of a finitely presented UF(1) algebra.

    Every term occurring in a relation is materialized as a vertex; vertices
    without a successor carry a free ray f(v), f(f(v)), ... that no relation
    touches.  Congruence closure merges vertices, and two ray origins merge
    into one ray origin.
    """

    def __init__(self, p: Presentation):
        _require_uf1(p)
        self.n = p.n
        reach = [0] * p.n
        for r in p.nontrivial():
            for side in (r.lhs, r.rhs):
                reach[side.gen] = max(reach[side.gen], side.depth)
        self._vertex = {}
        self._parent = []
        self._succ = []
        for g in range(p.n):
            prev = None
            for k in range(reach[g] + 1):
                v = self._new()
                self._vertex[(g, k)] = v
                if prev is not None:
                    self._succ[prev] = v
                prev = v
        for r in p.nontrivial():
            self._merge(self._vertex[(r.lhs.gen, r.lhs.depth)], self._vertex[(r.rhs.gen, r.rhs.depth)])

    def _new(self):
        self._parent.append(len(self._parent))
        self._succ.append(None)
        return len(self._parent) - 1

    def find(self, v):
        while self._parent[v] != v:
            self._parent[v] = self._parent[self._parent[v]]
            v = self._parent[v]
        return v

    def _merge(self, a, b):
        pending = [(a, b)]
        while pending:
            a, b = map(self.find, pending.pop())
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self._parent[b] = a
            sa, sb = self._succ[a], self._succ[b]
            if sa is None:
                self._succ[a] = sb
            elif sb is not None:
                pending.append((sa, sb))

    def vertices(self) -> list[int]:
        return sorted({self.find(v) for v in range(len(self._parent))})

    def successor(self, v):
        s = self._succ[self.find(v)]
        return None if s is None else self.find(s)

    def generator_vertex(self, g: int) -> int:
        return self.find(self._vertex[(g, 0)])

    def locate(self, term: UTerm):
        """(vertex, offset): offset > 0 means that many steps into the vertex's free ray."""
        v = self.generator_vertex(term.gen)
        steps = term.depth
        while steps:
            s = self.successor(v)
            if s is None:
                return v, steps
            v, steps = s, steps - 1
        return v, 0

    def equal(self, u: UTerm, w: UTerm) -> bool:
        return self.locate(u) == self.locate(w)


def equal_uf1(p: Presentation, u: UTerm, w: UTerm) -> bool:
    return UnaryAlgebra(p).equal(u, w)


def implies(p: Presentation, ident: Identity) -> bool | None:
    """Complete implication test where a decider exists, None otherwise."""
    kind = p.variety.kind
    if kind == "ag":
        return equal_ag(p, ident.lhs, ident.rhs)
    if kind in ("cs", "cm") and p.n == 1:
        return equal_monogenic(p, ident.lhs[0], ident.rhs[0])
    if kind == "uf" and p.variety.arity == 1:
        return equal_uf1(p, ident.lhs, ident.rhs)
    return None


# ---------------------------------------------------------------- unary, any arity

class GroundCongruence:
    """Congruence closure over the subterms of a finite UF(m) presentation.

    Finitely presented unary algebras have a decidable word problem: two terms
    are equal iff they are congruent in the closure computed over all
    subterms of the relations and of the two query terms.
    """

    def __init__(self, p: Presentation, extra_terms=()):
        if not p.variety.unary:
            raise TypeError("ground congruence closure needs a unary variety")
        self._id: dict = {}
        self._parent: list[int] = []
        self._uses: list[list[int]] = []
        self._node: list = []
        self._sig: dict = {}
        for r in p.nontrivial():
            self._intern(r.lhs)
            self._intern(r.rhs)
        for t in extra_terms:
            self._intern(t)
        for r in p.nontrivial():
            self._union(self._id[r.lhs], self._id[r.rhs])

    def _intern(self, t: UTerm) -> int:
        if t in self._id:
            return self._id[t]
        child = None
        if t.symbols:
            child = self._intern(UTerm(t.gen, t.symbols[1:]))
        i = len(self._parent)
        self._id[t] = i
        self._parent.append(i)
        self._uses.append([])
        self._node.append((t.symbols[0], child) if t.symbols else None)
        if child is not None:
            rc = self._find(child)
            self._uses[rc].append(i)
            key = (t.symbols[0], rc)
            if key in self._sig:
                self._union(i, self._sig[key])
            else:
                self._sig[key] = i
        return i

    def _find(self, i: int) -> int:
        while self._parent[i] != i:
            self._parent[i] = self._parent[self._parent[i]]
            i = self._parent[i]
        return i

    def _union(self, a: int, b: int):
        pending = [(a, b)]
        while pending:
            a, b = map(self._find, pending.pop())
            if a == b:
                continue
            if len(self._uses[a]) < len(self._uses[b]):
                a, b = b, a
            self._parent[b] = a
            moved, self._uses[b] = self._uses[b], []
            for u in moved:
                sym, child = self._node[u]
                key = (sym, self._find(child))
                other = self._sig.get(key)
                if other is None:
                    self._sig[key] = u
                elif self._find(other) != self._find(u):
                    pending.append((u, other))
                self._uses[a].append(u)

    def equal(self, u: UTerm, v: UTerm) -> bool:
        if u == v:
            return True
        if u not in self._id or v not in self._id:
            self._intern(u)
            self._intern(v)
        return self._find(self._id[u]) == self._find(self._id[v])


def equal_unary(p: Presentation, u: UTerm, v: UTerm) -> bool:
    return GroundCongruence(p, (u, v)).equal(u, v)
