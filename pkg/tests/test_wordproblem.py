import random

import pytest
from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from ceiso.algebra import AG, CS, UF, Identity, Presentation, UTerm, power
from ceiso.harness import integer_determinant, random_cs, snf_violations
from ceiso.wordproblem import (AbelianLattice, DisjointSets, GroundCongruence, closure_partition,
                               derive_closure, derives, equal_ag, equal_monogenic, equal_uf1,
                               implies, monogenic_index_period, saturate_uf1, smith_normal_form)


def test_disjoint_sets():
    d = DisjointSets(range(5))
    d.union(3, 1)
    d.union(4, 3)
    assert d.find(4) == d.find(1) == 1
    assert sorted(map(sorted, d.classes())) == [[0], [1, 3, 4], [2]]


def test_derive_closure_examples():
    p = Presentation(CS, 1, (Identity((1,), (2,)),))
    closure = derive_closure(p, depth=3, size=4)
    for a, b in [(1, 3), (1, 4), (2, 3)]:
        assert Identity((a,), (b,)) in closure or Identity((b,), (a,)) in closure
    assert all(r.is_trivial() for r in derive_closure(Presentation(CS, 2), 3, 4))
    q = Presentation(CS, 2, (Identity((1, 1), (0, 1)),))
    assert derives(q, (2, 1), (0, 1))
    assert not derives(q, (1, 0), (0, 1), max_size=5)


def test_snf_examples():
    assert smith_normal_form([[1, 0], [0, 1]])[0] == [[1, 0], [0, 1]]
    assert smith_normal_form([[2, 4], [0, 6]])[0] == [[2, 0], [0, 6]]
    assert smith_normal_form([[0]])[0] == [[0]]


matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-50, 50), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_snf_exact_and_matches_independent_library(m):
    assert snf_violations(m) == []
    s, _, _ = smith_normal_form(m)
    theirs = sympy_snf(Matrix(m), domain=ZZ)
    ours_diag = [s[i][i] for i in range(min(len(m), len(m[0])))]
    their_diag = [abs(theirs[i, i]) for i in range(min(len(m), len(m[0])))]
    assert ours_diag == their_diag


@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_sympy(m):
    assert integer_determinant(m) == Matrix(m).det()


def test_equal_ag_examples():
    p = Presentation(AG, 1, (Identity((6,), (0,)),))
    assert equal_ag(p, (7,), (1,))
    assert not equal_ag(Presentation(AG, 2), (1, 0), (0, 1))
    q = Presentation(AG, 2, (Identity((2, 4), (0, 0)), Identity((0, 6), (0, 0))))
    assert equal_ag(q, (2, 10), (0, 0))


def test_lattice_membership():
    lat = AbelianLattice(2, [(2, 4), (0, 6)])
    assert lat.contains((2, 10)) and not lat.contains((1, 0))


def test_monogenic_word_problem():
    p = Presentation(CS, 1, (Identity((2,), (5,)),))
    assert monogenic_index_period(p) == (2, 3)
    assert equal_monogenic(p, 3, 6)
    assert not equal_monogenic(p, 1, 4)
    assert equal_monogenic(Presentation(CS, 1), 4, 4)


def test_uf1_saturation_examples():
    loop = Presentation(UF(1), 1, (Identity(power(0, 1), power(0, 0)),))
    g = saturate_uf1(loop, 3)
    assert len({g.class_of(power(0, k)) for k in range(4)}) == 1
    assert len(saturate_uf1(Presentation(UF(1), 1), 5).classes) == 6
    join = Presentation(UF(1), 2, (Identity(power(0, 1), power(1, 1)),))
    g = saturate_uf1(join, 2)
    classes = sorted(sorted(c, key=lambda t: (t.depth, t.gen)) for c in g.classes)
    assert [UTerm(0), ] in classes and [UTerm(1)] in classes
    assert g.class_of(power(0, 2)) == g.class_of(power(1, 2))


def test_uf1_equality_and_implication():
    p = Presentation(UF(1), 2, (Identity(power(0, 3), power(0, 1)),))
    assert equal_uf1(p, power(0, 5), power(0, 1))
    assert not equal_uf1(p, power(0, 2), power(0, 1))
    assert implies(p, Identity(power(0, 4), power(0, 2)))
    assert implies(Presentation(CS, 2), Identity((1, 0), (0, 1))) is None


def test_ground_congruence_two_symbols():
    a = UTerm(0)
    p = Presentation(UF(2), 1, (Identity(a.apply(1), a.apply(2)),))
    closure = GroundCongruence(p, [a.apply(1, 1), a.apply(1, 2), a.apply(2, 1)])
    assert closure.equal(a.apply(1, 1), a.apply(1, 2))
    assert not closure.equal(a.apply(1, 1), a.apply(2, 1))
    assert not closure.equal(a.apply(1), a)


@pytest.mark.parametrize("seed", range(5))
def test_merge_preserves_equalities(seed):
    rng = random.Random(seed)
    for _ in range(20):
        p = random_cs(rng, CS, 2)
        q = Presentation(CS, 2, p.relations + random_cs(rng, CS, 2).relations)
        before = closure_partition(p, 6, 6)
        after = closure_partition(q, 6, 6)
        for cls in before.classes:
            assert all(after.same(cls[0], t) for t in cls)
