import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from ceiso.algebra import AG, CM, CS, UF, Identity, Presentation, free, parse_presentation, power
from ceiso.harness import _relabel, random_ag, random_monogenic, random_uf1
from ceiso.invariants import (NO_INVARIANT, AbelianType, IndexPeriod, UpwardClosedSet,
                              abelian_invariant, beating_sets, canonical_graph_code,
                              gamma, gamma_of_presentation, graph_of_code, index_period,
                              index_period_leq, s_of_presentation, uf1_invariant)
from ceiso.ordinals import parse_ordinal


@pytest.mark.parametrize("succ, code", [
    ([None], 0), ([0], 1), ([None, 0], 4), ([1, 0], 7), ([0, 0], 10), ([None, None], 2)])
def test_graph_codes(succ, code):
    assert canonical_graph_code(succ) == code
    assert canonical_graph_code(graph_of_code(code)) == code


@given(st.integers(1, 5).flatmap(lambda k: st.lists(st.one_of(st.none(), st.integers(0, k - 1)),
                                                   min_size=k, max_size=k)), st.randoms())
def test_graph_code_is_relabelling_invariant(succ, rnd):
    perm = list(range(len(succ)))
    rnd.shuffle(perm)
    relabelled = [None] * len(succ)
    for v, s in enumerate(succ):
        relabelled[perm[v]] = None if s is None else perm[s]
    code = canonical_graph_code(succ)
    assert canonical_graph_code(relabelled) == code
    assert canonical_graph_code(graph_of_code(code)) == code


def test_graph_codes_separate_small_graphs():
    seen = {}
    for k in range(1, 4):
        for succ in product([None, *range(k)], repeat=k):
            seen.setdefault(canonical_graph_code(list(succ)), set()).add(k)
    assert all(len(ks) == 1 for ks in seen.values())
    assert len(seen) == 2 + 6 + 16  # unlabelled out-degree <= 1 graphs on 1, 2, 3 vertices


def test_monogenic_invariants():
    p = parse_presentation("variety cs\ngenerators 1\nrel x0^2 = x0^5\n")
    assert index_period(p) == IndexPeriod(2, 3)
    assert index_period(free(CS, 1)).is_free
    assert index_period_leq(IndexPeriod(2, 3), IndexPeriod(2, 6))
    assert not index_period_leq(IndexPeriod(3, 3), IndexPeriod(2, 6))
    assert index_period_leq(IndexPeriod(1, 1), IndexPeriod()) and not index_period_leq(IndexPeriod(), IndexPeriod(1, 1))


def test_abelian_invariants():
    p = parse_presentation("variety ag\ngenerators 2\nrel 2x0 + 4x1 = 0\nrel 6x1 = 0\n")
    assert abelian_invariant(p) == AbelianType(0, (2, 6))
    assert str(abelian_invariant(Presentation(AG, 1, (Identity((6,), (0,)),)))) == "rank=0 factors=[6]"
    assert abelian_invariant(free(AG, 3)) == AbelianType(3, ())


def test_uf1_invariants():
    assert (uf1_invariant(free(UF(1), 2)).infinite_components, uf1_invariant(free(UF(1), 2)).icode) == (2, 2)
    p = Presentation(UF(1), 2, (Identity(power(0, 1), power(1, 1)),))
    t = uf1_invariant(p)
    assert (t.infinite_components, t.icode) == (1, 26)
    assert graph_of_code(26) == (None, 0, 0)
    loop = Presentation(UF(1), 1, (Identity(power(0, 1), power(0, 0)),))
    assert uf1_invariant(loop).infinite_components == 0


@pytest.mark.parametrize("make", [
    lambda r: random_monogenic(r, CS), lambda r: random_ag(r, 2), lambda r: random_uf1(r, 2)])
def test_invariants_agree_on_relabelled_copies(make):
    rng = random.Random(7)
    for _ in range(30):
        p = make(rng)
        q = _relabel(rng, p)
        if p.variety == AG:
            assert abelian_invariant(p) == abelian_invariant(q)
        elif p.variety == CS:
            assert index_period(p) == index_period(q)
        else:
            assert uf1_invariant(p) == uf1_invariant(q)


def test_gamma_examples():
    assert gamma(UpwardClosedSet(3, [(1, 1, 1)])) == parse_ordinal("w^2*3")
    assert gamma(UpwardClosedSet(2, [(2, 3)])) == parse_ordinal("w*5")
    with pytest.raises(ValueError):
        gamma(UpwardClosedSet(2))


def test_beating_sets_small():
    a = beating_sets(UpwardClosedSet(2, [(1, 0)]))
    inf = float("inf")
    assert a[0] == set() and a[1] == {(0, inf)}


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=4),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=3))
def test_gamma_descends_along_inclusion(gens, extra):
    small = UpwardClosedSet(2, gens)
    big = UpwardClosedSet(2, gens + extra)
    assert gamma(big) <= gamma(small)


def test_s_set_of_commutative_monoid():
    p = parse_presentation("variety cm\ngenerators 2\nrel x0 = x1\n")
    assert s_of_presentation(p, 4).upset.generators == {(1, 0)}
    assert gamma_of_presentation(free(CM, 2), 4) is NO_INVARIANT
    assert gamma_of_presentation(p, 4) == gamma(UpwardClosedSet(2, [(1, 0)]))
    with pytest.raises(TypeError):
        s_of_presentation(free(CS, 2), 3)
