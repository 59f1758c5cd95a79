import random

import pytest
from hypothesis import given, settings, strategies as st

from ceiso.algebra import AG, CM, CS, SETS, UF, Identity, Presentation, UTerm, free, parse_presentation
from ceiso.harness import _relabel, random_ag, random_cs, random_monogenic, random_uf1
from ceiso.isochecker import (ISOMORPHIC, NON_ISOMORPHIC, UNKNOWN_AT_BOUND, bounded_iso_search,
                              check_witness, decide_iso, finite_oracle, hom_count, hom_profile,
                              set_size, small_targets)


def pres(text):
    return parse_presentation(text)


def test_witness_regression():
    p = pres("variety cs\ngenerators 2\nrel x0^2 x1 = x1\n")
    q = pres("variety cs\ngenerators 2\nrel x0 x1 = x1\n")
    v = decide_iso(p, q)
    assert v.kind in (ISOMORPHIC, NON_ISOMORPHIC)
    iso = pres("variety cs\ngenerators 2\nrel x0 x1 = x1^2\n")
    twin = pres("variety cs\ngenerators 2\nrel x0 x1 = x0^2\n")
    v = decide_iso(iso, twin)
    assert v.kind == ISOMORPHIC
    phi, psi = v.witness
    assert check_witness(iso, twin, phi, psi)


def test_small_targets_enumerated():
    targets = small_targets()
    assert len(targets) == 80
    assert sum(t.size <= 3 for t in targets) == 70
    for t in targets:
        n = t.size
        assert all(t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c))
                   for a in range(n) for b in range(n) for c in range(n))
        assert all(t.mul(a, b) == t.mul(b, a) for a in range(n) for b in range(n))


def test_hom_counts():
    z4 = next(t for t in small_targets() if t.size == 4 and t.unit == 0)
    assert hom_count(free(CS, 2), z4) == 16
    assert hom_count(pres("variety cs\ngenerators 1\nrel x0^2 = x0^6\n"), z4) == 4
    assert hom_count(pres("variety cs\ngenerators 1\nrel x0 = x0^3\n"), z4) == 2


def test_sets_and_ag():
    assert set_size(Presentation(SETS, 3, (Identity(UTerm(0), UTerm(2)),))) == 2
    p = pres("variety ag\ngenerators 2\nrel 2x0 + 4x1 = 0\nrel 6x1 = 0\n")
    q = pres("variety ag\ngenerators 2\nrel 2x0 = 0\nrel 6x1 = 0\n")
    assert decide_iso(p, q).kind == ISOMORPHIC
    assert decide_iso(p, free(AG, 2)).kind == NON_ISOMORPHIC


def test_several_unary_symbols_undecided():
    assert decide_iso(free(UF(2), 1), free(UF(2), 1)).kind == UNKNOWN_AT_BOUND


def test_mixed_varieties_rejected():
    with pytest.raises(ValueError):
        decide_iso(free(CS, 1), free(CM, 1))


@pytest.mark.parametrize("make", [
    lambda r: random_monogenic(r, CS), lambda r: random_cs(r, CS, 2), lambda r: random_cs(r, CM, 2),
    lambda r: random_ag(r, 2), lambda r: random_ag(r, 3), lambda r: random_uf1(r, 2)])
def test_relabelled_copies_never_non_isomorphic(make):
    rng = random.Random(11)
    for _ in range(15):
        p = make(rng)
        q = _relabel(rng, p)
        assert decide_iso(p, q).kind != NON_ISOMORPHIC
        if p.variety.kind in ("cs", "cm"):
            assert hom_profile(p) == hom_profile(q)


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_checker_agrees_with_finite_oracle(seed):
    rng = random.Random(seed)
    p, q = random_cs(rng, CS, 2), random_cs(rng, CS, 2)
    fast, slow = decide_iso(p, q), finite_oracle(p, q, 6)
    if fast.conclusive and slow.conclusive:
        assert fast.kind == slow.kind


def test_bounded_search_finds_swap():
    p = pres("variety cm\ngenerators 2\nrel x0^2 = x1\n")
    q = pres("variety cm\ngenerators 2\nrel x1^2 = x0\n")
    v = bounded_iso_search(p, q, 1)
    assert v is not None and v.kind == ISOMORPHIC
