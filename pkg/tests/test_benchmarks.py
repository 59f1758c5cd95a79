from hypothesis import given, strategies as st

from ceiso.algebra import EnumerationTrace
from ceiso.benchmarks import (DIFFER, EQUIVALENT, UNKNOWN, eval_e0ce, eval_emax, eval_emin,
                              eval_emin_alpha, eval_eqce, eval_shift, shift_of)
from ceiso.coding import zigzag
from ceiso.ordinals import code_of, omega_power, parse_ordinal


def tr(codes, done=True):
    return EnumerationTrace.from_codes(codes, stabilized=done)


def test_eqce():
    assert eval_eqce(tr([1, 2]), tr([2, 1]), 5) == eval_eqce(tr([2, 1]), tr([1, 2]), 5)
    v = eval_eqce(tr([1, 2]), tr([2, 1]), 5)
    assert (v.kind, v.final) == (EQUIVALENT, True)
    v = eval_eqce(tr([1, 3], done=False), tr([1]), 5)
    assert (v.kind, v.witness, v.final) == (DIFFER, 3, True)
    assert eval_eqce(tr([1, 3], done=False), tr([1], done=False), 5).kind == UNKNOWN


def test_emin_verdicts():
    assert eval_emin(tr([4, 0], done=False), tr([0], done=False), 1).final
    v = eval_emin(tr([5, 3], done=False), tr([3], done=False), 1)
    assert (v.kind, v.final) == (EQUIVALENT, False)
    assert eval_emin(tr([5], done=False), tr([3]), 0).kind == UNKNOWN
    v = eval_emin(tr([3], done=False), tr([5]), 0)
    assert (v.kind, v.final) == (DIFFER, True)
    assert eval_emin(tr([]), tr([]), 0).kind == EQUIVALENT


def test_emin_under_ordinal_order():
    bound = omega_power(2)
    seven, omega = code_of(parse_ordinal("7"), bound), code_of(parse_ordinal("w"), bound)
    assert omega < seven  # code order and ordinal order disagree here
    assert eval_emin_alpha(bound, tr([omega, seven]), tr([seven]), 5).kind == EQUIVALENT
    assert eval_emin_alpha(bound, tr([omega]), tr([seven]), 5).kind == DIFFER
    assert eval_emin(tr([omega]), tr([seven]), 5).kind == DIFFER
    assert eval_emin(tr([omega, seven]), tr([omega]), 5).kind == EQUIVALENT


def test_emax_and_e0ce():
    assert eval_emax(tr([1, 9]), tr([9]), 3).kind == EQUIVALENT
    assert eval_emax(tr([1, 9], done=False), tr([3]), 3).kind == DIFFER
    assert eval_emax(tr([1], done=False), tr([3], done=False), 3).kind == UNKNOWN
    assert eval_e0ce(tr([1]), tr([2]), 3).final
    assert not eval_e0ce(tr([1], done=False), tr([2]), 3).final


def test_shift_examples():
    assert shift_of(frozenset({0, 3}), frozenset({5, 8})) == 5
    assert shift_of(frozenset({0, 3}), frozenset({5, 9})) is None
    assert shift_of(frozenset(), frozenset()) == 0
    assert shift_of(frozenset({0}), frozenset({100})) == 100
    assert shift_of(frozenset({0}), frozenset({100}), shift_bound=10) is None
    a = tr([zigzag(-2), zigzag(1)])
    b = tr([zigzag(4), zigzag(7)])
    v = eval_shift(a, b, 2)
    assert (v.kind, v.witness, v.final) == (EQUIVALENT, 6, True)


finite_sets = st.frozensets(st.integers(-20, 20), max_size=6)


@given(finite_sets, st.integers(-50, 50))
def test_shift_found_for_translates(a, x):
    b = frozenset(v + x for v in a)
    assert shift_of(a, b) == (x if a else 0)
    assert shift_of(b, a) == (-x if a else 0)


@given(finite_sets, finite_sets)
def test_shift_is_symmetric(a, b):
    x = shift_of(a, b)
    y = shift_of(b, a)
    assert (x is None) == (y is None)
    if x is not None and a:
        assert x == -y


@given(st.lists(st.integers(0, 30), max_size=6), st.lists(st.integers(0, 30), max_size=6),
       st.integers(0, 8))
def test_final_verdicts_never_change(c1, c2, s):
    t1, t2 = tr(c1), tr(c2)
    for ev in (eval_eqce, eval_emin, eval_emax):
        early = ev(t1, t2, s)
        if early.final:
            assert ev(t1, t2, 100).kind == early.kind
