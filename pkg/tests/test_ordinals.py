import pytest
from hypothesis import given, strategies as st

from ceiso.ordinals import (OMEGA, ZERO, Ordinal, add_absorb, code_of, compare, make,
                            omega_power, parse_ordinal, rank_of)

small = st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=4).map(Ordinal.from_coefficients)


def test_compare_examples():
    assert compare(ZERO, ZERO) == 0
    assert compare(parse_ordinal("w*7 + 22"), omega_power(2)) == -1
    assert compare(omega_power(2), parse_ordinal("w*100")) == 1


def test_make_and_absorption():
    assert make([(1, 7), (0, 22)]).terms == ((1, 7), (0, 22))
    assert add_absorb(Ordinal.of(5), OMEGA) == OMEGA
    assert add_absorb(parse_ordinal("w*2"), Ordinal.of(3)) == parse_ordinal("w*2 + 3")


def test_parse_and_render():
    assert str(parse_ordinal("ω^2*3 + ω + 4")) == "w^2*3 + w + 4"
    with pytest.raises(ValueError):
        parse_ordinal("w^")


def test_codes_below_omega_are_identity():
    assert all(code_of(Ordinal.of(k)) == k and rank_of(k) == Ordinal.of(k) for k in range(50))


def test_frozen_codes():
    assert code_of(parse_ordinal("w*2"), omega_power(2)) == 3
    assert code_of(parse_ordinal("w*3"), omega_power(2)) == 6
    assert code_of(Ordinal.of(5), omega_power(2)) == 20
    assert code_of(parse_ordinal("w^2*2 + w + 3"), omega_power(3)) == 58


def test_round_trip_codes_below_omega_cubed():
    bound = omega_power(3)
    assert all(code_of(rank_of(c, bound), bound) == c for c in range(10 ** 4))


def test_finite_bound_rejects_large():
    with pytest.raises(ValueError):
        code_of(OMEGA, omega_power(1, 1))


@given(small, small)
def test_comparison_is_total_and_antisymmetric(a, b):
    assert (a < b) + (a == b) + (b < a) == 1


@given(small)
def test_code_round_trip_property(o):
    bound = omega_power(4)
    assert rank_of(code_of(o, bound), bound) == o
