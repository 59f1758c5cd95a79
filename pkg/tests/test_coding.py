from hypothesis import given, strategies as st

from ceiso.coding import pair, tuple_code, tuple_decode, unpair, unzigzag, zigzag

nat = st.integers(min_value=0, max_value=10 ** 6)


def test_pair_values():
    assert pair(2, 3) == 18
    assert pair(2, 1) == 7
    assert [pair(0, 0), pair(1, 0), pair(0, 1)] == [0, 1, 2]


@given(nat, nat)
def test_unpair_inverts_pair(a, b):
    assert unpair(pair(a, b)) == (a, b)


@given(nat, nat)
def test_pair_strictly_monotone_in_each_argument(a, b):
    assert pair(a + 1, b) > pair(a, b)
    assert pair(a, b + 1) > pair(a, b)


@given(st.lists(st.integers(min_value=0, max_value=50), max_size=5))
def test_tuple_code_round_trip(values):
    assert tuple_decode(tuple_code(values), len(values)) == tuple(values)


def test_zigzag_order():
    assert [zigzag(z) for z in (0, -1, 1, -2, 2)] == [0, 1, 2, 3, 4]


@given(st.integers(min_value=-10 ** 9, max_value=10 ** 9))
def test_zigzag_round_trip(z):
    assert unzigzag(zigzag(z)) == z
