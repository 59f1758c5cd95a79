import pytest
from hypothesis import given, strategies as st

from ceiso.algebra import (AG, CM, CS, SETS, UF, EnumerationTrace, Identity, ParseError,
                           Presentation, UnmappedCode, UTerm, decode_identity, encode_identity,
                           free, merge, parse_identity, parse_presentation, parse_term,
                           parse_trace, parse_value, render, render_presentation, render_trace,
                           snapshot_at, term_code, term_decode, trace_of)


def test_parse_terms():
    assert parse_value("f1(f2(x0))", UF(2), 1) == UTerm(0, (1, 2))
    assert parse_value("x0^2 x1^3", CS, 2) == (2, 3)
    assert parse_value("x0", CS, 1) == (1,)


def test_normal_forms():
    assert parse_value("x1 x0 x1", CS, 2) == (1, 2)
    assert parse_value("e", CM, 2) == (0, 0)
    assert parse_value("x0 - x1 - x1", AG, 2) == (1, -2)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as info:
        parse_term("x0 ? x1", CS, 2)
    assert info.value.position == 3
    with pytest.raises(ParseError):
        parse_term("x5", CS, 2)
    with pytest.raises(ParseError):
        parse_term("e", CS, 1)
    with pytest.raises(ParseError):
        parse_term("f2(x0)", UF(1), 1)


def test_render_round_trip():
    for text, variety, n in [("x0^2 x1", CS, 2), ("3*x0 - x1", AG, 2), ("f1(f2(x0))", UF(2), 1)]:
        t = parse_term(text, variety, n)
        assert parse_term(render(t), variety, n).node == t.node


def test_frozen_term_codes():
    assert term_code((2, 3), CS, 2) == 16
    assert term_code((0, 0), CM, 2) == 0
    assert term_code((1, -2), AG, 2) == 20
    assert encode_identity(Identity((5,), (6,)), CS, 1) == 50


def test_decode_zero_is_first_identity():
    ident = decode_identity(0, CS, 1)
    assert ident == Identity((1,), (1,))


def test_sets_code_space():
    idents = [decode_identity(c, SETS, 2) for c in range(4)]
    assert idents == [Identity(UTerm(a), UTerm(b)) for a in range(2) for b in range(2)]
    with pytest.raises(UnmappedCode):
        decode_identity(7, SETS, 2)


vec3 = st.tuples(*[st.integers(0, 6)] * 3).filter(lambda v: sum(v) >= 1)


@given(vec3, vec3)
def test_cs_identity_round_trip(a, b):
    ident = Identity(a, b)
    assert decode_identity(encode_identity(ident, CS, 3), CS, 3) == ident


@given(st.integers(0, 10 ** 12))
def test_term_codes_are_bijective(code):
    for variety, n in [(CS, 2), (CM, 3), (AG, 2), (UF(2), 1), (UF(3), 2)]:
        assert term_code(term_decode(code, variety, n), variety, n) == code


@given(st.integers(0, 10 ** 5))
def test_unary_codes_are_bijective(code):
    # one symbol: the code grows linearly with the depth of the term
    assert term_code(term_decode(code, UF(1), 2), UF(1), 2) == code


def test_term_order_by_size():
    sizes = [sum(abs(a) for a in term_decode(c, AG, 2)) for c in range(200)]
    assert sizes == sorted(sizes)


def test_snapshots_and_traces():
    empty = EnumerationTrace.from_codes([])
    assert snapshot_at(empty, 5, CS, 2).is_free()
    code = encode_identity(Identity((1,), (2,)), CS, 1)
    t = EnumerationTrace(((0, code),), True)
    assert snapshot_at(t, 0, CS, 1).relations == (Identity((1,), (2,)),)
    assert t.complete_at(0) and not t.prefix(0).complete_at(0)


def test_trace_file_round_trip():
    t = EnumerationTrace(((0, 5), (0, 7), (3, 2)), True)
    assert parse_trace(render_trace(t)) == t
    with pytest.raises(ParseError):
        parse_trace("0 5\nstabilized\n1 2\n")
    with pytest.raises(ParseError):
        parse_trace("3 1\n1 2\n")


def test_presentation_file_round_trip():
    text = "# comment\nvariety cm\ngenerators 2\nrel x0^2 = x0  # idempotent\nrel x1 = e\n"
    p = parse_presentation(text)
    assert p.relations == (Identity((2, 0), (1, 0)), Identity((0, 1), (0, 0)))
    assert parse_presentation(render_presentation(p)) == p
    with pytest.raises(ParseError):
        parse_presentation("variety cs\nrel x0 = x0\n")


def test_merge():
    p = free(CS, 2)
    assert merge(p, []) == p
    assert merge(p, [Identity((1, 0), (0, 1))]).relations == (Identity((1, 0), (0, 1)),)


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation(CS, 2, (Identity((0, 0), (1, 0)),))
    with pytest.raises(ValueError):
        Presentation(CS, 0)


def test_trace_of_enumerates_relations_in_order():
    p = Presentation(CS, 1, (Identity((2,), (3,)), Identity((1,), (4,))))
    t = trace_of(p)
    assert [decode_identity(c, CS, 1) for c in t.elements(0)] == [p.relations[0]]
    assert t.last_stage == 1
