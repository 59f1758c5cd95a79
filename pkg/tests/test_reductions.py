import random

import pytest
from hypothesis import given, settings, strategies as st

from ceiso.algebra import AG, CS, UF, EnumerationTrace, Identity, Presentation, decode_identity, free, trace_of
from ceiso.coding import tuple_code
from ceiso.harness import SuiteConfig, inclusion_chain, monotone_suites, run_reduction_suite
from ceiso.ordinals import OMEGA, code_of, omega_power, parse_ordinal, rank_of
from ceiso.reductions import (REGISTRY, AgnToEmin, ConstantTransformer, EminOrdinal, EminToCs1,
                              SaturateUpward, Uf1nToEmin, UToUf21, accfg_to_eqce, build,
                              check_monotone, collapse_positions, compose, run, torsion_code)


def codes(*cs, done=True):
    return EnumerationTrace.from_codes(cs, stabilized=done)


def test_emin_to_cs1_emits_shifted_power():
    out = run(EminToCs1(), codes(5), 4)
    assert out.elements() == {72}
    assert decode_identity(72, CS, 1) == Identity((6,), (7,))
    assert out.stabilized


def test_run_stabilizes_only_for_complete_inputs():
    assert not run(EminToCs1(), codes(5, done=False), 4).stabilized
    late = EnumerationTrace(((9, 5),), True)
    assert not run(EminToCs1(), late, 4).stabilized


def test_tuple_and_torsion_codes():
    assert tuple_code([3, 1, 2]) == 93
    assert torsion_code((2, 6), 2) == 22
    assert torsion_code((), 2) == 0


def test_forward_maps_on_free_algebras():
    assert run(Uf1nToEmin(2), trace_of(free(UF(1), 2)), 3).elements() == {8}
    assert run(AgnToEmin(2), trace_of(free(AG, 2)), 3).elements() == {2}


def test_emin_ordinal_examples():
    red = EminOrdinal(omega_power(1, 2), omega_power(2))
    src = code_of(parse_ordinal("w + 1"), omega_power(1, 2))
    (out,) = run(red, codes(src), 2).elements()
    assert rank_of(out, omega_power(2)) == parse_ordinal("w + 1")
    with pytest.raises(ValueError):
        EminOrdinal(omega_power(2), omega_power(1, 2))


def test_saturation_fills_codes_above_least():
    out = run(SaturateUpward(OMEGA), codes(3), 6)
    assert out.elements() == {3, 4, 5, 6}


def test_compose_order():
    both = compose(EminToCs1(), ConstantTransformer(7))
    assert run(both, codes(1), 2).elements() == {7}


def test_u_to_uf21_counts_and_positions():
    out = run(UToUf21(), codes(0), 3)
    assert len(out.elements()) == 50
    rels = tuple(decode_identity(c, UF(2), 1) for c in out.elements())
    assert collapse_positions(Presentation(UF(2), 1, rels), 3) == {0}


def test_build_rejects_unknown_names():
    with pytest.raises(KeyError, match="registered"):
        build("no-such-thing")
    for name in REGISTRY:
        assert build(name, 2) is not None


def test_registry_columns_follow_isomorphism():
    ag = AG
    p = Presentation(ag, 1, (Identity((2,), (0,)),))
    q = Presentation(ag, 1, (Identity((4,), (0,)), Identity((2,), (0,))))
    r = free(ag, 1)
    outs = accfg_to_eqce(ag, [(1, trace_of(p)), (1, trace_of(q)), (1, trace_of(r))], 4)
    assert outs[0].elements() == outs[1].elements()
    assert outs[0].elements() != outs[2].elements()


@pytest.mark.parametrize("name", [
    "saturate-upward", "cs1-to-emin", "cm1-to-emin", "emin-to-cs1", "emin-ordinal",
    "uf1n-to-emin", "emin-to-uf1n", "agn-to-emin", "emin-to-agn", "emin-omegan-to-csn",
    "csn-to-cmn", "cmn-to-csn1", "s2-to-any", "u-to-uf21"])
def test_small_suites_have_no_disagreement(name):
    report, _ = run_reduction_suite(name, SuiteConfig(seed=3), count=12)
    assert report.disagree == 0
    assert report.agree + report.inconclusive == 12


def test_constant_transformer_is_caught():
    report, _ = run_reduction_suite("emin-to-cs1", SuiteConfig(seed=1), count=30)
    assert report.disagree == 0
    from ceiso.harness import reduction_suites
    from ceiso.reductions import check_reduction
    _, src, tgt, make = reduction_suites(SuiteConfig())["emin-to-cs1"]
    bad = check_reduction(ConstantTransformer(), src, tgt, make(random.Random(0), 30), 64)
    assert bad.disagree > 0


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_monotone_on_inclusion_chains(seed):
    rng = random.Random(seed)
    for name, (red, kind) in monotone_suites().items():
        small, big = inclusion_chain(rng, kind)
        assert small.elements() <= big.elements()
        assert check_monotone(red, [(small, big)], 24).disagree == 0, name
