import random

import pytest

from ceiso.algebra import AG, CS, UF
from ceiso.harness import (SuiteConfig, criterion_gamma, criterion_monotone, criterion_registry,
                           criterion_round_trips, criterion_shift, criterion_snf, criterion_witness,
                           emin_pair, int_set, random_ag, random_cs, random_matrix,
                           random_uf1, run_criteria, shift_pair, snf_violations, with_seed)
from ceiso.ordinals import OMEGA


def test_config_defaults_and_override():
    cfg = SuiteConfig()
    assert (cfg.horizon, cfg.box, cfg.degree, cfg.derivation) == (64, 8, 3, 6)
    assert cfg.count(200) == 200
    assert SuiteConfig(pairs=7).count(200) == 7
    assert with_seed(cfg, 9).seed == 9


def test_generators_are_seeded():
    def draw(seed):
        rng = random.Random(seed)
        return (random_cs(rng, CS, 2), random_ag(rng, 3), random_uf1(rng, 2),
                emin_pair(rng, OMEGA), shift_pair(rng), random_matrix(rng))
    assert draw(5) == draw(5)
    assert draw(5) != draw(6)


def test_generated_instances_are_well_formed():
    rng = random.Random(2)
    for _ in range(50):
        assert random_cs(rng, CS, 2).variety == CS
        assert random_ag(rng, 2).variety == AG
        assert random_uf1(rng, 3).variety == UF(1)
        a, b = shift_pair(rng)
        assert isinstance(a, frozenset) and isinstance(b, frozenset)
        assert isinstance(int_set(rng), frozenset)


def test_snf_violations_flags_bad_input():
    assert snf_violations([[2, 4], [6, 8]]) == []
    assert snf_violations([[0, 0], [0, 0]]) == []


@pytest.mark.parametrize("criterion", [
    criterion_witness,
    lambda cfg: criterion_round_trips(cfg, count=10),
    lambda cfg: criterion_gamma(cfg, count=50),
    lambda cfg: criterion_monotone(cfg, count=10),
    lambda cfg: criterion_snf(cfg, count=50),
    lambda cfg: criterion_shift(cfg, count=10),
    lambda cfg: criterion_registry(cfg, count=5),
])
def test_reduced_criteria_pass_on_other_seeds(criterion):
    for seed in (1, 2):
        result = criterion(SuiteConfig(seed=seed))
        assert result.passed, result.summary


def test_parallel_runner_keeps_order():
    cfg = SuiteConfig(pairs=5)
    serial = [r.name for r in run_criteria([8, 1], cfg)]
    parallel = [r.name for r in run_criteria([8, 1], cfg, workers=2)]
    assert serial == parallel == ["snf-exactness", "witness-regression"]
