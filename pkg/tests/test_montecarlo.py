import math

import numpy as np
import pytest
from gmpy2 import mpq

from georecords import Mode, ModelParams, RecordQuery
from georecords.montecarlo import (
    McAccumulator,
    letters_from_uniform,
    mc_accumulate,
    mc_estimate,
    rth_records,
    sample_word,
)
from georecords.oracle import dp_oracle, records_of_word

HALF = ModelParams("1/2")


def test_inverse_transform_examples():
    assert letters_from_uniform([0.7, 0.2], 0.5).tolist() == [1, 3]
    u = np.linspace(0.0101, 0.999, 50)
    assert (letters_from_uniform(u, 0.01) == 1).all()
    assert letters_from_uniform([0.0], 0.5)[0] >= 1


def test_sample_word_is_seeded():
    a = sample_word(HALF, 20, np.random.default_rng(3))
    b = sample_word(HALF, 20, np.random.default_rng(3))
    assert a == b and len(a) == 20 and min(a) >= 1


def test_vectorised_records_match_scalar_extraction():
    rng = np.random.default_rng(11)
    words = letters_from_uniform(rng.random((300, 9)), 0.5)
    for mode in Mode:
        for r in (1, 2, 4):
            has, value, pos = rth_records(words, r, mode)
            for row, h, v, j in zip(words.tolist(), has, value, pos):
                recs = records_of_word(row, mode)
                assert h == (len(recs) >= r)
                if h:
                    assert (j, v) == recs[r - 1]


def test_pi_two_letters():
    pi, _, _ = mc_estimate(HALF, RecordQuery(2, 2, Mode.STRICT), 100_000, seed=1)
    assert abs(pi.mean - 1 / 3) <= 4 * pi.stderr
    assert pi.ci95_low == pytest.approx(pi.mean - 1.96 * pi.stderr)


def test_single_letter_position_is_one():
    for mode in Mode:
        _, value, pos = mc_estimate(HALF, RecordQuery(1, 1, mode), 1000, seed=2)
        assert pos.mean == 1 and pos.stderr == 0
        assert pos.conditioning_count == 1000


def test_unavailable_when_no_trial_qualifies():
    _, value, pos = mc_estimate(HALF, RecordQuery(9, 9, Mode.STRICT), 20, seed=0)
    assert not value.available and not pos.available
    assert value.conditioning_count == 0 and math.isnan(value.mean)


def test_seed_determinism_across_thread_counts():
    q = RecordQuery(64, 2, Mode.WEAK)
    runs = [mc_estimate(HALF, q, 70_000, seed=5, threads=t) for t in (1, 2, 4)]
    assert runs[0] == runs[1] == runs[2]
    assert mc_estimate(HALF, q, 70_000, seed=6) != runs[0]


def test_accumulators_merge_associatively():
    parts = [mc_accumulate(HALF, RecordQuery(16, 2), 5000, seed=s) for s in range(3)]
    assert (parts[0] + parts[1]) + parts[2] == parts[0] + (parts[1] + parts[2])
    total = parts[0] + parts[1] + parts[2]
    assert total.trials == 15000
    assert McAccumulator() + parts[0] == parts[0]


def test_letter_marginal():
    rng = np.random.Generator(np.random.Philox(1234))
    letters = letters_from_uniform(rng.random(200_000), 2 / 3)
    freq = (letters == 1).mean()
    sigma = math.sqrt((1 / 3) * (2 / 3) / len(letters))
    assert abs(freq - 1 / 3) < 4 * sigma


def test_ci_coverage():
    truth = float(dp_oracle(HALF, RecordQuery(4, 2, Mode.STRICT), eps=mpq(1, 10**15)).value_conditional)
    covered = 0
    for seed in range(100):
        _, value, _ = mc_estimate(HALF, RecordQuery(4, 2, Mode.STRICT), 2000, seed=seed)
        covered += value.ci95_low <= truth <= value.ci95_high
    assert covered >= 90


@pytest.mark.slow
def test_value_matches_dp_at_large_n():
    q = RecordQuery(2048, 2, Mode.STRICT)
    _, value, _ = mc_estimate(HALF, q, 100_000, seed=9)
    truth = float(dp_oracle(HALF, q).value_conditional)
    assert abs(value.mean - truth) <= 4 * value.stderr
