import math

import numpy as np
import pytest

from src.geometry import AngleTriple, f_values, strength_values
from src.integrate import probability
from src.sampling import estimate, make_rng, sample_triple, sample_triples, spawn_rngs

REPORTED = 0.7867


def test_make_rng_is_pcg64_and_deterministic():
    one, two = make_rng(11), make_rng(11)
    assert isinstance(one.bit_generator, np.random.PCG64)
    assert np.array_equal(one.uniform(size=8), two.uniform(size=8))


def test_spawned_streams_are_distinct():
    rngs = spawn_rngs(5, 3)
    draws = [r.uniform(size=4) for r in rngs]
    assert not np.array_equal(draws[0], draws[1])
    again = [r.uniform(size=4) for r in spawn_rngs(5, 3)]
    for a, b in zip(draws, again):
        assert np.array_equal(a, b)


def test_sample_triple_valid_and_reproducible():
    first = sample_triple(make_rng(3))
    assert isinstance(first, AngleTriple)
    assert first.alpha + first.beta + first.gamma < math.pi
    assert sample_triple(make_rng(3)) == first


def test_sample_triples_acceptance_rate():
    triples, proposals = sample_triples(make_rng(1), 20000)
    assert triples.shape == (20000, 3)
    assert np.all(triples > 0.0)
    assert np.all(triples.sum(axis=1) < math.pi)
    # P(U1 + U2 + U3 < pi) = 1/6 for U ~ uniform(0, pi)
    assert 20000 / proposals == pytest.approx(1.0 / 6.0, abs=0.016)


def test_sample_triples_uniform_on_simplex():
    triples, _ = sample_triples(make_rng(2), 20000)
    # each coordinate of a uniform point of the simplex has mean pi/4
    np.testing.assert_allclose(triples.mean(axis=0), np.full(3, math.pi / 4), atol=0.03)


def test_same_seed_same_estimate():
    assert estimate(5000, seed=9) == estimate(5000, seed=9)
    assert estimate(5000, seed=9).proposals != estimate(5000, seed=10).proposals


def test_estimate_fields():
    result = estimate(5000, seed=4)
    assert result.samples == 5000 and result.seed == 4 and result.streams == 1
    assert result.std_error == pytest.approx(math.sqrt(result.p_hat * (1 - result.p_hat) / 5000))
    assert result.conditional_samples + result.obtuse_samples == 5000
    assert result.conditional_p_hat * result.conditional_samples == pytest.approx(result.p_hat * 5000)
    out = result.to_dict()
    assert out["acceptance_rate"] == result.samples / result.proposals


@pytest.mark.parametrize("samples,streams", [(0, 1), (-3, 1), (2.5, 1), (10, 0)])
def test_estimate_rejects_bad_arguments(samples, streams):
    with pytest.raises(ValueError):
        estimate(samples, seed=1, streams=streams)


def test_estimate_near_reported_value():
    result = estimate(20000, seed=2024)
    assert abs(result.p_hat - REPORTED) < 4.0 * result.std_error
    assert result.obtuse_successes == 0


def test_streams_independent_of_thread_count():
    one = estimate(6000, seed=3, streams=4, threads=1)
    many = estimate(6000, seed=3, streams=4, threads=4)
    assert one == many
    assert one.samples == 6000 and one.streams == 4


def test_f_sign_agrees_with_strength_on_samples():
    triples, _ = sample_triples(make_rng(8), 20000)
    al, be, ga = triples.T
    keep = (ga > np.maximum(al, be)) & (ga < math.pi / 2)
    f = f_values(al[keep], be[keep], ga[keep])
    s = strength_values(al[keep], be[keep], ga[keep])
    clear = (np.abs(f) > 1e-8) & (np.abs(s) > 1e-12)
    assert np.count_nonzero(clear) > 1000
    assert np.array_equal(f[clear] > 0.0, s[clear] > 0.0)


@pytest.mark.slow
def test_million_samples_match_integration():
    result = estimate(1_000_000, seed=20240601)
    reference = probability(512, 512)
    assert abs(result.p_hat - reference.estimate) < 4.0 * result.std_error + reference.bounds.width
    assert result.conditional_p_hat == pytest.approx(0.90, abs=0.005)


@pytest.mark.slow
def test_default_seed_matches_certified_midpoint():
    result = estimate(10**6, seed=42)
    reference = probability(2048, 2048)
    assert result.samples == 10**6 and result.obtuse_successes == 0
    assert abs(result.p_hat - reference.estimate) <= 4.0 * result.std_error
