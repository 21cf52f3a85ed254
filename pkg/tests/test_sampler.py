import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subverse.sampler import (
    GenerationConfig,
    generate,
    generate_from_indices,
    sample_index,
    temperature_softmax,
)

finite_logits = st.lists(
    st.floats(min_value=-50, max_value=50, allow_nan=False),
    min_size=2, max_size=12,
).map(lambda xs: np.array(xs))

# Distinct logits on a 1e-3 grid: gaps below float resolution of exp() cannot
# survive any softmax, so order/entropy properties are fuzzed on values with
# representable gaps (model logits are O(1)-spaced anyway).
distinct_logits = st.tuples(
    st.sets(st.integers(min_value=-20_000, max_value=20_000), min_size=2, max_size=12),
    st.integers(min_value=0, max_value=11),
).map(lambda sk: np.roll(np.array(sorted(sk[0]), dtype=np.float64) / 1000.0, sk[1]))


def plain_softmax(z):
    z = np.asarray(z, dtype=np.float64)
    z = z - z.max()
    q = np.exp(z)
    return q / q.sum()


class TestTemperatureSoftmax:
    def test_symmetric_logits(self):
        assert np.allclose(temperature_softmax(np.zeros(2), 3.7), [0.5, 0.5])

    def test_t1_equals_plain_softmax_exactly(self):
        z = np.array([0.3, -2.0, 5.1, 0.0])
        assert (temperature_softmax(z, 1.0) == plain_softmax(z)).all()

    def test_worked_value(self):
        q = temperature_softmax(np.array([1.0, 2.0]), 0.5)
        assert q == pytest.approx([0.11920, 0.88080], abs=1e-5)

    def test_rejects_nonpositive_temperature(self):
        with pytest.raises(ValueError):
            temperature_softmax(np.zeros(3), 0.0)
        with pytest.raises(ValueError):
            temperature_softmax(np.zeros(3), -1.0)

    def test_rejects_nonfinite_logits(self):
        with pytest.raises(ValueError):
            temperature_softmax(np.array([1.0, np.inf]), 1.0)

    def test_low_temperature_concentrates(self):
        q = temperature_softmax(np.array([0.0, 1.0, 2.0]), 1e-3)
        assert q[2] >= 1 - 1e-6

    @given(finite_logits, st.floats(min_value=0.05, max_value=5.0))
    @settings(max_examples=200)
    def test_normalization_and_shift_invariance(self, z, t):
        q = temperature_softmax(z, t)
        assert abs(q.sum() - 1.0) < 1e-9
        assert (q >= 0).all()
        shifted = temperature_softmax(z + 11.3, t)
        assert np.abs(q - shifted).max() < 1e-9

    @given(distinct_logits)
    @settings(max_examples=100)
    def test_argmax_invariance_across_temperatures(self, z):
        ref = int(np.argmax(z))
        for t in (0.2, 0.8, 1.0, 1.4):
            assert int(np.argmax(temperature_softmax(z, t))) == ref

    def test_argmax_tie_broken_by_lowest_index(self):
        z = np.array([1.0, 3.0, 3.0])
        for t in (0.2, 1.0, 1.4):
            assert int(np.argmax(temperature_softmax(z, t))) == 1

    @given(distinct_logits)
    @settings(max_examples=100)
    def test_entropy_strictly_increases_with_t(self, z):
        def entropy(t):
            q = temperature_softmax(z, t)
            nz = q[q > 0]
            return float(-(nz * np.log(nz)).sum())

        values = [entropy(t) for t in (0.2, 0.5, 0.8, 1.0, 1.4)]
        assert all(b > a for a, b in zip(values, values[1:]))


class TestSampleIndex:
    def test_degenerate_distribution(self):
        rng = np.random.default_rng(0)
        assert all(sample_index(np.array([1.0, 0, 0]), rng) == 0 for _ in range(20))

    def test_deterministic_per_seed(self):
        q = np.array([0.2, 0.5, 0.3])
        draws_a = [sample_index(q, np.random.default_rng(42)) for _ in range(5)]
        draws_b = [sample_index(q, np.random.default_rng(42)) for _ in range(5)]
        assert draws_a == draws_b

    def test_empirical_frequency(self):
        q = np.array([0.25, 0.75])
        rng = np.random.default_rng(1234)
        draws = np.array([sample_index(q, rng) for _ in range(100_000)])
        assert np.mean(draws == 1) == pytest.approx(0.75, abs=0.01)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            sample_index(np.array([0.5, 0.6]), np.random.default_rng(0))


class TestGenerate:
    def test_determinism(self, tiny_model):
        cfg = GenerationConfig(prime_text="Woda i chleb", length=30,
                               temperature=0.8, rng_seed=9)
        a = generate(tiny_model.params, tiny_model.vocab, cfg)
        b = generate(tiny_model.params, tiny_model.vocab, cfg)
        assert a.text == b.text
        assert (a.indices == b.indices).all()

    def test_prime_is_prepended_not_regenerated(self, tiny_model):
        cfg = GenerationConfig(prime_text="Woda i chleb", length=5, rng_seed=0)
        result = generate(tiny_model.params, tiny_model.vocab, cfg)
        assert result.text.startswith("Woda i chleb")
        assert len(result.indices) == 5

    def test_out_of_vocab_prime_folds_to_unk(self, tiny_model):
        cfg = GenerationConfig(prime_text="xylofonzzz", length=3, rng_seed=0)
        result = generate(tiny_model.params, tiny_model.vocab, cfg)
        assert len(result.indices) == 3

    def test_empty_prime_rejected(self, tiny_model):
        cfg = GenerationConfig(prime_text="", length=3)
        with pytest.raises(ValueError):
            generate(tiny_model.params, tiny_model.vocab, cfg)

    def test_argmax_mode_ignores_temperature(self, tiny_model):
        prime = tiny_model.indices[:10]
        a = generate_from_indices(tiny_model.params, tiny_model.vocab, prime,
                                  length=20, argmax=True, rng_seed=1)
        b = generate_from_indices(tiny_model.params, tiny_model.vocab, prime,
                                  length=20, argmax=True, rng_seed=2)
        assert (a.indices == b.indices).all()
        assert a.step_entropies == [0.0] * 20

    def test_entropy_ordering_over_temperature_sweep(self, tiny_model):
        texts, entropies = [], []
        for t in (0.2, 0.8, 1.4):
            result = generate_from_indices(
                tiny_model.params, tiny_model.vocab, tiny_model.indices[:10],
                length=200, temperature=t, rng_seed=77)
            texts.append(result.text)
            entropies.append(result.mean_step_entropy())
        assert len(set(texts)) == 3
        assert entropies[0] < entropies[1] < entropies[2]

    def test_generation_config_validation(self):
        with pytest.raises(ValueError):
            GenerationConfig(length=0)
        with pytest.raises(ValueError):
            GenerationConfig(temperature=0.0)
        with pytest.raises(ValueError):
            GenerationConfig(mode="beam")
