import numpy as np
import pytest
from scipy.stats import chisquare

from bellsim.qsim import bits_to_indices, init_state, prepare, sample_bitstrings

from conftest import ghz_circuit


def test_deterministic_state():
    st = init_state(3)
    bits = sample_bitstrings(st, 50, np.random.default_rng(0))
    assert bits.shape == (50, 3)
    assert not bits.any()


def test_bell_pair_frequency():
    st = prepare(ghz_circuit(2))
    bits = sample_bitstrings(st, 100_000, np.random.default_rng(7))
    idx = bits_to_indices(bits)
    assert set(np.unique(idx)) <= {0, 3}
    f00 = np.mean(idx == 0)
    assert abs(f00 - 0.5) < 0.01  # ~6 sigma of binomial


def test_ghz4_support():
    st = prepare(ghz_circuit(4))
    idx = bits_to_indices(sample_bitstrings(st, 100_000, np.random.default_rng(3)))
    assert set(np.unique(idx)) == {0, 15}


def test_same_seed_same_samples():
    st = prepare(ghz_circuit(3))
    a = sample_bitstrings(st, 1000, np.random.default_rng(42))
    b = sample_bitstrings(st, 1000, np.random.default_rng(42))
    assert np.array_equal(a, b)


def test_shots_validation():
    with pytest.raises(ValueError):
        sample_bitstrings(init_state(1), 0, np.random.default_rng(0))


@pytest.mark.parametrize("n", [2, 4, 6])
def test_chi_square_against_born_rule(n, rng):
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    amps /= np.linalg.norm(amps)
    st = init_state(n)
    st.amplitudes[:] = amps
    shots = 100_000
    idx = bits_to_indices(sample_bitstrings(st, shots, np.random.default_rng(n)))
    observed = np.bincount(idx, minlength=1 << n)
    expected = st.probabilities() * shots
    _, p = chisquare(observed, expected)
    assert p > 1e-4
