import numpy as np
import pytest

from bellsim.errors import TrainingAbortError
from bellsim.vqc import AdamState, adam_step


def test_first_step_is_signed_learning_rate():
    state = AdamState(learning_rate=0.07)
    grad = np.array([1e-3, -2e-2, 5.0])
    _, params = adam_step(state, grad, np.zeros(3))
    # bias-corrected first step: -lr * g / (|g| + eps) ~ -lr*sign(g)
    assert np.allclose(params, -0.07 * np.sign(grad), atol=1e-4)


def test_zero_gradient_fixed_point():
    state = AdamState(learning_rate=0.1)
    state, params = adam_step(state, np.zeros(2), np.array([1.5, -0.3]))
    assert np.array_equal(params, [1.5, -0.3])
    _, params = adam_step(state, np.zeros(2), params)
    assert np.array_equal(params, [1.5, -0.3])


def test_constant_gradient_monotone():
    state = AdamState(learning_rate=0.05)
    params = np.array([1.0])
    trail = [params[0]]
    for _ in range(5):
        state, params = adam_step(state, np.array([0.7]), params)
        trail.append(params[0])
    assert all(b < a for a, b in zip(trail, trail[1:]))


def test_nan_gradient_aborts():
    with pytest.raises(TrainingAbortError):
        adam_step(AdamState(), np.array([np.nan]), np.array([0.0]))


def test_shape_mismatch():
    with pytest.raises(ValueError):
        adam_step(AdamState(), np.zeros(2), np.zeros(3))


def test_moments_match_reference():
    # independent re-implementation of bias-corrected Adam
    rng = np.random.default_rng(0)
    params = rng.standard_normal(4)
    ref = params.copy()
    m = np.zeros(4)
    v = np.zeros(4)
    lr, b1, b2, eps = 0.1, 0.9, 0.999, 1e-8
    state = AdamState(learning_rate=lr)
    for t in range(1, 6):
        g = rng.standard_normal(4)
        m = b1 * m + (1 - b1) * g
        v = b2 * v + (1 - b2) * g * g
        ref = ref - lr * (m / (1 - b1**t)) / (np.sqrt(v / (1 - b2**t)) + eps)
        state, params = adam_step(state, g, params)
        assert np.allclose(params, ref, atol=1e-12)
