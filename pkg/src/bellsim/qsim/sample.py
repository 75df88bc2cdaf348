"""Born-rule bitstring sampling."""

from __future__ import annotations

import numpy as np

from .state import StateVector


def sample_bitstrings(state: StateVector, shots: int, rng: np.random.Generator) -> np.ndarray:
    """i.i.d. samples from |amplitudes|^2.

    Returns a (shots, num_qubits) uint8 array; column q is the measured value
    of qubit q.  Deterministic for a given generator state.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    probs = state.probabilities()
    cdf = np.cumsum(probs)
    cdf[-1] = 1.0  # guard against rounding 1 - eps
    draws = rng.random(shots)
    idx = np.searchsorted(cdf, draws, side="right")
    return indices_to_bits(idx, state.num_qubits)


def indices_to_bits(idx: np.ndarray, num_qubits: int) -> np.ndarray:
    shifts = np.arange(num_qubits, dtype=np.int64)
    return ((np.asarray(idx, dtype=np.int64)[:, None] >> shifts[None, :]) & 1).astype(np.uint8)


def bits_to_indices(bits: np.ndarray) -> np.ndarray:
    weights = (1 << np.arange(bits.shape[1], dtype=np.int64))[None, :]
    return (bits.astype(np.int64) * weights).sum(axis=1)
