"""Readout assignment errors: channel emulation, per-shot estimators, and
tensor-product mitigation.

The confusion matrix of qubit q is A_q = [[1-e0, e1], [e0, 1-e1]] (column =
true state, row = assigned state).  Mitigation never builds a 2^N histogram:
for an observable that factorizes per qubit with outcome values o_q(bit), the
corrected estimator evaluates prod_q [(A_q^-1)^T o_q](bit_q) shot by shot.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ReadoutModelError


@dataclass(frozen=True)
class ReadoutModel:
    e0: np.ndarray  # per qubit, P(assign 1 | true 0)
    e1: np.ndarray  # per qubit, P(assign 0 | true 1)

    def __post_init__(self):
        object.__setattr__(self, "e0", np.atleast_1d(np.asarray(self.e0, dtype=float)))
        object.__setattr__(self, "e1", np.atleast_1d(np.asarray(self.e1, dtype=float)))
        if self.e0.shape != self.e1.shape:
            raise ReadoutModelError("e0 and e1 must have one entry per qubit")
        if np.any(self.e0 < 0) or np.any(self.e1 < 0) or np.any(self.e0 >= 0.5) or np.any(
            self.e1 >= 0.5
        ):
            raise ReadoutModelError("error rates must satisfy 0 <= e < 0.5")

    @classmethod
    def symmetric(cls, n: int, e: float) -> "ReadoutModel":
        return cls(np.full(n, e), np.full(n, e))

    @property
    def num_qubits(self) -> int:
        return len(self.e0)

    def confusion_matrix(self, q: int) -> np.ndarray:
        e0, e1 = self.e0[q], self.e1[q]
        return np.array([[1 - e0, e1], [e0, 1 - e1]])

    def inverse_factors(self, observable: np.ndarray) -> np.ndarray:
        """Per-qubit corrected outcome values g_q = (A_q^-1)^T o_q, shape (n, 2).

        observable[q] = (value on assigned 0, value on assigned 1).
        """
        dets = (1.0 - self.e0) * (1.0 - self.e1) - self.e0 * self.e1  # = 1 - e0 - e1
        if np.any(dets <= 0):
            raise ReadoutModelError("confusion matrix singular: e0 + e1 >= 1")
        out = np.empty((self.num_qubits, 2))
        for q in range(self.num_qubits):
            inv = np.array(
                [[1 - self.e1[q], -self.e1[q]], [-self.e0[q], 1 - self.e0[q]]]
            ) / dets[q]
            out[q] = inv.T @ observable[q]
        return out


def apply_readout_error(bits: np.ndarray, model: ReadoutModel, rng: np.random.Generator) -> np.ndarray:
    """Flip each assigned bit independently: 0->1 with e0, 1->0 with e1."""
    if bits.shape[1] != model.num_qubits:
        raise ValueError(f"bits have {bits.shape[1]} qubits, model has {model.num_qubits}")
    draws = rng.random(bits.shape)
    flip_prob = np.where(bits == 0, model.e0[None, :], model.e1[None, :])
    return (bits ^ (draws < flip_prob)).astype(np.uint8)


def product_estimate(bits: np.ndarray, observable: np.ndarray) -> tuple[float, float]:
    """Mean and standard error of prod_q observable[q][bit_q] over shots.

    For the +-1 parity observable this reproduces (M+ - M-)/M with
    std = 2 sqrt(p(1-p)/M); for the 0...0 indicator it is the ground-state
    frequency with its binomial standard error.
    """
    nq = bits.shape[1]
    per_shot = observable[np.arange(nq), bits.astype(np.int64)].prod(axis=1)
    m = len(per_shot)
    value = float(per_shot.mean())
    std = float(per_shot.std(ddof=0) / np.sqrt(m))
    return value, std


def mitigate_readout(
    bits: np.ndarray, model: ReadoutModel, observable: np.ndarray
) -> tuple[float, float]:
    """Readout-corrected product-observable estimate from assigned bitstrings."""
    if bits.shape[1] != model.num_qubits:
        raise ValueError(f"bits have {bits.shape[1]} qubits, model has {model.num_qubits}")
    corrected = model.inverse_factors(np.asarray(observable, dtype=float))
    return product_estimate(bits, corrected)


def parity_observable(n: int) -> np.ndarray:
    """(+1, -1) per qubit: the product is the parity eigenvalue of the string."""
    return np.tile(np.array([1.0, -1.0]), (n, 1))


def ground_indicator_observable(n: int) -> np.ndarray:
    """(1, 0) per qubit: the product indicates the all-zeros string."""
    return np.tile(np.array([1.0, 0.0]), (n, 1))
