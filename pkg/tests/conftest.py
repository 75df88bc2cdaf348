"""Shared fixtures and independent oracles.

The oracle helpers here deliberately avoid the package's gate kernels: they
move tensor axes with einsum-style reshapes so that agreement between the two
code paths is meaningful evidence.
"""

from __future__ import annotations

import numpy as np
import pytest

from bellsim.qsim import Circuit


# ---------------------------------------------------------------------------
# dense oracles (independent of bellsim.qsim kernels)

SQ2 = 1.0 / np.sqrt(2.0)
H2 = np.array([[1, 1], [1, -1]], dtype=complex) * SQ2
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)
PAULI = {"I": I2, "X": X2, "Y": Y2, "Z": Z2}


def oracle_u3(theta, phi, lam):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array(
        [[c, -np.exp(1j * lam) * s], [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]]
    )


def oracle_rz(theta):
    return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]])


def oracle_rx(theta):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def oracle_apply_1q(vec: np.ndarray, n: int, q: int, u: np.ndarray) -> np.ndarray:
    """Tensor-axis application; axis i of the reshaped state is qubit n-1-i."""
    t = vec.reshape([2] * n)
    axis = n - 1 - q
    t = np.tensordot(u, t, axes=([1], [axis]))
    t = np.moveaxis(t, 0, axis)
    return t.reshape(-1)


def oracle_apply_2q(vec: np.ndarray, n: int, qa: int, qb: int, u4: np.ndarray) -> np.ndarray:
    """u4 is indexed by (bit_qa, bit_qb) pairs: row = 2*a + b."""
    t = vec.reshape([2] * n)
    ax_a, ax_b = n - 1 - qa, n - 1 - qb
    t = np.moveaxis(t, (ax_a, ax_b), (0, 1))
    shape = t.shape
    t = (u4 @ t.reshape(4, -1)).reshape(shape)
    return np.moveaxis(t, (0, 1), (ax_a, ax_b)).reshape(-1)


CNOT4 = np.zeros((4, 4), dtype=complex)
for a in (0, 1):
    for b in (0, 1):
        CNOT4[2 * a + (b ^ a), 2 * a + b] = 1.0
CZ4 = np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)


def oracle_run(circuit: Circuit, params=None) -> np.ndarray:
    """Run a bound circuit through the oracle kernels, starting from |0...0>."""
    n = circuit.num_qubits
    vec = np.zeros(1 << n, dtype=complex)
    vec[0] = 1.0
    for kind, targets, angles in circuit.bind(params if params is not None else np.zeros(0)):
        if kind == "h":
            vec = oracle_apply_1q(vec, n, targets[0], H2)
        elif kind == "rz":
            vec = oracle_apply_1q(vec, n, targets[0], oracle_rz(angles[0]))
        elif kind == "rx":
            vec = oracle_apply_1q(vec, n, targets[0], oracle_rx(angles[0]))
        elif kind == "u3":
            vec = oracle_apply_1q(vec, n, targets[0], oracle_u3(*angles))
        elif kind == "cz":
            vec = oracle_apply_2q(vec, n, targets[0], targets[1], CZ4)
        elif kind == "cnot":
            vec = oracle_apply_2q(vec, n, targets[0], targets[1], CNOT4)
        else:
            raise AssertionError(kind)
    return vec


def oracle_pauli_dense(strings_and_coeffs, n: int) -> np.ndarray:
    out = np.zeros((1 << n, 1 << n), dtype=complex)
    for coeff, string in strings_and_coeffs:
        m = np.array([[1.0 + 0j]])
        for ch in string:
            m = np.kron(PAULI[ch], m)
        out = out + coeff * m
    return out


# ---------------------------------------------------------------------------
# circuits


def ghz_circuit(n: int, minus: bool = False) -> Circuit:
    c = Circuit(n)
    c.add("h", 0)
    if minus:
        c.add("rz", 0, angles=(np.pi,))
    for q in range(n - 1):
        c.add("cnot", q, q + 1)
    return c


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
