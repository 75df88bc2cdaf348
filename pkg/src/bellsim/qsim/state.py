"""State vectors over N qubits.

Convention used everywhere in this package: qubit 0 is the least significant
bit of the amplitude index, i.e. amplitude ``amps[i]`` belongs to the basis
state whose qubit-q value is ``(i >> q) & 1``.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from ..errors import CapacityError

# 2^26 amplitudes (1 GiB complex128) is the hard ceiling; anything above is
# refused rather than silently thrashing.
MAX_QUBITS = 26


@dataclass
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray  # complex128, length 2**num_qubits

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def fidelity_with(self, other: "StateVector") -> float:
        """|<self|other>|^2, insensitive to global phase."""
        return float(np.abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)


def init_state(n: int) -> StateVector:
    """Product state |0...0> on n qubits."""
    if not (1 <= n <= MAX_QUBITS):
        raise CapacityError(f"qubit count {n} outside supported range 1..{MAX_QUBITS}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(n, amps)


def antidiagonal_coherence(state: StateVector) -> complex:
    """Expectation of the extreme antidiagonal matrix element |0..0><1..1|.

    Equals conj(amps[0]) * amps[2^N - 1].  The energy of the depth-witness
    operator 2^((N-1)/2)(|0..0><1..1| + h.c.) is 2^((N+1)/2) * Re of this.
    """
    return complex(np.conj(state.amplitudes[0]) * state.amplitudes[-1])


def save_state(state: StateVector, path) -> None:
    """Debug snapshot: 8-byte LE qubit count, then interleaved (re, im) f64 LE."""
    inter = np.empty(2 * len(state.amplitudes), dtype="<f8")
    inter[0::2] = state.amplitudes.real
    inter[1::2] = state.amplitudes.imag
    with open(path, "wb") as fh:
        fh.write(struct.pack("<Q", state.num_qubits))
        fh.write(inter.tobytes())


def load_state(path) -> StateVector:
    with open(path, "rb") as fh:
        (n,) = struct.unpack("<Q", fh.read(8))
        if not (1 <= n <= MAX_QUBITS):
            raise CapacityError(f"snapshot claims {n} qubits")
        raw = np.frombuffer(fh.read(), dtype="<f8")
    if len(raw) != 2 << n:
        raise ValueError(f"snapshot payload has {len(raw)} floats, expected {2 << n}")
    amps = raw[0::2] + 1j * raw[1::2]
    return StateVector(int(n), np.ascontiguousarray(amps, dtype=np.complex128))
