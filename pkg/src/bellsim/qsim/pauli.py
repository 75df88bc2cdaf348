"""Real-weighted sums of Pauli strings and their expectation values.

Expectations stream over the amplitude vector per string (no dense matrix),
which keeps 20+ qubit systems tractable.  A Pauli string acts on a basis
index s as P|s> = phase(s) |s ^ x_mask| with

    x_mask = bits carrying X or Y,   z_mask = bits carrying Z or Y,
    phase(s) = i^{n_Y} * (-1)^{popcount(s & z_mask)}.

Dense construction is retained as an oracle for small systems.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .state import StateVector

_PAULI_1Q = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

_INDEX_CACHE: dict[int, np.ndarray] = {}


def _indices(n: int) -> np.ndarray:
    idx = _INDEX_CACHE.get(n)
    if idx is None:
        dtype = np.int32 if n < 31 else np.int64
        idx = np.arange(1 << n, dtype=dtype)
        _INDEX_CACHE[n] = idx
    return idx


def _string_masks(string: str) -> tuple[int, int, int]:
    """(x_mask, z_mask, n_Y); qubit q of the string is character q."""
    x_mask = z_mask = ny = 0
    for q, ch in enumerate(string):
        if ch == "X":
            x_mask |= 1 << q
        elif ch == "Y":
            x_mask |= 1 << q
            z_mask |= 1 << q
            ny += 1
        elif ch == "Z":
            z_mask |= 1 << q
        elif ch != "I":
            raise ValueError(f"invalid Pauli letter {ch!r}")
    return x_mask, z_mask, ny


def _parity_signs(n: int, z_mask: int) -> np.ndarray:
    """(-1)^popcount(s & z_mask) for all s, as float64."""
    bits = np.bitwise_count(_indices(n) & z_mask)
    return 1.0 - 2.0 * (bits & 1)


@dataclass
class PauliSum:
    """Hamiltonian/observable: list of (real coefficient, Pauli string)."""

    num_qubits: int
    terms: list[tuple[float, str]] = field(default_factory=list)

    def __post_init__(self):
        for coeff, string in self.terms:
            self._check_term(coeff, string)

    def _check_term(self, coeff: float, string: str) -> None:
        if len(string) != self.num_qubits:
            raise ValueError(
                f"string {string!r} has length {len(string)}, expected {self.num_qubits}"
            )
        if not np.isfinite(coeff):
            raise ValueError(f"non-finite coefficient {coeff}")
        _string_masks(string)

    def add_term(self, coeff: float, string: str) -> "PauliSum":
        self._check_term(coeff, string)
        self.terms.append((float(coeff), string))
        self._diag_cache = None
        return self

    def scaled(self, factor: float) -> "PauliSum":
        return PauliSum(self.num_qubits, [(factor * c, s) for c, s in self.terms])

    # -- streaming paths ----------------------------------------------------

    def apply(self, amps: np.ndarray) -> np.ndarray:
        """H @ amps without forming H.

        Diagonal terms are folded into one pass; strings flipping one or two
        qubits (with no Z elsewhere) use strided slice kernels, which avoids
        materializing index arrays for the 20+ qubit Hamiltonians.  Anything
        else falls back to the generic gather path.
        """
        n = self.num_qubits
        out = np.zeros_like(amps)
        diag = self._diagonal()
        if diag is not None:
            out += diag * amps
        for coeff, string in self.terms:
            x_mask, z_mask, ny = _string_masks(string)
            if x_mask == 0:
                continue  # already in the diagonal pass
            flips = [q for q in range(n) if (x_mask >> q) & 1]
            if len(flips) <= 2 and z_mask & ~x_mask == 0:
                _apply_flip_term(out, amps, coeff, flips, string)
            else:
                phase = (1j**ny) * coeff * _parity_signs(n, z_mask)
                out += (phase * amps)[_indices(n) ^ x_mask]
        return out

    _diag_cache: np.ndarray | None = field(default=None, repr=False, compare=False)

    def _diagonal(self) -> np.ndarray | None:
        if self._diag_cache is not None:
            return self._diag_cache
        n = self.num_qubits
        diag = None
        for coeff, string in self.terms:
            x_mask, z_mask, _ = _string_masks(string)
            if x_mask != 0:
                continue
            contrib = coeff * _parity_signs(n, z_mask)
            diag = contrib if diag is None else diag + contrib
        self._diag_cache = diag
        return diag

    def expectation(self, state: StateVector) -> float:
        """<psi|H|psi>; verifies the imaginary residue is negligible."""
        if state.num_qubits != self.num_qubits:
            raise ValueError(
                f"operator on {self.num_qubits} qubits, state on {state.num_qubits}"
            )
        amps = state.amplitudes
        val = np.vdot(amps, self.apply(amps))
        if abs(val.imag) > 1e-10:
            raise ValueError(f"expectation has imaginary residue {val.imag:.3e}")
        return float(val.real)

    # -- dense oracle --------------------------------------------------------

    def to_dense(self) -> np.ndarray:
        """2^N x 2^N matrix; oracle path, n <= 12 recommended."""
        dim = 1 << self.num_qubits
        out = np.zeros((dim, dim), dtype=np.complex128)
        for coeff, string in self.terms:
            out += coeff * dense_pauli_string(string)
        return out


def _apply_flip_term(out: np.ndarray, amps: np.ndarray, coeff: float, flips: list[int], string: str) -> None:
    """out += coeff * P @ amps for P flipping the one or two qubits in `flips`.

    Per flipped qubit q the source-bit factor is 1 for X and i(-1)^bit for Y;
    slices address the amplitudes directly, no index arrays.
    """

    def factors(q):
        return (1.0, 1.0) if string[q] == "X" else (1j, -1j)  # (bit 0, bit 1)

    if len(flips) == 1:
        q = flips[0]
        f0, f1 = factors(q)
        v = amps.reshape(-1, 2, 1 << q)
        o = out.reshape(-1, 2, 1 << q)
        o[:, 1, :] += coeff * f0 * v[:, 0, :]
        o[:, 0, :] += coeff * f1 * v[:, 1, :]
        return
    hi, lo = max(flips), min(flips)
    fh = factors(hi)
    fl = factors(lo)
    v = amps.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)
    o = out.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)
    for sh in (0, 1):
        for sl in (0, 1):
            o[:, 1 - sh, :, 1 - sl, :] += coeff * fh[sh] * fl[sl] * v[:, sh, :, sl, :]


def dense_pauli_string(string: str) -> np.ndarray:
    """Kronecker build honoring qubit0 = LSB (string char q is qubit q)."""
    m = np.array([[1.0 + 0j]])
    # higher qubits carry higher index bits, so each new factor goes first
    for ch in string:
        m = np.kron(_PAULI_1Q[ch], m)
    return m


def expectation_pauli_sum(state: StateVector, h: PauliSum) -> float:
    return h.expectation(state)
