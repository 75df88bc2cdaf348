"""Bell operators: dense construction from settings, and the closed-form
Hamiltonians the in-scope models reduce to."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import CapacityError
from ..qsim.pauli import PauliSum
from ..qsim.state import StateVector, antidiagonal_coherence
from .expressions import BellExpression, MeasurementAssignment
from .lattice import HoneycombLattice
from .expressions import chain_weights, honeycomb_couplings

DENSE_PARTY_LIMIT = 12


def bell_operator_from_expression(
    expr: BellExpression, meas: MeasurementAssignment
) -> np.ndarray:
    """Dense Hermitian Bell operator: sum of coefficient-weighted tensor
    products of the assigned observables (identity where a party is absent)."""
    n = expr.num_parties
    if n > DENSE_PARTY_LIMIT:
        raise CapacityError(f"dense Bell operator supports <= {DENSE_PARTY_LIMIT} parties")
    if len(meas.observables) != n:
        raise ValueError("measurement assignment does not cover every party")
    eye = np.eye(2, dtype=np.complex128)
    out = np.zeros((1 << n, 1 << n), dtype=np.complex128)
    for key, coeff in expr.coefficients.items():
        term = np.array([[1.0 + 0j]])
        # party 0 is the least significant qubit, so it is the innermost factor
        for party, x in enumerate(key):
            factor = eye if x is None else meas.matrix(party, x)
            term = np.kron(factor, term)
        out += coeff * term
    return out


# ---------------------------------------------------------------------------
# closed-form Hamiltonians


def build_honeycomb_hamiltonian(lattice: HoneycombLattice, eps: float) -> PauliSum:
    """sqrt(2) * sum_links J(eps) (XX + ZZ).

    The sqrt(2) comes from building the Bell operator exactly from the
    measurement settings A = {Z, X}, B = {(Z+X)/sqrt2, (Z-X)/sqrt2}: the CHSH
    combination contracts to sqrt2 (XX + ZZ) per link, which puts the per-link
    quantum minimum -2 sqrt2 J below the per-link classical bound -2J.
    """
    weights = honeycomb_couplings(lattice, eps)
    n = lattice.num_sites
    h = PauliSum(n, [])
    for (a, b, _), w in zip(lattice.links, weights):
        for letter in ("X", "Z"):
            s = ["I"] * n
            s[a] = s[b] = letter
            h.add_term(np.sqrt(2.0) * w, "".join(s))
    return h


def honeycomb_classical_bound(lattice: HoneycombLattice, eps: float) -> float:
    return -2.0 * sum(honeycomb_couplings(lattice, eps))


def build_chain_hamiltonian(n: int, delta: float, eps: float) -> PauliSum:
    """XXZ chain sum_i J_i (XX + YY + delta ZZ), J_i = (4/sqrt3)(1 - (-1)^i eps)."""
    weights = chain_weights(n, eps)
    h = PauliSum(n, [])
    for link, w in enumerate(weights):
        j = 4.0 / np.sqrt(3.0) * w
        for letter, scale in (("X", 1.0), ("Y", 1.0), ("Z", delta)):
            s = ["I"] * n
            s[link] = s[link + 1] = letter
            h.add_term(j * scale, "".join(s))
    return h


def classical_bound_chain(n: int, delta: float) -> float:
    """-(n-1)(2|d| + |d+2| + |d-2|); requires odd n so the eps weights cancel."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"chain length must be odd and >= 3, got {n}")
    return -(n - 1) * (2 * abs(delta) + abs(delta + 2) + abs(delta - 2))


@dataclass(frozen=True)
class AntidiagonalOperator:
    """scale * (|0..0><1..1| + |1..1><0..0|) on num_qubits qubits.

    The depth-witness Bell operator is this with scale = 2^((N-1)/2).  Its
    expectation is evaluated from the extreme antidiagonal coherence, never
    from a Pauli expansion (which would need 2^(N-1) strings).
    """

    num_qubits: int
    scale: float

    def expectation(self, state: StateVector) -> float:
        if state.num_qubits != self.num_qubits:
            raise ValueError(
                f"operator on {self.num_qubits} qubits, state on {state.num_qubits}"
            )
        return 2.0 * self.scale * antidiagonal_coherence(state).real

    def to_dense(self) -> np.ndarray:
        if self.num_qubits > DENSE_PARTY_LIMIT:
            raise CapacityError("dense form too large")
        dim = 1 << self.num_qubits
        out = np.zeros((dim, dim), dtype=np.complex128)
        out[0, dim - 1] = self.scale
        out[dim - 1, 0] = self.scale
        return out


def depth_witness_operator(n: int) -> AntidiagonalOperator:
    """Bell operator shared by the Svetlichny and Mermin settings."""
    return AntidiagonalOperator(n, 2.0 ** ((n - 1) / 2.0))
