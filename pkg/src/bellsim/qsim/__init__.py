"""Exact statevector simulation: states, gates, Pauli expectations, sampling,
and ground-state solving."""

from .gates import (
    Circuit,
    GateOp,
    Slot,
    apply_gate,
    cnot_via_cz,
    gate_matrix_1q,
    inverse_circuit,
    prepare,
    run_circuit,
    rx_matrix,
    rz_matrix,
    u3_matrix,
)
from .ground import ground_energy, ground_energy_dense
from .pauli import PauliSum, dense_pauli_string, expectation_pauli_sum
from .sample import bits_to_indices, indices_to_bits, sample_bitstrings
from .state import (
    MAX_QUBITS,
    StateVector,
    antidiagonal_coherence,
    init_state,
    load_state,
    save_state,
)

__all__ = [
    "Circuit",
    "GateOp",
    "MAX_QUBITS",
    "PauliSum",
    "Slot",
    "StateVector",
    "antidiagonal_coherence",
    "apply_gate",
    "bits_to_indices",
    "cnot_via_cz",
    "dense_pauli_string",
    "expectation_pauli_sum",
    "gate_matrix_1q",
    "ground_energy",
    "ground_energy_dense",
    "indices_to_bits",
    "init_state",
    "inverse_circuit",
    "load_state",
    "prepare",
    "run_circuit",
    "rx_matrix",
    "rz_matrix",
    "sample_bitstrings",
    "save_state",
    "u3_matrix",
]
