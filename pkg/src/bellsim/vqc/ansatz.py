"""Variational ansatz builders.

Three families:
  honeycomb    three blocks (r, b, g), each a Hadamard layer plus a
               CNOT-RZ-CNOT entangler on every link of the block's color;
               one parameter per link.
  chain        hardware-style layers: U3(pi/2, 0, lam) on every qubit with
               lam free (virtual-Z parameterization), then CZ on the
               odd-pair layer and CZ on the even-pair layer.
  hierarchical GHZ ladder grown two qubits per phase; each sub-circuit is a
               fully parameterized U3 on both new qubits followed by CNOTs
               chaining them to the boundary qubit of the previous block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..bell.lattice import HoneycombLattice
from ..qsim.gates import Circuit

SLOTS_PER_HIERARCHICAL_PHASE = 6


def build_honeycomb_ansatz(lattice: HoneycombLattice, rz: str = "links") -> Circuit:
    """Three blocks (r, b, g), each a Hadamard layer plus a CNOT-sandwiched
    RZ entangler on the block's color links; CNOT control sits on the
    A-sublattice qubit.

    rz="links" puts one RZ slot on the B qubit of every link (parameter count
    = link count).  That form compiles to commuting ZZ rotations and turns
    out to be too rigid to push the energy below the classical bound even on
    small patches, so rz="sites" widens the entangler to an RZ slot on every
    qubit between the CNOT layers (parameter count = 3 * num_sites); training
    uses the wide form.
    """
    if rz not in ("links", "sites"):
        raise ValueError(f"rz must be 'links' or 'sites', got {rz!r}")
    c = Circuit(lattice.num_sites)
    for color in ("r", "b", "g"):
        for q in range(lattice.num_sites):
            c.add("h", q)
        links = [(a, b) for a, b, link_color in lattice.links if link_color == color]
        if rz == "links":
            for a, b in links:
                c.add("cnot", a, b)
                c.add("rz", b, angles=(c.new_slot(),))
                c.add("cnot", a, b)
        else:
            for a, b in links:
                c.add("cnot", a, b)
            for q in range(lattice.num_sites):
                c.add("rz", q, angles=(c.new_slot(),))
            for a, b in links:
                c.add("cnot", a, b)
    c.validate()
    return c


def build_chain_ansatz(n: int, layers: int) -> Circuit:
    """layers * n parameters; odd-pair CZs couple qubits (0,1), (2,3), ...,
    even-pair CZs couple (1,2), (3,4), ...  The first layer's lambdas act on
    |0> and are inert, mirroring the virtual-Z hardware picture."""
    if n < 2 or layers < 1:
        raise ValueError(f"need n >= 2 and layers >= 1, got n={n}, layers={layers}")
    c = Circuit(n)
    for _ in range(layers):
        for q in range(n):
            c.add("u3", q, angles=(np.pi / 2, 0.0, c.new_slot()))
        for q in range(0, n - 1, 2):
            c.add("cz", q, q + 1)
        for q in range(1, n - 1, 2):
            c.add("cz", q, q + 1)
    c.validate()
    return c


def build_hierarchical_ansatz(phase: int) -> Circuit:
    """Sub-circuits 1..phase on 2*phase qubits (phase <= 12).

    Sub-circuit j: U3 (3 slots) on each of qubits 2j-2 and 2j-1, then for
    j = 1 a CNOT(0 -> 1), and for j >= 2 CNOT(2j-3 -> 2j-2) followed by
    CNOT(2j-2 -> 2j-1), extending the entangled block by two qubits.
    """
    if not (1 <= phase <= 12):
        raise ValueError(f"phase must lie in 1..12, got {phase}")
    c = Circuit(2 * phase)
    for j in range(1, phase + 1):
        qa, qb = 2 * j - 2, 2 * j - 1
        c.add("u3", qa, angles=(c.new_slot(), c.new_slot(), c.new_slot()))
        c.add("u3", qb, angles=(c.new_slot(), c.new_slot(), c.new_slot()))
        if j == 1:
            c.add("cnot", qa, qb)
        else:
            c.add("cnot", qa - 1, qa)
            c.add("cnot", qa, qb)
    c.validate()
    return c


def hierarchical_slots(phase: int) -> range:
    """Parameter slots owned by sub-circuit `phase`."""
    return range(
        SLOTS_PER_HIERARCHICAL_PHASE * (phase - 1), SLOTS_PER_HIERARCHICAL_PHASE * phase
    )


@dataclass
class AnsatzSpec:
    """Declarative ansatz choice, resolvable to a Circuit."""

    family: str  # "honeycomb" | "chain" | "hierarchical"
    lattice: HoneycombLattice | None = None
    num_qubits: int | None = None
    layers: int = 1
    phase: int | None = None
    honeycomb_rz: str = "sites"

    def build(self) -> Circuit:
        if self.family == "honeycomb":
            if self.lattice is None:
                raise ValueError("honeycomb ansatz needs a lattice")
            return build_honeycomb_ansatz(self.lattice, rz=self.honeycomb_rz)
        if self.family == "chain":
            if self.num_qubits is None:
                raise ValueError("chain ansatz needs num_qubits")
            return build_chain_ansatz(self.num_qubits, self.layers)
        if self.family == "hierarchical":
            if self.phase is None:
                raise ValueError("hierarchical ansatz needs a phase")
            return build_hierarchical_ansatz(self.phase)
        raise ValueError(f"unknown ansatz family {self.family!r}")
