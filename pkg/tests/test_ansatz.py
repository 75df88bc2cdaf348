import numpy as np
import pytest

from bellsim.bell import (
    brick_wall_patch,
    build_honeycomb_hamiltonian,
    honeycomb_classical_bound,
    single_link_lattice,
)
from bellsim.vqc import (
    AnsatzSpec,
    build_chain_ansatz,
    build_hierarchical_ansatz,
    build_honeycomb_ansatz,
    hierarchical_slots,
)
from bellsim.vqc.train import ExactEnergy


def test_honeycomb_single_link_structure():
    circ = build_honeycomb_ansatz(single_link_lattice("r"))
    assert circ.num_params == 1
    kinds = [op.kind for op in circ.ops]
    # 3 blocks x 2 hadamards, one CNOT-RZ-CNOT entangler in the r block
    assert kinds.count("h") == 6
    assert kinds.count("cnot") == 2
    assert kinds.count("rz") == 1
    assert kinds[2:5] == ["cnot", "rz", "cnot"]


def test_honeycomb_patch_parameter_count():
    lat = brick_wall_patch(2, 3)  # 2r + 2b + 2g links
    circ = build_honeycomb_ansatz(lat)
    assert circ.num_params == 6
    assert [op.kind for op in circ.ops].count("h") == 18  # 3 blocks x 6 sites


def test_honeycomb_sites_variant_count():
    lat = brick_wall_patch(2, 3)
    circ = build_honeycomb_ansatz(lat, rz="sites")
    assert circ.num_params == 3 * lat.num_sites
    with pytest.raises(ValueError):
        build_honeycomb_ansatz(lat, rz="bogus")


def test_honeycomb_cnot_direction():
    lat = brick_wall_patch(2, 3)
    circ = build_honeycomb_ansatz(lat)
    a_sites = {q for q in range(lat.num_sites) if lat.sublattice[q] == "A"}
    for op in circ.ops:
        if op.kind == "cnot":
            assert op.targets[0] in a_sites


def test_honeycomb_initial_energy_above_bound():
    lat = brick_wall_patch(2, 3)
    h = build_honeycomb_hamiltonian(lat, 0.9)
    bc = honeycomb_classical_bound(lat, 0.9)
    for rz in ("links", "sites"):
        circ = build_honeycomb_ansatz(lat, rz=rz)
        e0 = ExactEnergy(circ, h)(np.ones(circ.num_params))[0]
        assert e0 > bc


def test_chain_structure_n2():
    circ = build_chain_ansatz(2, 1)
    assert circ.num_params == 2
    assert [op.kind for op in circ.ops].count("cz") == 1


def test_chain_structure_n21():
    circ = build_chain_ansatz(21, 4)
    assert circ.num_params == 84
    czs = [op.targets for op in circ.ops if op.kind == "cz"]
    assert len(czs) == 4 * 20


def test_chain_cz_pairing():
    circ = build_chain_ansatz(5, 1)
    czs = [op.targets for op in circ.ops if op.kind == "cz"]
    assert czs == [(0, 1), (2, 3), (1, 2), (3, 4)]


def test_chain_u3_angles_fixed():
    circ = build_chain_ansatz(3, 2)
    for op in circ.ops:
        if op.kind == "u3":
            theta, phi, lam = op.angles
            assert theta == np.pi / 2 and phi == 0.0
            assert hasattr(lam, "index")


def test_chain_validation():
    with pytest.raises(ValueError):
        build_chain_ansatz(1, 1)
    with pytest.raises(ValueError):
        build_chain_ansatz(3, 0)


def test_hierarchical_sizes():
    assert build_hierarchical_ansatz(1).num_qubits == 2
    assert build_hierarchical_ansatz(12).num_qubits == 24
    assert build_hierarchical_ansatz(3).num_params == 18
    assert list(hierarchical_slots(2)) == [6, 7, 8, 9, 10, 11]


def test_hierarchical_range():
    with pytest.raises(ValueError):
        build_hierarchical_ansatz(0)
    with pytest.raises(ValueError):
        build_hierarchical_ansatz(13)


def test_hierarchical_chaining():
    circ = build_hierarchical_ansatz(3)
    cnots = [op.targets for op in circ.ops if op.kind == "cnot"]
    assert cnots == [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]


def test_ansatz_spec_dispatch():
    lat = brick_wall_patch(2, 3)
    assert AnsatzSpec("honeycomb", lattice=lat).build().num_params == 18  # sites default
    assert AnsatzSpec("honeycomb", lattice=lat, honeycomb_rz="links").build().num_params == 6
    assert AnsatzSpec("chain", num_qubits=4, layers=2).build().num_params == 8
    assert AnsatzSpec("hierarchical", phase=2).build().num_qubits == 4
    with pytest.raises(ValueError):
        AnsatzSpec("chain").build()
    with pytest.raises(ValueError):
        AnsatzSpec("nope").build()
