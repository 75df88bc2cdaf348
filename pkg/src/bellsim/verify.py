"""Built-in verification suite behind `bellsim verify`.

Each check returns (ok, detail).  The checks accept injectable inputs where a
mutation would be silent otherwise (e.g. a corrupted Svetlichny expression
must make the operator-equality check fail), which the test suite exercises.
"""

from __future__ import annotations

import numpy as np

from .bell.bounds import lhv_bound_bruteforce
from .bell.expressions import (
    build_chain_expression,
    build_chsh_expression,
    build_gisin_expression,
    build_honeycomb_expression,
    build_mermin_expression,
    build_svetlichny_expression,
)
from .bell.lattice import brick_wall_patch, single_link_lattice
from .bell.operators import (
    bell_operator_from_expression,
    build_chain_hamiltonian,
    build_honeycomb_hamiltonian,
    depth_witness_operator,
)
from .errors import ReadoutModelError
from .measure.extract import extract_coherence_mqc, extract_coherence_parity
from .measure.protocols import run_mqc_pipeline, run_parity_pipeline
from .measure.readout import ReadoutModel
from .qsim.gates import Circuit, prepare
from .qsim.pauli import PauliSum
from .qsim.state import antidiagonal_coherence
from .vqc.gradient import parameter_shift_gradient
from .vqc.train import ExactEnergy

OP_TOL = 1e-9
GRAD_TOL = 1e-6


# ---------------------------------------------------------------------------
# reusable random inputs


def random_circuit(rng: np.random.Generator, num_qubits: int, num_gates: int) -> Circuit:
    """Random native-gate circuit; parameterized angles become fresh slots."""
    c = Circuit(num_qubits)
    kinds = ["h", "rz", "rx", "u3"] + (["cz", "cnot"] if num_qubits > 1 else [])
    for _ in range(num_gates):
        kind = kinds[rng.integers(len(kinds))]
        if kind in ("cz", "cnot"):
            a, b = rng.choice(num_qubits, size=2, replace=False)
            c.add(kind, int(a), int(b))
        elif kind == "h":
            c.add("h", int(rng.integers(num_qubits)))
        elif kind == "u3":
            angles = tuple(
                c.new_slot() if rng.random() < 0.5 else float(rng.uniform(-np.pi, np.pi))
                for _ in range(3)
            )
            c.add("u3", int(rng.integers(num_qubits)), angles=angles)
        else:
            angle = c.new_slot() if rng.random() < 0.7 else float(rng.uniform(-np.pi, np.pi))
            c.add(kind, int(rng.integers(num_qubits)), angles=(angle,))
    if c.num_params == 0:
        c.add("rz", 0, angles=(c.new_slot(),))
    c.validate()
    return c


def random_pauli_sum(rng: np.random.Generator, num_qubits: int, num_terms: int) -> PauliSum:
    h = PauliSum(num_qubits, [])
    letters = np.array(list("IXYZ"))
    for _ in range(num_terms):
        string = "".join(letters[rng.integers(4, size=num_qubits)])
        if set(string) == {"I"}:
            string = "Z" + string[1:]
        h.add_term(float(rng.uniform(-2, 2)), string)
    return h


def _ghz_minus(n: int) -> Circuit:
    c = Circuit(n)
    c.add("h", 0)
    c.add("rz", 0, angles=(np.pi,))
    for q in range(n - 1):
        c.add("cnot", q, q + 1)
    return c


# ---------------------------------------------------------------------------
# checks


def check_operator_equalities(
    svetlichny_builder=build_svetlichny_expression,
    mermin_builder=build_mermin_expression,
) -> tuple[bool, str]:
    worst = 0.0

    expr, meas = build_chsh_expression()
    ref = PauliSum(2, [(np.sqrt(2), "XX"), (np.sqrt(2), "ZZ")]).to_dense()
    worst = max(worst, np.abs(bell_operator_from_expression(expr, meas) - ref).max())

    expr, meas = build_gisin_expression()
    j = 4 / np.sqrt(3)
    ref = PauliSum(2, [(j, "XX"), (j, "YY"), (j, "ZZ")]).to_dense()
    worst = max(worst, np.abs(bell_operator_from_expression(expr, meas) - ref).max())

    for lattice, eps in ((single_link_lattice("r"), 0.5), (brick_wall_patch(2, 3), 0.9)):
        expr, meas = build_honeycomb_expression(lattice, eps)
        ref = build_honeycomb_hamiltonian(lattice, eps).to_dense()
        worst = max(worst, np.abs(bell_operator_from_expression(expr, meas) - ref).max())

    expr, meas = build_chain_expression(3, 2.0, 0.95)
    ref = build_chain_hamiltonian(3, 2.0, 0.95).to_dense()
    worst = max(worst, np.abs(bell_operator_from_expression(expr, meas) - ref).max())

    for n in range(2, 7):
        ref = depth_witness_operator(n).to_dense()
        for builder in (svetlichny_builder, mermin_builder):
            expr, meas = builder(n)
            worst = max(worst, np.abs(bell_operator_from_expression(expr, meas) - ref).max())

    return bool(worst < OP_TOL), f"max elementwise deviation {worst:.2e}"


def check_classical_bounds() -> tuple[bool, str]:
    cases = [
        ("chsh", build_chsh_expression()[0], -2.0),
        ("gisin", build_gisin_expression()[0], -6.0),
        ("gisin d=2", build_gisin_expression(2.0)[0], -8.0),
        ("chain n=3", build_chain_expression(3, 2.0, 0.95)[0], -16.0),
    ]
    lattice = brick_wall_patch(2, 3)
    expr, _ = build_honeycomb_expression(lattice, 0.7)
    cases.append(("honeycomb 2x3", expr, expr.classical_bound))
    for n in range(2, 6):
        cases.append((f"svetlichny {n}", build_svetlichny_expression(n)[0], None))
        cases.append((f"mermin {n}", build_mermin_expression(n)[0], None))

    worst = 0.0
    for name, expr, expected in cases:
        brute = lhv_bound_bruteforce(expr)
        worst = max(worst, abs(brute - expr.classical_bound))
        if expected is not None:
            worst = max(worst, abs(brute - expected))
    return bool(worst < 1e-9), f"max |bruteforce - stored bound| = {worst:.2e}"


def check_gradients(num_circuits: int = 10, seed: int = 11) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    fd_h = 1e-5
    worst = 0.0
    for _ in range(num_circuits):
        n = int(rng.integers(1, 6))
        circuit = random_circuit(rng, n, int(rng.integers(3, 10)))
        h = random_pauli_sum(rng, n, 3)
        params = rng.uniform(-np.pi, np.pi, circuit.num_params)
        energy = ExactEnergy(circuit, h)
        fn = lambda p: energy(p)[0]
        grad = parameter_shift_gradient(circuit, params, fn)
        for k in range(circuit.num_params):
            shifted = params.copy()
            shifted[k] += fd_h
            up = fn(shifted)
            shifted[k] -= 2 * fd_h
            down = fn(shifted)
            worst = max(worst, abs(grad[k] - (up - down) / (2 * fd_h)))
    return bool(worst < GRAD_TOL), f"max |shift - finite difference| = {worst:.2e}"


def check_fourier_exactness() -> tuple[bool, str]:
    rng = np.random.default_rng(23)
    worst = 0.0
    for circuit in (_ghz_minus(6), random_circuit(rng, 5, 12)):
        params = rng.uniform(-np.pi, np.pi, circuit.num_params)
        n = circuit.num_qubits
        direct = antidiagonal_coherence(prepare(circuit, params))
        par = extract_coherence_parity(run_parity_pipeline(circuit, params), n)
        mqc = extract_coherence_mqc(run_mqc_pipeline(circuit, params), n)
        worst = max(worst, abs(par.value - direct), abs(mqc.value.real - abs(direct)))
    return bool(worst < 1e-9), f"max extraction deviation {worst:.2e}"


def check_degradation_laws(
    n: int = 6, e: float = 0.0085, shots: int = 1500, seed: int = 20
) -> tuple[bool, str]:
    # the MQC law (1-e)^(n/2) ignores the second echo bitstring (relative
    # error ~ e/2), so the shot budget is chosen with 3 sigma above that bias
    circuit = _ghz_minus(n)
    model = ReadoutModel.symmetric(n, e)
    ideal = 0.5

    raw_par = extract_coherence_parity(
        run_parity_pipeline(circuit, None, shots=shots, readout=model, master_seed=seed), n
    )
    ratio_par = abs(raw_par.value.real) / ideal
    sig_par = raw_par.std / ideal
    ok_par = abs(ratio_par - (1 - 2 * e) ** n) < 3 * sig_par

    raw_mqc = extract_coherence_mqc(
        run_mqc_pipeline(circuit, None, shots=shots, readout=model, master_seed=seed), n
    )
    ratio_mqc = raw_mqc.value.real / ideal
    sig_mqc = raw_mqc.std / ideal
    ok_mqc = abs(ratio_mqc - (1 - e) ** (n / 2)) < 3 * sig_mqc

    fixed = extract_coherence_parity(
        run_parity_pipeline(
            circuit, None, shots=shots, readout=model, mitigate=True, master_seed=seed
        ),
        n,
    )
    ok_fix = abs(abs(fixed.value.real) - ideal) < 3 * fixed.std

    ok = ok_par and ok_mqc and ok_fix
    return bool(ok), (
        f"parity ratio {ratio_par:.4f} vs {(1 - 2 * e) ** n:.4f}, "
        f"mqc ratio {ratio_mqc:.4f} vs {(1 - e) ** (n / 2):.4f}, mitigated ok={ok_fix}"
    )


def check_readout_validation() -> tuple[bool, str]:
    try:
        ReadoutModel.symmetric(4, 0.6)
        return False, "invalid model accepted"
    except ReadoutModelError:
        pass
    try:
        ReadoutModel(np.array([0.4]), np.array([0.7]))
        return False, "invalid asymmetric model accepted"
    except ReadoutModelError:
        pass
    return True, "singular confusion matrices rejected"


CHECKS = [
    ("operator-equalities", check_operator_equalities),
    ("classical-bounds", check_classical_bounds),
    ("gradient-shift-vs-fd", check_gradients),
    ("fourier-exactness", check_fourier_exactness),
    ("readout-degradation", check_degradation_laws),
    ("readout-validation", check_readout_validation),
]


def run_all() -> list[tuple[str, bool, str]]:
    results = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append((name, ok, detail))
    return results
