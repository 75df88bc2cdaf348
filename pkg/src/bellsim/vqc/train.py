"""Training loops: energy evaluators, flat training, hierarchical training.

Exact mode evaluates expectations analytically and enforces descent with a
revert guard (a step that raises the energy beyond tolerance is undone and
the learning rate halved).  Shot mode emulates the hardware loop: Pauli-sum
energies come from qubit-wise-commuting measurement settings, depth-witness
energies from the parity-oscillation pipeline, and the Adam step consumes the
noisy gradient as-is.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from ..bell.depth import DepthCertificate, certify_depth
from ..bell.operators import AntidiagonalOperator, depth_witness_operator
from ..errors import TrainingAbortError
from ..measure.extract import extract_coherence_parity
from ..measure.protocols import SHOTS_SCHEDULE, run_parity_pipeline
from ..measure.readout import ReadoutModel
from ..qsim.gates import Circuit, GateOp, prepare
from ..qsim.pauli import PauliSum
from ..qsim.sample import sample_bitstrings
from ..rng import substream
from .adam import AdamState, adam_step
from .ansatz import build_hierarchical_ansatz, hierarchical_slots
from .gradient import parameter_shift_gradient

TRAJECTORY_SCHEMA = {"schema": "bellsim-trajectory", "version": 1}


@dataclass
class TrainConfig:
    max_iters: int = 300
    learning_rate: float = 0.1
    mode: str = "exact"          # "exact" | "shots"
    shots: int | None = None     # per measurement setting; None -> tabulated schedule
    seed: int = 0
    init: str = "ones"           # "ones" | "random"
    revert_tolerance: float = 1e-9
    early_stop_bound: float | None = None
    early_stop_patience: int = 5

    def __post_init__(self):
        if self.mode not in ("exact", "shots"):
            raise ValueError(f"mode must be 'exact' or 'shots', got {self.mode!r}")


@dataclass
class TrainRecord:
    iteration: int
    energy: float
    energy_std: float
    shots_used: int
    phase: int
    params: list[float]

    def to_json_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "energy": self.energy,
            "energy_std": self.energy_std,
            "shots_used": self.shots_used,
            "phase": self.phase,
            "params": self.params,
        }


# ---------------------------------------------------------------------------
# energy evaluators


class ExactEnergy:
    """Analytic expectation; works for PauliSum and AntidiagonalOperator."""

    def __init__(self, circuit: Circuit, observable):
        self.circuit = circuit
        self.observable = observable

    def __call__(self, params) -> tuple[float, float, int]:
        state = prepare(self.circuit, params)
        return float(self.observable.expectation(state)), 0.0, 0


def commuting_groups(h: PauliSum) -> list[tuple[list[str | None], list[tuple[float, list[int]]]]]:
    """Greedy qubit-wise-commuting grouping.

    Each group fixes one measured Pauli letter per qubit; a term joins the
    first group whose letters agree on the term's support.  The in-scope
    Hamiltonians collapse to two (honeycomb: XX / ZZ) or three (chain) groups.
    """
    groups: list[tuple[list[str | None], list[tuple[float, list[int]]]]] = []
    constant_terms = []
    for coeff, string in h.terms:
        support = [(q, ch) for q, ch in enumerate(string) if ch != "I"]
        if not support:
            constant_terms.append(coeff)
            continue
        placed = False
        for letters, members in groups:
            if all(letters[q] in (None, ch) for q, ch in support):
                for q, ch in support:
                    letters[q] = ch
                members.append((coeff, [q for q, _ in support]))
                placed = True
                break
        if not placed:
            letters = [None] * h.num_qubits
            for q, ch in support:
                letters[q] = ch
            groups.append((letters, [(coeff, [q for q, _ in support])]))
    if constant_terms:
        groups.append(([None] * h.num_qubits, [(sum(constant_terms), [])]))
    return groups


def basis_rotation_ops(letters: list[str | None]) -> list[GateOp]:
    """Map each measured letter onto Z: H for X, RX(pi/2) for Y."""
    ops = []
    for q, ch in enumerate(letters):
        if ch == "X":
            ops.append(GateOp("h", (q,)))
        elif ch == "Y":
            ops.append(GateOp("rx", (q,), (np.pi / 2,)))
    return ops


class ShotEnergy:
    """Sampled energy: one measurement job per qubit-wise-commuting group."""

    def __init__(self, circuit: Circuit, h: PauliSum, shots: int, master_seed: int, labels=()):
        self.circuit = circuit
        self.shots = shots
        self.master_seed = master_seed
        self.labels = tuple(labels)
        self.groups = commuting_groups(h)
        self._rotations = [
            Circuit(circuit.num_qubits, basis_rotation_ops(letters))
            for letters, _ in self.groups
        ]
        self._eval_count = 0

    def __call__(self, params) -> tuple[float, float, int]:
        self._eval_count += 1
        base = prepare(self.circuit, params)
        energy = 0.0
        variance = 0.0
        used = 0
        for gidx, ((_, members), rotation) in enumerate(zip(self.groups, self._rotations)):
            if not rotation.ops and len(members) == 1 and not members[0][1]:
                energy += members[0][0]  # constant term
                continue
            state = base.copy()
            if rotation.ops:
                from ..qsim.gates import run_circuit

                run_circuit(state, rotation)
            rng = substream(self.master_seed, *self.labels, "energy", self._eval_count, gidx)
            bits = sample_bitstrings(state, self.shots, rng)
            signs = 1.0 - 2.0 * bits.astype(np.float64)
            per_shot = np.zeros(self.shots)
            for coeff, qubits in members:
                per_shot += coeff * np.prod(signs[:, qubits], axis=1)
            energy += float(per_shot.mean())
            variance += float(per_shot.var(ddof=0) / self.shots)
            used += self.shots
        return energy, float(np.sqrt(variance)), used


class ParityShotEnergy:
    """Depth-witness energy from the parity-oscillation pipeline."""

    def __init__(
        self,
        circuit: Circuit,
        op: AntidiagonalOperator,
        shots: int,
        master_seed: int,
        labels=(),
        readout: ReadoutModel | None = None,
        mitigate: bool = False,
    ):
        self.circuit = circuit
        self.op = op
        self.shots = shots
        self.master_seed = master_seed
        self.labels = tuple(labels)
        self.readout = readout
        self.mitigate = mitigate
        self._eval_count = 0

    def __call__(self, params) -> tuple[float, float, int]:
        self._eval_count += 1
        seed = int(
            substream(self.master_seed, *self.labels, "parity-eval", self._eval_count)
            .integers(0, 2**63)
        )
        table = run_parity_pipeline(
            self.circuit, params,
            shots=self.shots, readout=self.readout, mitigate=self.mitigate,
            master_seed=seed,
        )
        est = extract_coherence_parity(table, self.circuit.num_qubits)
        return float(est.energy), float(est.energy_std), int(table.shots.sum())


def make_evaluator(circuit: Circuit, observable, config: TrainConfig, labels=()):
    if config.mode == "exact":
        return ExactEnergy(circuit, observable)
    n = circuit.num_qubits
    shots = config.shots if config.shots is not None else SHOTS_SCHEDULE.get(n)
    if shots is None:
        raise ValueError(f"no shot schedule for n={n}; set config.shots")
    if isinstance(observable, AntidiagonalOperator):
        return ParityShotEnergy(circuit, observable, shots, config.seed, labels)
    return ShotEnergy(circuit, observable, shots, config.seed, labels)


# ---------------------------------------------------------------------------
# training loops


def initial_params(circuit: Circuit, config: TrainConfig, labels=()) -> np.ndarray:
    if config.init == "ones":
        return np.ones(circuit.num_params)
    if config.init == "random":
        rng = substream(config.seed, *labels, "init")
        return rng.uniform(-np.pi, np.pi, circuit.num_params)
    raise ValueError(f"unknown init {config.init!r}")


@dataclass
class TrainResult:
    records: list[TrainRecord]
    params: np.ndarray
    final_energy: float
    final_energy_std: float


def train(
    circuit: Circuit,
    observable,
    config: TrainConfig,
    *,
    phase: int = 0,
    init: np.ndarray | None = None,
    active_slots=None,
    labels=(),
) -> TrainResult:
    """Gradient-descent minimization of the observable's energy.

    active_slots restricts updates to a subset of parameters (frozen slots
    keep their entry values bit-exactly).  Records include iteration 0 (the
    initial energy) and one entry per optimizer iteration; with the exact-mode
    revert guard the recorded energy sequence is non-increasing.
    """
    params = initial_params(circuit, config, labels) if init is None else np.asarray(init, dtype=float).copy()
    if params.shape != (circuit.num_params,):
        raise ValueError("initial parameter vector has the wrong length")
    evaluator = make_evaluator(circuit, observable, config, labels)
    adam = AdamState(learning_rate=config.learning_rate)

    energy, std, used = evaluator(params)
    _check_energy(energy)
    records = [TrainRecord(0, energy, std, used, phase, params.tolist())]
    streak = 0
    for it in range(1, config.max_iters + 1):
        grad = parameter_shift_gradient(
            circuit, params, lambda p: evaluator(p)[0], active_slots
        )
        before = (params.copy(), adam.snapshot())
        adam, proposal = adam_step(adam, grad, params)
        new_energy, new_std, new_used = evaluator(proposal)
        _check_energy(new_energy)
        if config.mode == "exact" and new_energy > energy + config.revert_tolerance:
            params, adam = before
            adam = replace(adam, learning_rate=adam.learning_rate / 2.0)
        else:
            params = proposal
            energy, std, used = new_energy, new_std, new_used
        records.append(TrainRecord(it, energy, std, used, phase, params.tolist()))

        if config.early_stop_bound is not None:
            if energy < config.early_stop_bound - 3.0 * std:
                streak += 1
                if streak >= config.early_stop_patience:
                    break
            else:
                streak = 0
    return TrainResult(records, params, energy, std)


def _check_energy(value: float) -> None:
    if not np.isfinite(value):
        raise TrainingAbortError(f"energy became non-finite ({value})")


@dataclass
class PhaseOutcome:
    phase: int
    num_qubits: int
    energy: float
    energy_std: float
    certificate: DepthCertificate


@dataclass
class HierarchicalResult:
    records: list[TrainRecord]
    phases: list[PhaseOutcome]
    params: np.ndarray
    circuit: Circuit


def hierarchical_train(
    config: TrainConfig,
    max_phase: int,
    *,
    h_family=depth_witness_operator,
    final_retrain: bool = True,
    cert_shots: int | None = None,
    cert_readout: ReadoutModel | None = None,
    cert_mitigate: bool = False,
    cert_repetitions: int = 1,
) -> HierarchicalResult:
    """Grow the GHZ ladder two qubits per phase, training only the newest
    sub-circuit; optionally retrain everything jointly in a final phase.

    At the end of each phase the energy is re-estimated through the parity
    pipeline (exact expectations in exact mode, sampled otherwise) and a
    DepthCertificate is emitted.
    """
    if not (1 <= max_phase <= 12):
        raise ValueError(f"max_phase must lie in 1..12, got {max_phase}")
    records: list[TrainRecord] = []
    phases: list[PhaseOutcome] = []
    params = np.zeros(0)
    circuit = build_hierarchical_ansatz(1)

    for phase in range(1, max_phase + 1):
        circuit = build_hierarchical_ansatz(phase)
        n = 2 * phase
        fresh = initial_params(circuit, config, labels=("phase", phase))
        fresh[: len(params)] = params
        result = train(
            circuit, h_family(n), config,
            phase=phase, init=fresh,
            active_slots=hierarchical_slots(phase),
            labels=("phase", phase),
        )
        records.extend(result.records)
        params = result.params
        phases.append(
            _phase_outcome(
                circuit, params, phase, n, config,
                cert_shots, cert_readout, cert_mitigate, cert_repetitions,
            )
        )

    if final_retrain:
        phase = max_phase + 1
        n = 2 * max_phase
        result = train(
            circuit, h_family(n), config,
            phase=phase, init=params, active_slots=None, labels=("phase", phase),
        )
        records.extend(result.records)
        params = result.params
        phases.append(
            _phase_outcome(
                circuit, params, phase, n, config,
                cert_shots, cert_readout, cert_mitigate, cert_repetitions,
            )
        )
    return HierarchicalResult(records, phases, params, circuit)


def _phase_outcome(
    circuit, params, phase, n, config, cert_shots, cert_readout, cert_mitigate, cert_reps
) -> PhaseOutcome:
    if config.mode == "exact":
        shots = None
    else:
        shots = cert_shots if cert_shots is not None else (
            config.shots if config.shots is not None else SHOTS_SCHEDULE.get(n)
        )
    seed = int(substream(config.seed, "phase-cert", phase).integers(0, 2**63))
    table = run_parity_pipeline(
        circuit, params,
        shots=shots, readout=cert_readout, mitigate=cert_mitigate,
        repetitions=cert_reps, master_seed=seed,
    )
    est = extract_coherence_parity(table, n)
    cert = certify_depth(n, est.energy, est.energy_std)
    return PhaseOutcome(phase, n, est.energy, est.energy_std, cert)


# ---------------------------------------------------------------------------
# trajectory persistence


def write_trajectory(records: list[TrainRecord], path, meta: dict | None = None) -> None:
    header = dict(TRAJECTORY_SCHEMA)
    if meta:
        header.update(meta)
    with open(path, "w") as fh:
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for rec in records:
            fh.write(json.dumps(rec.to_json_dict(), sort_keys=True) + "\n")


def read_trajectory(path) -> tuple[dict, list[TrainRecord]]:
    with open(path) as fh:
        lines = fh.read().splitlines()
    header = json.loads(lines[0])
    records = [TrainRecord(**json.loads(line)) for line in lines[1:]]
    return header, records
