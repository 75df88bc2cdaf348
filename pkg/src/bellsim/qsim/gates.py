"""Gate programs and statevector kernels.

Native gate set: U3(theta, phi, lam), H, RZ(theta), RX(theta), CZ, CNOT.
The U3 parameterization follows the hardware convention

    U3(theta, phi, lam) = [[cos(t/2),            -e^{i lam} sin(t/2)],
                           [e^{i phi} sin(t/2),   e^{i(phi+lam)} cos(t/2)]]

which equals RZ(phi) RY(theta) RZ(lam) up to a global phase, so every angle
position is generated by a single Pauli and is parameter-shift eligible.

Angles of a GateOp are either fixed floats or `Slot(k)` references into the
circuit's parameter vector.  A slot carries a sign so that circuit inversion
can reuse the same parameter vector (theta enters the inverse as -theta).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .state import StateVector, init_state

GATE_ANGLE_COUNTS = {"u3": 3, "h": 0, "rz": 1, "rx": 1, "cz": 0, "cnot": 0}
TWO_QUBIT_KINDS = ("cz", "cnot")


@dataclass(frozen=True)
class Slot:
    """Reference to a circuit parameter slot; bound value is sign * params[index]."""

    index: int
    sign: int = 1


@dataclass(frozen=True)
class GateOp:
    kind: str
    targets: tuple[int, ...]
    angles: tuple = ()  # entries are float or Slot

    def __post_init__(self):
        if self.kind not in GATE_ANGLE_COUNTS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        want = GATE_ANGLE_COUNTS[self.kind]
        if len(self.angles) != want:
            raise ValueError(f"{self.kind} takes {want} angles, got {len(self.angles)}")
        nq = 2 if self.kind in TWO_QUBIT_KINDS else 1
        if len(self.targets) != nq or len(set(self.targets)) != nq:
            raise ValueError(f"{self.kind} needs {nq} distinct targets, got {self.targets}")

    def slots(self) -> list[int]:
        return [a.index for a in self.angles if isinstance(a, Slot)]


@dataclass
class Circuit:
    num_qubits: int
    ops: list[GateOp] = field(default_factory=list)
    num_params: int = 0

    def add(self, kind: str, *targets: int, angles: tuple = ()) -> "Circuit":
        for t in targets:
            if not (0 <= t < self.num_qubits):
                raise ValueError(f"target {t} out of range for {self.num_qubits} qubits")
        self.ops.append(GateOp(kind, tuple(targets), angles))
        return self

    def new_slot(self) -> Slot:
        s = Slot(self.num_params)
        self.num_params += 1
        return s

    def validate(self) -> None:
        bound = set()
        for op in self.ops:
            for t in op.targets:
                if not (0 <= t < self.num_qubits):
                    raise ValueError(f"target {t} out of range")
            for k in op.slots():
                if not (0 <= k < self.num_params):
                    raise ValueError(f"slot {k} out of range (num_params={self.num_params})")
                bound.add(k)
        missing = set(range(self.num_params)) - bound
        if missing:
            raise ValueError(f"parameter slots never bound by any op: {sorted(missing)}")

    def bind(self, params) -> list[tuple[str, tuple[int, ...], tuple[float, ...]]]:
        """Resolve slots against a parameter vector; returns concrete ops."""
        params = np.asarray(params, dtype=float)
        if params.shape != (self.num_params,):
            raise ValueError(
                f"parameter vector has shape {params.shape}, circuit expects ({self.num_params},)"
            )
        out = []
        for op in self.ops:
            angles = tuple(
                a.sign * float(params[a.index]) if isinstance(a, Slot) else float(a)
                for a in op.angles
            )
            out.append((op.kind, op.targets, angles))
        return out


# ---------------------------------------------------------------------------
# matrices

_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)


def u3_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array(
        [[c, -np.exp(1j * lam) * s], [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]],
        dtype=np.complex128,
    )


def rz_matrix(theta: float) -> np.ndarray:
    return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=np.complex128)


def rx_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)


def gate_matrix_1q(kind: str, angles: tuple[float, ...] = ()) -> np.ndarray:
    if kind == "h":
        return _H.copy()
    if kind == "u3":
        return u3_matrix(*angles)
    if kind == "rz":
        return rz_matrix(angles[0])
    if kind == "rx":
        return rx_matrix(angles[0])
    raise ValueError(f"{kind} is not a single-qubit kind")


# ---------------------------------------------------------------------------
# kernels (in place; the generic 1q path copies one half of the amplitudes)


def _apply_1q(amps: np.ndarray, q: int, m: np.ndarray) -> None:
    view = amps.reshape(-1, 2, 1 << q)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    view[:, 0, :] = m[0, 0] * a0 + m[0, 1] * a1
    view[:, 1, :] = m[1, 0] * a0 + m[1, 1] * a1


def _apply_diag_1q(amps: np.ndarray, q: int, d0: complex, d1: complex) -> None:
    view = amps.reshape(-1, 2, 1 << q)
    view[:, 0, :] *= d0
    view[:, 1, :] *= d1


def _pair_view(amps: np.ndarray, hi: int, lo: int) -> np.ndarray:
    """View (outer, bit_hi, mid, bit_lo, inner) for qubit pair hi > lo."""
    return amps.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)


def _apply_cz(amps: np.ndarray, q1: int, q2: int) -> None:
    view = _pair_view(amps, max(q1, q2), min(q1, q2))
    view[:, 1, :, 1, :] *= -1


def _apply_cnot(amps: np.ndarray, control: int, target: int) -> None:
    hi, lo = max(control, target), min(control, target)
    view = _pair_view(amps, hi, lo)
    if control == hi:
        a, b = view[:, 1, :, 0, :], view[:, 1, :, 1, :]
    else:
        a, b = view[:, 0, :, 1, :], view[:, 1, :, 1, :]
    tmp = a.copy()
    a[...] = b
    b[...] = tmp


def _apply_concrete(amps: np.ndarray, kind: str, targets: tuple[int, ...], angles: tuple) -> None:
    if kind == "cz":
        _apply_cz(amps, *targets)
    elif kind == "cnot":
        _apply_cnot(amps, *targets)
    elif kind == "rz":
        t = angles[0]
        _apply_diag_1q(amps, targets[0], np.exp(-0.5j * t), np.exp(0.5j * t))
    elif kind == "h":
        _apply_1q(amps, targets[0], _H)
    elif kind == "rx":
        _apply_1q(amps, targets[0], rx_matrix(angles[0]))
    elif kind == "u3":
        _apply_1q(amps, targets[0], u3_matrix(*angles))
    else:
        raise ValueError(kind)


def apply_gate(state: StateVector, gate: GateOp, angle: float | None = None) -> StateVector:
    """Apply one gate in place and return the state.

    `angle` substitutes every unbound Slot of the gate; gates without slots
    must not receive one.
    """
    n = state.num_qubits
    for t in gate.targets:
        if not (0 <= t < n):
            raise ValueError(f"target {t} out of range for {n} qubits")
    has_slots = bool(gate.slots())
    if has_slots and angle is None:
        raise ValueError("gate has unbound parameter slots and no angle was supplied")
    if not has_slots and angle is not None:
        raise ValueError("angle supplied for a gate without parameter slots")
    angles = tuple(
        a.sign * float(angle) if isinstance(a, Slot) else float(a) for a in gate.angles
    )
    _apply_concrete(state.amplitudes, gate.kind, gate.targets, angles)
    return state


def run_circuit(state: StateVector, circuit: Circuit, params=None) -> StateVector:
    """Apply a circuit in place with parameter slots substituted from `params`."""
    if circuit.num_qubits != state.num_qubits:
        raise ValueError(
            f"circuit is on {circuit.num_qubits} qubits, state on {state.num_qubits}"
        )
    if params is None:
        params = np.zeros(0)
    for kind, targets, angles in circuit.bind(params):
        _apply_concrete(state.amplitudes, kind, targets, angles)
    return state


def prepare(circuit: Circuit, params=None) -> StateVector:
    """|0...0> evolved by the circuit."""
    return run_circuit(init_state(circuit.num_qubits), circuit, params)


def _negated(angle):
    if isinstance(angle, Slot):
        return Slot(angle.index, -angle.sign)
    return -float(angle)


def inverse_circuit(circuit: Circuit) -> Circuit:
    """Exact inverse over the same parameter slots.

    U3(t, p, l)^dagger = U3(-t, -l, -p) up to global phase, so the inverse
    stays inside the native gate set.
    """
    inv = Circuit(circuit.num_qubits, [], circuit.num_params)
    for op in reversed(circuit.ops):
        if op.kind in ("h", "cz", "cnot"):
            inv.ops.append(op)
        elif op.kind in ("rz", "rx"):
            inv.ops.append(GateOp(op.kind, op.targets, (_negated(op.angles[0]),)))
        elif op.kind == "u3":
            t, p, l = op.angles
            inv.ops.append(GateOp("u3", op.targets, (_negated(t), _negated(l), _negated(p))))
    return inv


def cnot_via_cz(control: int, target: int) -> list[GateOp]:
    """Hardware-style CNOT decomposition: H on target, CZ, H on target."""
    return [
        GateOp("h", (target,)),
        GateOp("cz", (control, target)),
        GateOp("h", (target,)),
    ]
