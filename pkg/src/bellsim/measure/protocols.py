"""Parity-oscillation and multiple-quantum-coherence measurement circuits.

Parity: append U3(pi/2, gamma - pi, pi - gamma) to every qubit, which maps the
axis of cos(gamma) X + sin(gamma) Y onto Z, then read all qubits and take the
parity of each string.

MQC echo: run the preparation circuit, a refocusing RX(pi) layer, an RZ(phi)
layer, then the exact inverse circuit; the signal is the probability of
reading 0...0.  The refocusing layer is kept even though it is redundant for
noiseless emulation.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError
from ..qsim.gates import Circuit, GateOp, inverse_circuit, prepare, run_circuit
from ..qsim.sample import sample_bitstrings
from ..rng import substream
from .extract import SignalTable
from .readout import (
    ReadoutModel,
    apply_readout_error,
    ground_indicator_observable,
    mitigate_readout,
    parity_observable,
    product_estimate,
)

#: per-setting shots used in the depth experiments, keyed by qubit number
SHOTS_SCHEDULE = {
    2: 900, 4: 1500, 6: 2400, 8: 3600, 10: 5000, 12: 7200,
    14: 9600, 16: 12000, 18: 15000, 20: 20000, 22: 25000, 24: 30000,
}


def shots_schedule(n: int) -> int:
    if n not in SHOTS_SCHEDULE:
        raise ConfigError(
            f"no tabulated shot count for n={n}; supply an explicit shots value"
        )
    return SHOTS_SCHEDULE[n]


def parity_settings(n: int) -> np.ndarray:
    """gamma_k = -pi/2 + pi k / (n+1), k = 0..n."""
    if n < 2:
        raise ValueError("need at least 2 qubits")
    k = np.arange(n + 1)
    return -np.pi / 2 + np.pi * k / (n + 1)


def mqc_settings(n: int) -> np.ndarray:
    """phi_j = pi j / (n+1), j = 0..2n+1 (2n+2 angles)."""
    if n < 2:
        raise ValueError("need at least 2 qubits")
    j = np.arange(2 * n + 2)
    return np.pi * j / (n + 1)


def parity_rotation_ops(n: int, gamma: float) -> list[GateOp]:
    return [GateOp("u3", (q,), (np.pi / 2, gamma - np.pi, np.pi - gamma)) for q in range(n)]


def mqc_echo_circuit(circuit: Circuit, phi: float) -> Circuit:
    n = circuit.num_qubits
    ops = list(circuit.ops)
    ops += [GateOp("rx", (q,), (np.pi,)) for q in range(n)]
    ops += [GateOp("rz", (q,), (phi,)) for q in range(n)]
    ops += inverse_circuit(circuit).ops
    return Circuit(n, ops, circuit.num_params)


_PARITY_SIGN_CACHE: dict[int, np.ndarray] = {}


def _parity_signs(n: int) -> np.ndarray:
    signs = _PARITY_SIGN_CACHE.get(n)
    if signs is None:
        signs = 1.0 - 2.0 * (np.bitwise_count(np.arange(1 << n, dtype=np.int64)) & 1)
        _PARITY_SIGN_CACHE[n] = signs
    return signs


def measure_parity(
    circuit: Circuit,
    params,
    gamma: float,
    shots: int | None = None,
    readout: ReadoutModel | None = None,
    rng: np.random.Generator | None = None,
    mitigate: bool = False,
) -> tuple[float, float]:
    """One parity setting; returns (expectation, standard error).

    shots=None gives the exact noiseless expectation (std 0); with shots the
    Z-basis strings go through the readout channel when a model is supplied,
    and through tensor-product mitigation when additionally requested.
    """
    n = circuit.num_qubits
    state = prepare(circuit, params)
    run_circuit(state, Circuit(n, parity_rotation_ops(n, gamma)))
    if shots is None:
        return float(np.dot(_parity_signs(n), state.probabilities())), 0.0
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if rng is None:
        raise ValueError("shot mode needs an explicit rng")
    bits = sample_bitstrings(state, shots, rng)
    if readout is not None:
        bits = apply_readout_error(bits, readout, rng)
        if mitigate:
            return mitigate_readout(bits, readout, parity_observable(n))
    return product_estimate(bits, parity_observable(n))


def measure_mqc(
    circuit: Circuit,
    params,
    phi: float,
    shots: int | None = None,
    readout: ReadoutModel | None = None,
    rng: np.random.Generator | None = None,
    mitigate: bool = False,
) -> tuple[float, float]:
    """One MQC setting; returns (ground-state probability, standard error)."""
    n = circuit.num_qubits
    state = prepare(mqc_echo_circuit(circuit, phi), params)
    if shots is None:
        return float(np.abs(state.amplitudes[0]) ** 2), 0.0
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if rng is None:
        raise ValueError("shot mode needs an explicit rng")
    bits = sample_bitstrings(state, shots, rng)
    if readout is not None:
        bits = apply_readout_error(bits, readout, rng)
        if mitigate:
            return mitigate_readout(bits, readout, ground_indicator_observable(n))
    return product_estimate(bits, ground_indicator_observable(n))


# ---------------------------------------------------------------------------
# multi-setting pipelines

_MEASURE_FNS = {"parity": (measure_parity, parity_settings), "mqc": (measure_mqc, mqc_settings)}


def run_pipeline(
    method: str,
    circuit: Circuit,
    params,
    *,
    shots: int | None = None,
    readout: ReadoutModel | None = None,
    mitigate: bool = False,
    repetitions: int = 1,
    master_seed: int = 0,
    angles=None,
) -> SignalTable:
    """Measure one full angle sweep, repetitions times.

    RNG streams derive from (master_seed, method, setting index, repetition),
    so any execution order of the independent jobs yields the same numbers.
    With one repetition the error bars are the per-setting standard errors;
    with R > 1 they are the scatter of the R independent sweeps.
    """
    if method not in _MEASURE_FNS:
        raise ValueError(f"unknown method {method!r}")
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    measure_fn, default_angles = _MEASURE_FNS[method]
    n = circuit.num_qubits
    angles = np.asarray(default_angles(n) if angles is None else angles, dtype=float)
    k = len(angles)

    raw_values = np.zeros((repetitions, k))
    raw_stds = np.zeros((repetitions, k))
    for rep in range(repetitions):
        for idx, angle in enumerate(angles):
            rng = None if shots is None else substream(master_seed, method, idx, rep)
            raw_values[rep, idx], raw_stds[rep, idx] = measure_fn(
                circuit, params, angle,
                shots=shots, readout=readout, rng=rng, mitigate=mitigate,
            )
    if repetitions == 1:
        values, stds = raw_values[0], raw_stds[0]
    else:
        values = raw_values.mean(axis=0)
        stds = raw_values.std(axis=0, ddof=1) / np.sqrt(repetitions)
    return SignalTable(
        method=method,
        angles=angles,
        values=values,
        stds=stds,
        shots=np.full(k, 0 if shots is None else shots),
        repetitions=repetitions,
        raw_values=raw_values,
        raw_stds=raw_stds,
    )


def run_parity_pipeline(circuit: Circuit, params, **kwargs) -> SignalTable:
    return run_pipeline("parity", circuit, params, **kwargs)


def run_mqc_pipeline(circuit: Circuit, params, **kwargs) -> SignalTable:
    return run_pipeline("mqc", circuit, params, **kwargs)
