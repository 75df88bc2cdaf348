"""Parameter-shift gradients.

Every native parameterized angle is generated by a single Pauli
(exp(-i theta P / 2)), so the derivative of the energy with respect to slot k
is exactly (E(theta_k + pi/2) - E(theta_k - pi/2)) / 2.  The rule assumes the
slot enters the circuit through exactly one gate angle with unit sign; shared
slots would need a sum over shift positions and are rejected.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from ..errors import UnsupportedGateError
from ..qsim.gates import Circuit, Slot

SHIFT = np.pi / 2


def check_shift_eligible(circuit: Circuit) -> None:
    counts: Counter[int] = Counter()
    for op in circuit.ops:
        for a in op.angles:
            if isinstance(a, Slot):
                if a.sign != 1:
                    raise UnsupportedGateError(
                        f"slot {a.index} enters with sign {a.sign}; shift rule assumes +1"
                    )
                counts[a.index] += 1
    shared = [k for k, c in counts.items() if c > 1]
    if shared:
        raise UnsupportedGateError(
            f"slots {shared} bind more than one gate angle; the single-shift rule does not apply"
        )


def parameter_shift_gradient(
    circuit: Circuit,
    params: np.ndarray,
    energy_fn,
    active_slots=None,
) -> np.ndarray:
    """Gradient of energy_fn(params) via 2 evaluations per (active) slot.

    energy_fn maps a parameter vector to a float; active_slots restricts the
    computation (frozen slots get gradient 0).
    """
    check_shift_eligible(circuit)
    params = np.asarray(params, dtype=float)
    if params.shape != (circuit.num_params,):
        raise ValueError(
            f"params shape {params.shape} does not match circuit ({circuit.num_params},)"
        )
    slots = range(circuit.num_params) if active_slots is None else active_slots
    grad = np.zeros_like(params)
    shifted = params.copy()
    for k in slots:
        original = shifted[k]
        shifted[k] = original + SHIFT
        e_plus = energy_fn(shifted)
        shifted[k] = original - SHIFT
        e_minus = energy_fn(shifted)
        shifted[k] = original
        grad[k] = 0.5 * (e_plus - e_minus)
    return grad
