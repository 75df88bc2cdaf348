"""Adam with the standard bias correction (beta1 = 0.9, beta2 = 0.999)."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..errors import TrainingAbortError


@dataclass
class AdamState:
    learning_rate: float = 0.1
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step_count: int = 0
    m: np.ndarray = field(default_factory=lambda: np.zeros(0))
    v: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def snapshot(self) -> "AdamState":
        return replace(self, m=self.m.copy(), v=self.v.copy())


def adam_step(state: AdamState, grad: np.ndarray, params: np.ndarray) -> tuple[AdamState, np.ndarray]:
    """One update; returns the advanced state and the new parameter vector."""
    grad = np.asarray(grad, dtype=float)
    params = np.asarray(params, dtype=float)
    if grad.shape != params.shape:
        raise ValueError(f"gradient shape {grad.shape} != params shape {params.shape}")
    if np.any(~np.isfinite(grad)):
        bad = np.flatnonzero(~np.isfinite(grad))
        raise TrainingAbortError(f"non-finite gradient entries at slots {bad.tolist()}")
    if state.m.shape != params.shape:
        if state.step_count != 0:
            raise ValueError("optimizer state sized for a different parameter count")
        state = replace(state, m=np.zeros_like(params), v=np.zeros_like(params))

    t = state.step_count + 1
    m = state.beta1 * state.m + (1 - state.beta1) * grad
    v = state.beta2 * state.v + (1 - state.beta2) * grad**2
    m_hat = m / (1 - state.beta1**t)
    v_hat = v / (1 - state.beta2**t)
    new_params = params - state.learning_rate * m_hat / (np.sqrt(v_hat) + state.eps)
    return replace(state, step_count=t, m=m, v=v), new_params
