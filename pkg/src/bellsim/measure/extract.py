"""Signal tables, Fourier extraction of the N-body coherence, sinusoid fits.

Extraction convention: the parity signal of a state with extreme antidiagonal
element rho[1..1, 0..0] = conj(amps[0]) amps[-1] contains that element at
frequency -n, so the sum below uses e^{+i n gamma} and reproduces
qsim.antidiagonal_coherence exactly on the sparse grid (the grid aliases no
in-band frequency: |q - n| <= 2n < 2 N_s for N_s >= n+1).
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..errors import FitError, SignalsInconsistentError

_CEILING_SLACK = 1e-9


@dataclass
class SignalTable:
    method: str                 # "parity" | "mqc"
    angles: np.ndarray
    values: np.ndarray          # aggregated over repetitions
    stds: np.ndarray
    shots: np.ndarray           # per-angle shot count (0 = exact)
    repetitions: int = 1
    raw_values: np.ndarray | None = None  # (repetitions, n_angles)
    raw_stds: np.ndarray | None = None

    def __post_init__(self):
        self.angles = np.asarray(self.angles, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        self.stds = np.asarray(self.stds, dtype=float)
        self.shots = np.asarray(self.shots, dtype=np.int64)
        k = len(self.angles)
        if not (len(self.values) == len(self.stds) == len(self.shots) == k):
            raise ValueError("angles, values, stds, shots must have equal length")
        if np.any(self.stds < 0):
            raise ValueError("standard errors must be >= 0")

    def check_physical_range(self) -> None:
        """Values must sit in the physical window up to 3 sigma of noise."""
        lo, hi = (-1.0, 1.0) if self.method == "parity" else (0.0, 1.0)
        slack = 3.0 * self.stds + _CEILING_SLACK
        if np.any(self.values < lo - slack) or np.any(self.values > hi + slack):
            raise SignalsInconsistentError(
                f"{self.method} values leave [{lo}, {hi}] beyond 3 sigma"
            )


@dataclass
class CoherenceEstimate:
    value: complex              # complex <C> (parity) or magnitude |<C>| (mqc)
    std: float                  # real-quadrature std (parity) / magnitude std (mqc)
    method: str                 # "parity" | "mqc" | "sinusoid_fit"
    num_qubits: int
    energy: float | None = None
    energy_std: float | None = None
    std_imag: float = 0.0       # imaginary-quadrature std (parity only)

    def __post_init__(self):
        ceiling = 0.5 + 3.0 * (self.std + self.std_imag) + _CEILING_SLACK
        if abs(self.value) > ceiling:
            raise SignalsInconsistentError(
                f"|coherence| = {abs(self.value):.4f} above physical ceiling {ceiling:.4f}"
            )

    def to_json_dict(self) -> dict:
        return {
            "method": self.method,
            "num_qubits": self.num_qubits,
            "value_re": float(np.real(self.value)),
            "value_im": float(np.imag(self.value)),
            "std": self.std,
            "std_imag": self.std_imag,
            "energy": self.energy,
            "energy_std": self.energy_std,
        }


def energy_scale(n: int) -> float:
    """<H_B(N)> = 2^((N+1)/2) Re<C>."""
    return 2.0 ** ((n + 1) / 2.0)


def _warn_grid(n_settings: int, n: int, method: str) -> None:
    if n_settings != n + 1 and method == "parity":
        warnings.warn(
            f"parity grid has {n_settings} settings, not n+1 = {n + 1}; Fourier "
            "exactness is only guaranteed on uniform grids with N_s > n",
            stacklevel=3,
        )


def extract_coherence_parity(signals: SignalTable, n: int) -> CoherenceEstimate:
    """<C> = N_s^-1 sum_gamma e^{i n gamma} <P(gamma)>, with the derived energy."""
    if signals.method != "parity":
        raise ValueError(f"expected parity signals, got {signals.method!r}")
    signals.check_physical_range()
    _warn_grid(len(signals.angles), n, "parity")
    ns = len(signals.angles)
    phase = np.exp(1j * n * signals.angles)
    value = complex(np.sum(phase * signals.values) / ns)
    std_re = float(np.sqrt(np.sum((np.cos(n * signals.angles) * signals.stds) ** 2)) / ns)
    std_im = float(np.sqrt(np.sum((np.sin(n * signals.angles) * signals.stds) ** 2)) / ns)
    scale = energy_scale(n)
    return CoherenceEstimate(
        value=value,
        std=std_re,
        std_imag=std_im,
        method="parity",
        num_qubits=n,
        energy=scale * value.real,
        energy_std=scale * std_re,
    )


def extract_coherence_mqc(signals: SignalTable, n: int) -> CoherenceEstimate:
    """|<C>| = sqrt(N_s^-1 |sum_phi e^{i n phi} K(phi)|).

    First-order (delta method) error bar through the modulus and square root.
    Near zero signal the square root is ill-conditioned: when the radicand
    falls below its own standard error the estimate is floored at the std
    level instead of reporting a spuriously precise tiny magnitude.
    """
    if signals.method != "mqc":
        raise ValueError(f"expected mqc signals, got {signals.method!r}")
    signals.check_physical_range()
    ns = len(signals.angles)
    phase = np.exp(1j * n * signals.angles)
    fourier = complex(np.sum(phase * signals.values) / ns)
    radicand = abs(fourier)
    if radicand > 0:
        weights = np.real(phase * np.conj(fourier)) / radicand / ns
    else:
        weights = np.full(ns, 1.0 / ns)
    rad_std = float(np.sqrt(np.sum((weights * signals.stds) ** 2)))

    if radicand == 0 and rad_std == 0:
        mag, mag_std = 0.0, 0.0
    elif radicand < rad_std:
        mag = float(np.sqrt(rad_std))
        mag_std = mag / 2.0
    else:
        mag = float(np.sqrt(radicand))
        mag_std = rad_std / (2.0 * mag)
    return CoherenceEstimate(
        value=complex(mag), std=mag_std, method="mqc", num_qubits=n
    )


def combine_mqc_energy(
    mqc: CoherenceEstimate, parity: CoherenceEstimate
) -> CoherenceEstimate:
    """Energy from the MQC magnitude with the phase taken from parity.

    The echo cannot resolve the coherence phase, so Re<C> is reconstructed as
    |C|_mqc cos(arg <C>_parity).
    """
    if mqc.method != "mqc" or parity.method != "parity":
        raise ValueError("need one mqc and one parity estimate")
    if mqc.num_qubits != parity.num_qubits:
        raise ValueError("estimates refer to different system sizes")
    n = mqc.num_qubits
    phase = np.angle(parity.value) if parity.value != 0 else 0.0
    mag = float(np.real(mqc.value))
    re = mag * np.cos(phase)
    # phase variance from the quadrature orthogonal to the parity value
    pv = abs(parity.value)
    if pv > 0:
        c, s = np.cos(phase), np.sin(phase)
        sigma_perp = float(np.hypot(s * parity.std, c * parity.std_imag))
        phase_std = sigma_perp / pv
    else:
        phase_std = 0.0
    re_std = float(np.hypot(np.cos(phase) * mqc.std, mag * np.sin(phase) * phase_std))
    scale = energy_scale(n)
    return CoherenceEstimate(
        value=complex(mag * np.cos(phase), mag * np.sin(phase)),
        std=re_std,
        method="mqc",
        num_qubits=n,
        energy=scale * re,
        energy_std=scale * re_std,
    )


# ---------------------------------------------------------------------------
# sinusoid fit


@dataclass(frozen=True)
class FitResult:
    amplitude: float
    phase: float                # in (-pi, pi]
    amplitude_std: float
    phase_std: float


def sinusoid_fit(signals: SignalTable, freq: int) -> FitResult:
    """Least squares of a cos(freq * angle + b) against the signal values.

    Weighted by 1/std^2 when every point carries an error bar; plain least
    squares otherwise (exact signals).
    """
    angles, values, stds = signals.angles, signals.values, signals.stds
    if len(angles) < 3:
        raise ValueError("sinusoid fit needs at least 3 settings")
    design = np.column_stack([np.cos(freq * angles), np.sin(freq * angles)])
    if np.all(stds > 0):
        w = 1.0 / stds
        dw, yw = design * w[:, None], values * w
    else:
        dw, yw = design, values
    gram = dw.T @ dw
    if np.linalg.matrix_rank(gram) < 2 or np.linalg.cond(gram) > 1e12:
        raise FitError("degenerate settings: cos/sin design is rank-deficient")
    coef = np.linalg.solve(gram, dw.T @ yw)
    a_cos, b_sin = coef  # y ~ a_cos cos + b_sin sin
    amplitude = float(np.hypot(a_cos, b_sin))
    phase = float(np.arctan2(-b_sin, a_cos)) if amplitude > 0 else 0.0
    if phase <= -np.pi:
        phase = np.pi

    if np.all(stds > 0):
        cov = np.linalg.inv(gram)
        if amplitude > 0:
            ga = np.array([a_cos, b_sin]) / amplitude
            gb = np.array([b_sin, -a_cos]) / amplitude**2
            amp_std = float(np.sqrt(ga @ cov @ ga))
            phase_std = float(np.sqrt(gb @ cov @ gb))
        else:
            amp_std = float(np.sqrt(np.trace(cov)))
            phase_std = float(np.pi)
    else:
        amp_std = phase_std = 0.0
    return FitResult(amplitude, phase, amp_std, phase_std)


def coherence_from_fit(fit: FitResult, n: int) -> CoherenceEstimate:
    """Map a parity-signal fit a cos(n gamma + b) to <C> = (a/2) e^{-i b}."""
    value = 0.5 * fit.amplitude * np.exp(-1j * fit.phase)
    std = 0.5 * fit.amplitude_std
    scale = energy_scale(n)
    return CoherenceEstimate(
        value=complex(value),
        std=std,
        std_imag=0.5 * fit.amplitude * fit.phase_std,
        method="sinusoid_fit",
        num_qubits=n,
        energy=scale * value.real,
        energy_std=scale
        * float(np.hypot(np.cos(fit.phase) * std, 0.5 * fit.amplitude * np.sin(fit.phase) * fit.phase_std)),
    )


# ---------------------------------------------------------------------------
# persistence


def write_signals_csv(tables: list[SignalTable], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "angle", "value", "std", "shots", "repetition"])
        for table in tables:
            if table.raw_values is not None:
                for rep in range(table.repetitions):
                    for k, angle in enumerate(table.angles):
                        writer.writerow([
                            table.method, repr(float(angle)),
                            repr(float(table.raw_values[rep, k])),
                            repr(float(table.raw_stds[rep, k])),
                            int(table.shots[k]), rep,
                        ])
            else:
                for k, angle in enumerate(table.angles):
                    writer.writerow([
                        table.method, repr(float(angle)),
                        repr(float(table.values[k])), repr(float(table.stds[k])),
                        int(table.shots[k]), 0,
                    ])
