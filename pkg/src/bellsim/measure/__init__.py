"""Emulated measurement pipelines: parity oscillation, multiple quantum
coherence, readout errors and their mitigation, coherence extraction."""

from .extract import (
    CoherenceEstimate,
    FitResult,
    SignalTable,
    coherence_from_fit,
    combine_mqc_energy,
    energy_scale,
    extract_coherence_mqc,
    extract_coherence_parity,
    sinusoid_fit,
    write_signals_csv,
)
from .protocols import (
    SHOTS_SCHEDULE,
    measure_mqc,
    measure_parity,
    mqc_echo_circuit,
    mqc_settings,
    parity_rotation_ops,
    parity_settings,
    run_mqc_pipeline,
    run_parity_pipeline,
    run_pipeline,
    shots_schedule,
)
from .readout import (
    ReadoutModel,
    apply_readout_error,
    ground_indicator_observable,
    mitigate_readout,
    parity_observable,
    product_estimate,
)

__all__ = [
    "CoherenceEstimate",
    "FitResult",
    "ReadoutModel",
    "SHOTS_SCHEDULE",
    "SignalTable",
    "apply_readout_error",
    "coherence_from_fit",
    "combine_mqc_energy",
    "energy_scale",
    "extract_coherence_mqc",
    "extract_coherence_parity",
    "ground_indicator_observable",
    "measure_mqc",
    "measure_parity",
    "mitigate_readout",
    "mqc_echo_circuit",
    "mqc_settings",
    "parity_observable",
    "parity_rotation_ops",
    "parity_settings",
    "product_estimate",
    "run_mqc_pipeline",
    "run_parity_pipeline",
    "run_pipeline",
    "shots_schedule",
    "sinusoid_fit",
    "write_signals_csv",
]
