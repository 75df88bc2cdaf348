"""Variational circuits: ansatz builders, gradients, Adam, training loops."""

from .adam import AdamState, adam_step
from .ansatz import (
    AnsatzSpec,
    SLOTS_PER_HIERARCHICAL_PHASE,
    build_chain_ansatz,
    build_hierarchical_ansatz,
    build_honeycomb_ansatz,
    hierarchical_slots,
)
from .gradient import check_shift_eligible, parameter_shift_gradient
from .train import (
    ExactEnergy,
    HierarchicalResult,
    ParityShotEnergy,
    PhaseOutcome,
    ShotEnergy,
    TrainConfig,
    TrainRecord,
    TrainResult,
    commuting_groups,
    hierarchical_train,
    initial_params,
    make_evaluator,
    read_trajectory,
    train,
    write_trajectory,
)

__all__ = [
    "AdamState",
    "AnsatzSpec",
    "ExactEnergy",
    "HierarchicalResult",
    "ParityShotEnergy",
    "PhaseOutcome",
    "SLOTS_PER_HIERARCHICAL_PHASE",
    "ShotEnergy",
    "TrainConfig",
    "TrainRecord",
    "TrainResult",
    "adam_step",
    "build_chain_ansatz",
    "build_hierarchical_ansatz",
    "build_honeycomb_ansatz",
    "check_shift_eligible",
    "commuting_groups",
    "hierarchical_slots",
    "hierarchical_train",
    "initial_params",
    "make_evaluator",
    "parameter_shift_gradient",
    "read_trajectory",
    "train",
    "write_trajectory",
]
