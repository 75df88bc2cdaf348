"""Bell expressions, operators, bounds, and depth certification."""

from .bounds import k_nonlocal_bound, lhv_bound_bruteforce
from .depth import DepthCertificate, DepthMargin, certify_depth
from .expressions import (
    BellExpression,
    MeasurementAssignment,
    build_chain_expression,
    build_chsh_expression,
    build_gisin_expression,
    build_honeycomb_expression,
    build_mermin_expression,
    build_svetlichny_expression,
    chain_weights,
    honeycomb_couplings,
    svetlichny_angles,
)
from .lattice import (
    HoneycombLattice,
    brick_wall_patch,
    lattice_from_dict,
    load_lattice,
    save_lattice,
    single_link_lattice,
)
from .operators import (
    AntidiagonalOperator,
    bell_operator_from_expression,
    build_chain_hamiltonian,
    build_honeycomb_hamiltonian,
    classical_bound_chain,
    depth_witness_operator,
    honeycomb_classical_bound,
)

__all__ = [
    "AntidiagonalOperator",
    "BellExpression",
    "DepthCertificate",
    "DepthMargin",
    "HoneycombLattice",
    "MeasurementAssignment",
    "bell_operator_from_expression",
    "brick_wall_patch",
    "build_chain_expression",
    "build_chain_hamiltonian",
    "build_chsh_expression",
    "build_gisin_expression",
    "build_honeycomb_expression",
    "build_honeycomb_hamiltonian",
    "build_mermin_expression",
    "build_svetlichny_expression",
    "certify_depth",
    "chain_weights",
    "classical_bound_chain",
    "depth_witness_operator",
    "honeycomb_classical_bound",
    "honeycomb_couplings",
    "k_nonlocal_bound",
    "lattice_from_dict",
    "lhv_bound_bruteforce",
    "load_lattice",
    "save_lattice",
    "single_link_lattice",
    "svetlichny_angles",
]
