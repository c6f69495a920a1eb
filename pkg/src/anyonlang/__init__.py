"""Typed topological quantum programs: anyon models, fusion spaces, braid transport and gate synthesis."""

from .anyon_data import (
    AnyonModel,
    fibonacci_model,
    ising_model,
    quantum_dimension,
    su2k_model,
    trivial_model,
    verify_hexagon,
    verify_pentagon,
)
from .braiding import BraidWord, braid_unitary, relation_residuals, sigma_matrix, transport
from .fusion_space import Boundary, StateVector, basis_state, dim, enumerate_trees, inner_product
from .synth import SynthResult, brute_force_synth, distance, sk_refine

__version__ = "0.1.0"

__all__ = [
    "AnyonModel",
    "Boundary",
    "BraidWord",
    "StateVector",
    "SynthResult",
    "basis_state",
    "braid_unitary",
    "brute_force_synth",
    "dim",
    "distance",
    "enumerate_trees",
    "fibonacci_model",
    "inner_product",
    "ising_model",
    "quantum_dimension",
    "relation_residuals",
    "sigma_matrix",
    "sk_refine",
    "su2k_model",
    "transport",
    "trivial_model",
    "verify_hexagon",
    "verify_pentagon",
]
