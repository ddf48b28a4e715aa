"""SAT encodings for local negative circuits and cyclic attractors of Boolean networks."""

from .dynamics import (
    Attractor,
    BooleanMap,
    acyclic_paths_from,
    async_successors,
    attractors,
    fixed_points,
    reachable_non_fixed_within,
    state_from_bits,
    state_to_bits,
)
from .encoder import CnfFormula, build_q1, build_q2, parse_dimacs, write_dimacs
from .regulatory import (
    circuit_sign,
    enumerate_circuits,
    global_graph,
    has_local_negative_circuit,
    local_graph,
)
from .solver import SolveResult, decode_model, evaluate, solve
from .symmetry import HypercubeAutomorphism, conjugate, normalize_to_origin

__all__ = [
    "Attractor",
    "BooleanMap",
    "acyclic_paths_from",
    "async_successors",
    "attractors",
    "fixed_points",
    "reachable_non_fixed_within",
    "state_from_bits",
    "state_to_bits",
    "CnfFormula",
    "build_q1",
    "build_q2",
    "parse_dimacs",
    "write_dimacs",
    "circuit_sign",
    "enumerate_circuits",
    "global_graph",
    "has_local_negative_circuit",
    "local_graph",
    "SolveResult",
    "decode_model",
    "evaluate",
    "solve",
    "HypercubeAutomorphism",
    "conjugate",
    "normalize_to_origin",
]

__version__ = "0.1.0"
