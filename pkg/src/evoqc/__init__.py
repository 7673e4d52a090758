"""Multi-objective evolutionary search for quantum circuits.

The package evolves variable-length gate sequences against semantic
specifications (a Fourier transform of the register, or a Grover-style
search employing an oracle) while simultaneously minimising circuit size,
and exposes the Pareto front of accuracy/size trade-offs.
"""
from .estimator import CircuitSearch
from .evolve import (
    EvolutionParams,
    EvolutionResult,
    Threshold,
    apply_operator,
    best_by_overall,
    best_by_worst,
    evolve,
    initialize,
    step,
)
from .fixtures import circuit_names, load_circuit
from .gates import (
    Gate,
    GateKind,
    Genome,
    canonical_angle,
    cphase,
    genome_counts,
    invert_gate,
    merge_adjacent,
    oracle,
    parse,
    random_gate,
    random_genome,
    rotx,
    roty,
    serialize,
    swap,
)
from .pareto import dominates, nondominated_sort, selection_probabilities
from .problems import FourierProblem, GroverProblem, make_problem, total_gates
from .simulator import apply_gate, basis_state, genome_matrix, overlap, run

__version__ = "0.1.0"

__all__ = [
    "CircuitSearch",
    "EvolutionParams",
    "EvolutionResult",
    "FourierProblem",
    "Gate",
    "GateKind",
    "Genome",
    "GroverProblem",
    "Threshold",
    "apply_gate",
    "apply_operator",
    "basis_state",
    "best_by_overall",
    "best_by_worst",
    "canonical_angle",
    "circuit_names",
    "cphase",
    "dominates",
    "evolve",
    "genome_counts",
    "genome_matrix",
    "initialize",
    "invert_gate",
    "load_circuit",
    "make_problem",
    "merge_adjacent",
    "nondominated_sort",
    "oracle",
    "overlap",
    "parse",
    "random_gate",
    "random_genome",
    "rotx",
    "roty",
    "run",
    "selection_probabilities",
    "serialize",
    "step",
    "swap",
    "total_gates",
]
