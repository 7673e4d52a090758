"""Search targets: fitness vectors for circuit discovery.

A problem turns a genome into a minimized objective vector

    (overall error, worst-case error, per-kind gate counts...)

Fourier: the genome should implement the discrete Fourier transform on all
2^n basis inputs. Grover: from input |0...0> the genome should maximize the
probability of measuring the marked state for every oracle binding.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import _kernels
from .gates import GateKind, Genome
from .validation import check_qubit_count


@lru_cache(maxsize=None)
def fourier_matrix(n: int) -> np.ndarray:
    """DFT matrix F[k, j] = exp(2*pi*i*j*k/2^n) / 2^(n/2)."""
    dim = 1 << n
    j, k = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
    f = np.exp(2j * np.pi * j * k / dim) / np.sqrt(dim)
    f.setflags(write=False)
    return f


def fourier_target(j: int, n: int) -> np.ndarray:
    """Target state F|j>: the exact Fourier transform of basis input j."""
    dim = 1 << n
    if not 0 <= j < dim:
        raise ValueError(f"basis index {j} outside 0..{dim - 1}")
    return fourier_matrix(n)[:, j].copy()


def total_gates(fitness: np.ndarray) -> int:
    """Total gate count encoded in a fitness vector (sum of count objectives)."""
    return int(round(float(np.sum(fitness[2:]))))


def _pack(genomes, count_kinds, n):
    """Flatten genomes into the kernel arrays; also count permitted kinds."""
    m = len(genomes)
    kinds: list[int] = []
    f1: list[int] = []
    f2: list[int] = []
    angles: list[float] = []
    offsets = np.empty(m + 1, np.int64)
    offsets[0] = 0
    counts = np.zeros((m, len(count_kinds)), np.float64)
    col = {kind: i for i, kind in enumerate(count_kinds)}
    top = 1 << n
    for gi, genome in enumerate(genomes):
        for g in genome:
            c = col.get(g.kind)
            if c is None:
                raise ValueError(f"gate kind {g.kind.name} is not permitted here")
            if (g._f1 >= top if g.kind is GateKind.CPHASE
                    else max(g.target, g.target2) > n):
                raise ValueError(f"gate acts beyond the {n}-qubit register")
            counts[gi, c] += 1.0
            kinds.append(int(g.kind))
            f1.append(g._f1)
            f2.append(g._f2)
            angles.append(g.angle)
        offsets[gi + 1] = len(kinds)
    return (
        np.array(kinds, np.int64),
        np.array(f1, np.int64),
        np.array(f2, np.int64),
        np.array(angles, np.float64),
        offsets,
        counts,
    )


class FourierProblem:
    """Discover the discrete Fourier transform with RotY, CPhase and Swap gates."""

    name = "fourier"
    gate_kinds = (GateKind.ROT_Y, GateKind.CPHASE, GateKind.SWAP)
    count_kinds = (GateKind.ROT_Y, GateKind.CPHASE, GateKind.SWAP)
    objective_names = ("overall_error", "worst_error", "n_roty", "n_cphase", "n_swap")
    oracle_index = None

    def __init__(self, n_qubits: int, overall_mode: str = "sum-outside"):
        if overall_mode not in ("sum-outside", "sum-inside"):
            raise ValueError(f"unknown overall mode {overall_mode!r}")
        self.n_qubits = check_qubit_count(n_qubits)
        self.dim = 1 << self.n_qubits
        self.overall_mode = overall_mode
        self._f = np.ascontiguousarray(fourier_matrix(self.n_qubits))

    def evaluate_many(self, genomes) -> np.ndarray:
        """Fitness matrix, one row per genome."""
        if len(genomes) == 0:
            return np.zeros((0, len(self.objective_names)))
        kinds, f1, f2, angles, offsets, counts = _pack(genomes, self.count_kinds, self.n_qubits)
        overlaps = _kernels.eval_fourier_batch(
            kinds, f1, f2, angles, offsets, self.n_qubits, self._f
        )
        per_input = 1.0 - np.abs(overlaps)
        worst = np.maximum(per_input.max(axis=1), 0.0)
        if self.overall_mode == "sum-outside":
            # a single consistent phase across all inputs is required for zero error
            overall = 1.0 - np.abs(overlaps.sum(axis=1)) / self.dim
        else:
            overall = per_input.mean(axis=1)
        overall = np.maximum(overall, 0.0)
        return np.column_stack((overall, worst, counts))

    def evaluate(self, genome: Genome) -> np.ndarray:
        return self.evaluate_many([genome])[0]


class GroverProblem:
    """Discover a search circuit over RotX, CPhase and Oracle gates.

    Every binding x of the hidden marked state is simulated from |0...0>;
    the per-binding error is 1 - |<x|psi_x>|^2. The Oracle count is the
    first count objective.
    """

    name = "grover"
    gate_kinds = (GateKind.ROT_X, GateKind.CPHASE, GateKind.ORACLE)
    count_kinds = (GateKind.ORACLE, GateKind.ROT_X, GateKind.CPHASE)
    objective_names = ("overall_error", "worst_error", "n_oracle", "n_rotx", "n_cphase")
    oracle_index = 2

    def __init__(self, n_qubits: int):
        self.n_qubits = check_qubit_count(n_qubits)
        self.dim = 1 << self.n_qubits

    def evaluate_many(self, genomes) -> np.ndarray:
        """Fitness matrix, one row per genome."""
        if len(genomes) == 0:
            return np.zeros((0, len(self.objective_names)))
        kinds, f1, f2, angles, offsets, counts = _pack(genomes, self.count_kinds, self.n_qubits)
        success = _kernels.eval_grover_batch(
            kinds, f1, f2, angles, offsets, self.n_qubits
        )
        errors = 1.0 - success
        worst = np.maximum(errors.max(axis=1), 0.0)
        overall = np.maximum(errors.mean(axis=1), 0.0)
        return np.column_stack((overall, worst, counts))

    def evaluate(self, genome: Genome) -> np.ndarray:
        return self.evaluate_many([genome])[0]


Problem = FourierProblem | GroverProblem


def make_problem(
    name: str, n_qubits: int, fourier_overall: str = "sum-outside"
) -> Problem:
    if name == "fourier":
        return FourierProblem(n_qubits, overall_mode=fourier_overall)
    if name == "grover":
        return GroverProblem(n_qubits)
    raise ValueError(f"unknown problem {name!r}")
