"""Reference state-vector simulation, one gate application at a time.

This is the readable numpy path used by tests, the CLI evaluator and the
estimator facade. The search engine evaluates genomes through the packed
batch kernels instead; the two routes are cross-checked in the test suite.
States are dense complex vectors of length 2^n, index bit (n - q) holding
qubit q (qubit 1 = most significant bit). No gate ever builds a full
2^n x 2^n matrix here; the matrix helpers below exist for inspection and
test oracles only.
"""
from __future__ import annotations

import numpy as np

from .gates import Gate, GateKind, Genome


def state_qubits(state: np.ndarray) -> int:
    """Number of qubits for a state vector; validates the power-of-two length."""
    dim = state.shape[0]
    n = dim.bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise ValueError(f"state length {dim} is not a power of two >= 2")
    return n


def basis_state(n: int, index: int) -> np.ndarray:
    if not 0 <= index < (1 << n):
        raise ValueError(f"basis index {index} outside 0..{(1 << n) - 1}")
    state = np.zeros(1 << n, dtype=np.complex128)
    state[index] = 1.0
    return state


def apply_gate(state: np.ndarray, gate: Gate, binding: int | None = None) -> np.ndarray:
    """Apply one gate to a state vector, returning a new vector."""
    state = np.asarray(state, dtype=np.complex128)
    n = state_qubits(state)
    for q in gate.qubits():
        if q > n:
            raise ValueError(f"gate acts on qubit {q} but the register has {n}")
    out = state.copy()
    kind = gate.kind
    if kind in (GateKind.ROT_Y, GateKind.ROT_X):
        bit = 1 << (n - gate.target)
        k = np.arange(1 << n)
        k0 = k[(k & bit) == 0]
        k1 = k0 | bit
        c = np.cos(gate.angle / 2)
        s = np.sin(gate.angle / 2)
        v0, v1 = state[k0], state[k1]
        if kind is GateKind.ROT_Y:
            out[k0] = c * v0 - s * v1
            out[k1] = s * v0 + c * v1
        else:
            out[k0] = c * v0 - 1j * s * v1
            out[k1] = -1j * s * v0 + c * v1
    elif kind is GateKind.CPHASE:
        mask = 0
        for q in gate.controls | {gate.target}:
            mask |= 1 << (n - q)
        k = np.arange(1 << n)
        sel = (k & mask) == mask
        out[sel] = state[sel] * np.exp(1j * gate.angle)
    elif kind is GateKind.SWAP:
        b1 = 1 << (n - gate.target)
        b2 = 1 << (n - gate.target2)
        k = np.arange(1 << n)
        k0 = k[((k & b1) != 0) & ((k & b2) == 0)]
        k1 = (k0 ^ b1) | b2
        out[k0] = state[k1]
        out[k1] = state[k0]
    else:  # Oracle
        if binding is None:
            raise ValueError("genome contains an Oracle gate but no binding was given")
        if not 0 <= binding < (1 << n):
            raise ValueError(f"oracle binding {binding} outside 0..{(1 << n) - 1}")
        out[binding] = -state[binding]
    return out


def run(
    genome: Genome,
    n: int,
    input_index: int = 0,
    binding: int | None = None,
    initial: np.ndarray | None = None,
) -> np.ndarray:
    """Simulate a genome from a basis input (or an explicit initial state)."""
    if initial is None:
        state = basis_state(n, input_index)
    else:
        state = np.asarray(initial, dtype=np.complex128).copy()
        if state_qubits(state) != n:
            raise ValueError("initial state size does not match the qubit count")
    for gate in genome:
        state = apply_gate(state, gate, binding)
    return state


def overlap(a: np.ndarray, b: np.ndarray) -> complex:
    """Inner product <a|b> (conjugates the first argument)."""
    return complex(np.vdot(a, b))


def gate_matrix(gate: Gate, n: int, binding: int | None = None) -> np.ndarray:
    """Dense unitary of one gate, built column by column. Inspection use only."""
    dim = 1 << n
    u = np.empty((dim, dim), dtype=np.complex128)
    for j in range(dim):
        u[:, j] = apply_gate(basis_state(n, j), gate, binding)
    return u


def genome_matrix(genome: Genome, n: int, binding: int | None = None) -> np.ndarray:
    """Dense unitary of a whole genome. Inspection use only."""
    dim = 1 << n
    u = np.empty((dim, dim), dtype=np.complex128)
    for j in range(dim):
        u[:, j] = run(genome, n, input_index=j, binding=binding)
    return u
