"""Validation helpers shared by the public entry points."""
from __future__ import annotations

import numpy as np

from .gates import ANGLED, TWO_PI, Gate, GateKind, Genome


def check_rng(random_state=None) -> np.random.Generator:
    """Coerce None / int seed / Generator into a numpy Generator."""
    if random_state is None or isinstance(random_state, (int, np.integer)):
        return np.random.default_rng(random_state)
    if isinstance(random_state, np.random.Generator):
        return random_state
    raise TypeError(
        f"random_state must be None, an int seed or a numpy Generator, got {random_state!r}"
    )


def check_qubit_count(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"qubit count must be an integer, got {n!r}")
    if not 1 <= n <= 16:
        raise ValueError(f"qubit count must be in 1..16, got {n}")
    return int(n)


def audit_gate(gate: Gate, n: int, kinds: tuple[GateKind, ...] | None = None) -> Gate:
    """Assert a gate fits an n-qubit register (and an optional permitted-kind set)."""
    if not isinstance(gate, Gate):
        raise TypeError(f"expected a Gate, got {gate!r}")
    if kinds is not None and gate.kind not in kinds:
        raise ValueError(f"gate kind {gate.kind.name} is not permitted here")
    for q in gate.qubits():
        if q > n:
            raise ValueError(f"gate acts on qubit {q} but the register has {n}")
    if gate.kind in ANGLED and not 0.0 <= gate.angle < TWO_PI:
        raise ValueError(f"angle {gate.angle} is not canonical")
    return gate


def audit_genome(
    genome: Genome, n: int, kinds: tuple[GateKind, ...] | None = None
) -> Genome:
    """Assert every gate of a genome fits an n-qubit register."""
    for gate in genome:
        audit_gate(gate, n, kinds)
    return genome


def check_basis_indices(x, n: int) -> np.ndarray:
    """Coerce to a 1-D array of basis indices in 0..2^n - 1."""
    arr = np.asarray(x)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1 or not np.issubdtype(arr.dtype, np.integer):
        raise ValueError("expected a 1-D array of integer basis indices")
    if arr.size and (arr.min() < 0 or arr.max() >= (1 << n)):
        raise ValueError(f"basis indices must lie in 0..{(1 << n) - 1}")
    return arr.astype(np.int64)


def check_states(x, n: int) -> np.ndarray:
    """Coerce to a (n_samples, 2^n) complex matrix of finite state vectors."""
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] != (1 << n):
        raise ValueError(f"expected state vectors of length {1 << n}")
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ValueError("state vectors must be finite")
    return arr
