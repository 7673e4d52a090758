"""Reference circuits, both as builders and as shipped .qc text files.

A Hadamard is not a primitive here; it is the two-gate sequence
CPhase(pi) then RotY(pi/2), which composes to the exact Hadamard matrix.
"""
from __future__ import annotations

import math
from importlib import resources

from .gates import Genome, cphase, oracle, parse, roty, rotx, swap

_PI = math.pi

# name -> qubit count of the shipped circuit files
_CIRCUITS = {
    "qft3": 3,
    "qft3_no_pi4": 3,
    "qft4": 4,
    "qft4_no_pi8": 4,
    "grover3": 3,
    "grover4_divide": 4,
}


def qft(n: int, drop_smallest_phase: bool = False) -> Genome:
    """Textbook Fourier circuit: per-qubit Hadamard plus descending controlled
    phases, then the bit-reversal swaps. With `drop_smallest_phase` the single
    finest phase gate (angle pi/2^(n-1), qubits 1 and n) is omitted."""
    if n < 2:
        raise ValueError("the textbook construction needs n >= 2")
    gates = []
    for q in range(1, n + 1):
        gates.append(cphase(q, _PI))
        gates.append(roty(q, _PI / 2))
        for c in range(q + 1, n + 1):
            if drop_smallest_phase and c - q == n - 1:
                continue
            gates.append(cphase(q, _PI / 2 ** (c - q), controls=(c,)))
    for a in range(1, n // 2 + 1):
        gates.append(swap(a, n + 1 - a))
    return tuple(gates)


def grover3() -> Genome:
    """Known-optimal 3-qubit search circuit: 19 gates, 2 Oracle calls.

    RotX(pi/2) on every qubit prepares a uniform-magnitude state; each
    iteration is Oracle, then the reflection about that state written as
    RotX(pi/2)^x3, CPhase(pi) on |111>, RotX(3pi/2)^x3 (the reflection's
    conjugating rotations merge with the basis-flip X gates)."""
    gates = [rotx(q, _PI / 2) for q in (1, 2, 3)]
    for _ in range(2):
        gates.append(oracle())
        gates.extend(rotx(q, _PI / 2) for q in (1, 2, 3))
        gates.append(cphase(3, _PI, controls=(1, 2)))
        gates.extend(rotx(q, 3 * _PI / 2) for q in (1, 2, 3))
    return tuple(gates)


def grover4_divide_conquer() -> Genome:
    """4-qubit search circuit that splits the register: four Oracle calls
    interleaved with X flips synthesize a two-bit oracle for the bottom qubit
    pair, one exact two-bit search fixes those qubits, and a fifth Oracle plus
    a second two-bit search fixes the top pair. 22 gates, 5 Oracle calls,
    exact for every binding."""
    g = [rotx(q, _PI / 2) for q in (1, 2, 3, 4)]
    g += [oracle(), rotx(1, _PI)]
    g += [oracle(), rotx(2, _PI)]
    g += [oracle(), rotx(1, _PI)]
    g += [oracle()]
    g += [rotx(3, _PI / 2), rotx(4, _PI / 2)]
    g += [cphase(3, _PI, controls=(4,))]
    g += [rotx(3, 3 * _PI / 2), rotx(4, 3 * _PI / 2)]
    g += [oracle()]
    g += [rotx(1, _PI / 2), rotx(2, 3 * _PI / 2)]
    g += [cphase(1, _PI, controls=(2,))]
    g += [rotx(1, 3 * _PI / 2), rotx(2, _PI / 2)]
    return tuple(g)


def circuit_names() -> tuple[str, ...]:
    return tuple(sorted(_CIRCUITS))


def load_circuit(name: str) -> tuple[Genome, int]:
    """Load a shipped circuit file; returns (genome, qubit count)."""
    n = _CIRCUITS.get(name)
    if n is None:
        raise ValueError(f"unknown circuit {name!r}; known: {', '.join(circuit_names())}")
    text = resources.files("evoqc").joinpath(f"circuits/{name}.qc").read_text()
    return parse(text, n), n


def builder_for(name: str) -> Genome:
    """Programmatic genome matching a shipped circuit file."""
    builders = {
        "qft3": lambda: qft(3),
        "qft3_no_pi4": lambda: qft(3, drop_smallest_phase=True),
        "qft4": lambda: qft(4),
        "qft4_no_pi8": lambda: qft(4, drop_smallest_phase=True),
        "grover3": grover3,
        "grover4_divide": grover4_divide_conquer,
    }
    if name not in builders:
        raise ValueError(f"unknown circuit {name!r}")
    return builders[name]()
