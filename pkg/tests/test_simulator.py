"""State-vector semantics: bit convention, gate actions, unitarity."""
import math

import numpy as np
import pytest

from evoqc.gates import GateKind, cphase, oracle, parse, random_genome, rotx, roty, swap
from evoqc.simulator import (
    apply_gate,
    basis_state,
    gate_matrix,
    genome_matrix,
    overlap,
    run,
    state_qubits,
)

SQ2 = 1.0 / math.sqrt(2.0)


def test_basis_state():
    s = basis_state(2, 3)
    assert s.dtype == np.complex128
    assert list(s) == [0, 0, 0, 1]
    with pytest.raises(ValueError):
        basis_state(2, 4)


def test_state_qubits():
    assert state_qubits(np.zeros(8, dtype=complex)) == 3
    with pytest.raises(ValueError):
        state_qubits(np.zeros(6, dtype=complex))


def test_qubit_one_is_most_significant():
    # flipping qubit 1 by a RotX(pi) moves |00> to |10> = index 2 (up to phase)
    s = apply_gate(basis_state(2, 0), rotx(1, math.pi))
    assert abs(s[2]) == pytest.approx(1.0)
    s = apply_gate(basis_state(2, 0), rotx(2, math.pi))
    assert abs(s[1]) == pytest.approx(1.0)


def test_roty_matrix():
    u = gate_matrix(roty(1, 0.7), 1)
    c, s = math.cos(0.35), math.sin(0.35)
    assert np.allclose(u, [[c, -s], [s, c]], atol=1e-12)


def test_rotx_matrix():
    u = gate_matrix(rotx(1, 0.7), 1)
    c, s = math.cos(0.35), math.sin(0.35)
    assert np.allclose(u, [[c, -1j * s], [-1j * s, c]], atol=1e-12)


def test_hadamard_composition():
    # CPhase(pi) then RotY(pi/2) is the exact Hadamard
    u = genome_matrix((cphase(1, math.pi), roty(1, math.pi / 2)), 1)
    assert np.allclose(u, [[SQ2, SQ2], [SQ2, -SQ2]], atol=1e-12)


def test_cphase_phases_only_fully_set_states():
    g = cphase(2, math.pi / 2, controls=(1,))
    u = gate_matrix(g, 2)
    expected = np.diag([1, 1, 1, np.exp(1j * math.pi / 2)])
    assert np.allclose(u, expected, atol=1e-12)


def test_cphase_symmetric_in_qubit_roles():
    a = gate_matrix(cphase(1, 0.9, controls=(2, 3)), 3)
    b = gate_matrix(cphase(3, 0.9, controls=(1, 2)), 3)
    assert np.allclose(a, b, atol=1e-12)


def test_swap_action():
    u = gate_matrix(swap(1, 2), 2)
    expected = np.eye(4)[:, [0, 2, 1, 3]]
    assert np.allclose(u, expected, atol=1e-12)


def test_oracle_negates_marked_state():
    u = gate_matrix(oracle(), 2, binding=2)
    assert np.allclose(u, np.diag([1, 1, -1, 1]), atol=1e-12)


def test_oracle_without_binding_raises():
    with pytest.raises(ValueError, match="binding"):
        apply_gate(basis_state(2, 0), oracle())


def test_gate_beyond_register_raises():
    with pytest.raises(ValueError):
        apply_gate(basis_state(2, 0), roty(3, 1.0))


def test_run_with_initial_state():
    init = np.full(4, 0.5, dtype=complex)
    out = run((), 2, initial=init)
    assert np.allclose(out, init)
    out[0] = 0  # run must have copied
    assert init[0] == 0.5
    with pytest.raises(ValueError):
        run((), 3, initial=init)


def test_overlap_conjugates_first():
    a = np.array([1j, 0.0], dtype=complex)
    b = np.array([1.0, 0.0], dtype=complex)
    assert overlap(a, b) == pytest.approx(-1j)


def test_norm_preserved(rng):
    n = 3
    for _ in range(100):
        g = random_genome(n, tuple(GateKind), int(rng.integers(0, 20)), rng)
        s = run(g, n, input_index=int(rng.integers(0, 2**n)), binding=3)
        assert np.linalg.norm(s) == pytest.approx(1.0, abs=1e-10)


def test_genome_unitary(rng):
    n = 2
    for _ in range(30):
        g = random_genome(n, tuple(GateKind), 6, rng)
        u = genome_matrix(g, n, binding=1)
        assert np.allclose(u.conj().T @ u, np.eye(2**n), atol=1e-10)


def test_textbook_fourier_matches_dft():
    # the shipped 3-qubit circuit must equal the unitary DFT exactly
    from evoqc.fixtures import qft

    n = 3
    u = genome_matrix(qft(n), n)
    k = np.arange(2**n)
    dft = np.exp(2j * math.pi * np.outer(k, k) / 2**n) / math.sqrt(2**n)
    assert np.allclose(u, dft, atol=1e-12)


def test_batch_kernel_agrees_with_simulator(rng):
    # the compiled batch path and the readable path must tell the same story
    from evoqc.problems import FourierProblem, GroverProblem, fourier_target

    n = 3
    fp = FourierProblem(n)
    gp = GroverProblem(n)
    for _ in range(25):
        g = random_genome(n, fp.gate_kinds, int(rng.integers(0, 12)), rng)
        row = fp.evaluate_many([g])[0]
        per_input = []
        outs = []
        for j in range(2**n):
            o = overlap(fourier_target(j, n), run(g, n, input_index=j))
            outs.append(o)
            per_input.append(1.0 - abs(o))
        assert row[1] == pytest.approx(max(per_input), abs=1e-12)
        assert row[0] == pytest.approx(
            max(0.0, 1.0 - abs(sum(outs)) / 2**n), abs=1e-12
        )
    for _ in range(25):
        g = random_genome(n, gp.gate_kinds, int(rng.integers(0, 12)), rng)
        row = gp.evaluate_many([g])[0]
        errs = [
            1.0 - abs(run(g, n, binding=x)[x]) ** 2 for x in range(2**n)
        ]
        assert row[0] == pytest.approx(float(np.mean(errs)), abs=1e-12)
        assert row[1] == pytest.approx(max(errs), abs=1e-12)


def test_shipped_circuits_match_builders():
    from evoqc.fixtures import builder_for, circuit_names, load_circuit

    for name in circuit_names():
        genome, n = load_circuit(name)
        assert genome == builder_for(name), name
        assert all(g.qubits() <= set(range(1, n + 1)) for g in genome)
