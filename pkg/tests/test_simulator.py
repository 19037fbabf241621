"""Dense circuit evaluation against a naive Kronecker-embedding oracle."""

import numpy as np
import pytest

from pisu import (
    Circuit,
    Gate,
    UnboundParameterError,
    circuit_unitary,
    equal_up_to_global_phase,
    gate_matrix,
    unitarity_defect,
)

import oracles


def _random_circuit(rng, n, depth):
    gates = []
    params = {}
    for k in range(depth):
        roll = rng.integers(0, 5)
        if roll == 0 and n >= 2:
            a, b = rng.choice(np.arange(1, n + 1), size=2, replace=False)
            gates.append(Gate("CNOT", (int(a), int(b))))
        elif roll == 1:
            gates.append(Gate("H", (int(rng.integers(1, n + 1)),)))
        elif roll == 2:
            gates.append(Gate("S" if rng.integers(2) else "Sdg", (int(rng.integers(1, n + 1)),)))
        else:
            kind = ["RX", "RY", "RZ"][int(rng.integers(3))]
            name = f"p{k}"
            params[name] = float(rng.uniform(0, 2 * np.pi))
            gates.append(Gate(kind, (int(rng.integers(1, n + 1)),), name))
    return Circuit(n, tuple(gates), params)


def test_empty_circuit_is_identity():
    assert np.array_equal(circuit_unitary(Circuit(2)), np.eye(4))


def test_cnot_control_first_qubit():
    # control on qubit 1 (most significant bit): the standard textbook matrix
    expected = np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    )
    u = circuit_unitary(Circuit(2, (Gate("CNOT", (1, 2)),)))
    assert np.array_equal(u, expected)


def test_cnot_control_second_qubit():
    # the reversed gate swaps basis states 2 and 4 (1-based)
    expected = np.array(
        [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex
    )
    u = circuit_unitary(Circuit(2, (Gate("CNOT", (2, 1)),)))
    assert np.array_equal(u, expected)


def test_gate_matrices_frozen():
    assert np.abs(gate_matrix("H") - oracles.H).max() < 1e-15
    assert np.abs(gate_matrix("S") - oracles.S).max() < 1e-15
    assert np.abs(gate_matrix("Sdg") - oracles.SDG).max() < 1e-15
    theta = 0.71
    for kind in ("RX", "RY", "RZ"):
        assert np.abs(gate_matrix(kind, theta) - oracles.rotation(kind, theta)).max() < 1e-15
    with pytest.raises(UnboundParameterError):
        gate_matrix("RX")


def test_sliced_application_matches_naive_embedding():
    rng = np.random.default_rng(41)
    for _ in range(20):
        n = int(rng.integers(1, 5))
        c = _random_circuit(rng, n, int(rng.integers(1, 12)))
        assert np.abs(circuit_unitary(c) - oracles.naive_circuit_unitary(c)).max() < 1e-12


def test_concatenation_is_matrix_product():
    rng = np.random.default_rng(43)
    for _ in range(10):
        n = int(rng.integers(2, 6))
        c1 = _random_circuit(rng, n, 5)
        c2 = _random_circuit(rng, n, 5)
        c2 = Circuit(n, tuple(Gate(g.kind, g.qubits, g.param and "q" + g.param) for g in c2.gates),
                     {"q" + k: v for k, v in c2.params.items()})
        whole = circuit_unitary(c1 + c2)
        parts = circuit_unitary(c2) @ circuit_unitary(c1)
        assert np.abs(whole - parts).max() < 1e-12


def test_circuits_evaluate_to_unitaries():
    rng = np.random.default_rng(47)
    for _ in range(10):
        c = _random_circuit(rng, int(rng.integers(1, 6)), 20)
        assert unitarity_defect(circuit_unitary(c)) < 1e-10


def test_unbound_parameter_raises():
    c = Circuit(1, (Gate("RX", (1,), "free"),))
    with pytest.raises(UnboundParameterError):
        circuit_unitary(c)


def test_equal_up_to_global_phase_identical():
    u = oracles.cnot_full(1, 2, 2)
    result = equal_up_to_global_phase(u, u)
    assert result.passed
    assert abs(result.global_phase - 1) < 1e-12


def test_equal_up_to_global_phase_i_factor():
    u = oracles.word_matrix("XZ")
    result = equal_up_to_global_phase(1j * u, u)
    assert result.passed
    assert abs(result.global_phase - 1j) < 1e-12
    assert abs(abs(result.global_phase) - 1.0) < 1e-12


def test_equal_up_to_global_phase_distinct():
    assert not equal_up_to_global_phase(oracles.cnot_full(1, 2, 2), np.eye(4)).passed


def test_equal_up_to_global_phase_zero_trace_fallback():
    # trace(Z X) = 0 exercises the entry-pair fallback; they still differ
    u = oracles.word_matrix("X")
    v = oracles.word_matrix("Z")
    assert not equal_up_to_global_phase(u, v).passed


def test_equal_up_to_global_phase_shape_mismatch():
    with pytest.raises(ValueError):
        equal_up_to_global_phase(np.eye(2), np.eye(4))


def test_yy_generator_circuit_at_fixed_angle():
    from pisu import SymmetrizedGenerator, TypeVector, dense_exponential, synth_generator

    tv = TypeVector(0, 2, 0, 0)
    gen = SymmetrizedGenerator(tv, tv.label)
    u = circuit_unitary(synth_generator(gen, 0.7))
    assert np.abs(u - dense_exponential(gen, 0.7)).max() < 1e-10


def test_moderate_width_circuit():
    # a 10-qubit ladder exponential evaluates quickly and correctly
    from pisu import PauliString, synth_string

    word = "XXXXXXXXXX"
    theta = 0.31
    u = circuit_unitary(synth_string(PauliString.from_letters(word), theta))
    want = np.cos(theta / 2) * np.eye(2**10) - 1j * np.sin(theta / 2) * oracles.word_matrix(word)
    assert np.abs(u - want).max() < 1e-10
