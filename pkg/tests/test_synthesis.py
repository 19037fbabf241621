"""Circuit synthesis: string exponentials, generator products, CNOT accounting."""

import numpy as np
import pytest

from pisu import (
    Circuit,
    Gate,
    NonCommutingOrbitError,
    PauliString,
    SymmetrizedGenerator,
    SynthesisPlan,
    TypeVector,
    circuit_from_json,
    circuit_from_qasm,
    circuit_to_json,
    circuit_to_qasm,
    circuit_unitary,
    cnot_count,
    commuting_orbit,
    dense_exponential,
    enumerate_basis,
    equal_up_to_global_phase,
    naive_cnot_budget,
    swap_invariance_defect,
    swap_matrix,
    synth_generator,
    synth_string,
    unitarity_defect,
)

import oracles


def _generator(n_x, n_y, n_z, n_i):
    tv = TypeVector(n_x, n_y, n_z, n_i)
    return SymmetrizedGenerator(tv, tv.label)


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("Q", (1,))
    with pytest.raises(ValueError):
        Gate("CNOT", (1, 1))
    with pytest.raises(ValueError):
        Gate("RX", (1,))  # rotation without a parameter
    with pytest.raises(ValueError):
        Gate("H", (1,), "theta")  # parameter on a fixed gate
    with pytest.raises(ValueError):
        Gate("H", (1, 2))


def test_circuit_validation_and_binding():
    with pytest.raises(ValueError):
        Circuit(2, (Gate("H", (3,)),))
    c = Circuit(2, (Gate("RX", (1,), "a"),), {"a": 0.5})
    rebound = c.bind({"a": 1.0})
    assert rebound.params["a"] == 1.0
    assert c.params["a"] == 0.5
    with pytest.raises(ValueError):
        c.bind({"nope": 1.0})


def test_circuit_concat_conflicts():
    a = Circuit(1, (Gate("RX", (1,), "t"),), {"t": 0.5})
    b = Circuit(1, (Gate("RX", (1,), "t"),), {"t": 0.6})
    with pytest.raises(ValueError):
        a.concat(b)
    merged = a.concat(Circuit(1, (Gate("RX", (1,), "t"),), {"t": 0.5}))
    assert len(merged.gates) == 2


def test_synth_string_xx_structure():
    c = synth_string(PauliString.from_letters("XX"), 0.7)
    assert [g.kind for g in c.gates] == ["CNOT", "RX", "CNOT"]
    assert cnot_count(c) == 2
    theta = 0.7
    want = np.cos(theta / 2) * np.eye(4) - 1j * np.sin(theta / 2) * oracles.word_matrix("XX")
    assert np.abs(circuit_unitary(c) - want).max() < 1e-12


def test_synth_string_zz_is_diagonal():
    theta = 1.1
    c = synth_string(PauliString.from_letters("ZZ"), theta)
    u = circuit_unitary(c)
    off_diag = u - np.diag(np.diag(u))
    assert np.abs(off_diag).max() < 1e-12
    assert np.abs(u - oracles.expm_oracle(oracles.word_matrix("ZZ"), theta)).max() < 1e-10


def test_synth_string_five_qubit_ladder():
    # z z y 1 z: wrapped backbone with the identity qubit skipped
    word = "ZZYIZ"
    theta = 0.83
    c = synth_string(PauliString.from_letters(word), theta)
    u = circuit_unitary(c)
    want = oracles.expm_oracle(oracles.word_matrix(word), theta)
    assert np.abs(u - want).max() < 1e-10
    touched = {q for g in c.gates for q in g.qubits}
    assert 4 not in touched


def test_synth_string_single_letter_wrappers():
    # the Y and Z wrappers must reproduce the plain axis rotations
    theta = 0.37
    for word, kind in (("Y", "RY"), ("Z", "RZ"), ("X", "RX")):
        u = circuit_unitary(synth_string(PauliString.from_letters(word), theta))
        assert np.abs(u - oracles.rotation(kind, theta)).max() < 1e-12


def test_synth_string_preconditions():
    with pytest.raises(ValueError):
        synth_string(PauliString.from_letters("II"), 0.5)
    with pytest.raises(ValueError):
        synth_string(PauliString.from_letters("XX", coeff=-1), 0.5)
    with pytest.raises(ValueError):
        synth_string(PauliString.from_letters("XIX"), 0.5, pivot=2)
    with pytest.raises(ValueError):
        synth_string(PauliString.from_letters("XX"), 0.5, pivot=5)


def test_ladder_order_freedom():
    rng = np.random.default_rng(31)
    word = "XZZYX"
    s = PauliString.from_letters(word)
    reference = circuit_unitary(synth_string(s, 0.9))
    targets = [q for q in s.support() if q != 1]
    for _ in range(6):
        order = list(rng.permutation(targets))
        u = circuit_unitary(synth_string(s, 0.9, ladder_order=[int(q) for q in order]))
        assert np.abs(u - reference).max() < 1e-12
    with pytest.raises(ValueError):
        synth_string(s, 0.9, ladder_order=[2, 3])


def test_pivot_choice_is_physically_irrelevant():
    s = PauliString.from_letters("ZYIX")
    reference = circuit_unitary(synth_string(s, 1.3))
    for pivot in s.support():
        u = circuit_unitary(synth_string(s, 1.3, pivot=pivot))
        assert np.abs(u - reference).max() < 1e-12


def test_synth_generator_x_type_is_parallel_rotations():
    c = synth_generator(_generator(1, 0, 0, 1), 0.4)
    assert isinstance(c, Circuit)
    assert [(g.kind, g.qubits) for g in c.gates] == [("RX", (1,)), ("RX", (2,))]
    assert len(set(g.param for g in c.gates)) == 1


def test_synth_generator_exact_matches_dense():
    rng = np.random.default_rng(37)
    for n in (2, 3, 4, 5):
        for gen in enumerate_basis(n):
            if not commuting_orbit(gen):
                continue
            for theta in rng.uniform(0, 2 * np.pi, size=20):
                c = synth_generator(gen, float(theta), SynthesisPlan("exact-product"))
                result = equal_up_to_global_phase(
                    circuit_unitary(c.bind({"theta": float(theta)})),
                    dense_exponential(gen, float(theta)),
                    1e-10,
                )
                assert result.passed, (n, gen.label, theta)


def test_synth_generator_rebinding():
    gen = _generator(1, 1, 0, 0)
    c = synth_generator(gen, 0.7)
    rebound = c.bind({"theta": 1.9})
    assert np.abs(circuit_unitary(rebound) - dense_exponential(gen, 1.9)).max() < 1e-10


def test_exact_product_rejects_noncommuting_orbit():
    gen = _generator(1, 1, 1, 0)
    with pytest.raises(NonCommutingOrbitError):
        synth_generator(gen, 0.5, SynthesisPlan("exact-product"))


def test_dense_mode_returns_matrix():
    gen = _generator(1, 1, 1, 0)
    u = synth_generator(gen, 0.5, SynthesisPlan("dense-exponential"))
    assert isinstance(u, np.ndarray)
    assert unitarity_defect(u) < 1e-12


def test_commuting_orbit_examples():
    assert commuting_orbit(_generator(1, 1, 0, 0))  # {XY, YX}
    assert not commuting_orbit(_generator(1, 1, 1, 0))
    assert commuting_orbit(_generator(2, 0, 0, 0))  # single string


def test_identity_free_two_letter_orbits_commute():
    # two arrangements of an identity-free word differ in equally many
    # P-over-Q and Q-over-P positions, an even total, so they commute
    for n in range(1, 6):
        for gen in enumerate_basis(n):
            tv = gen.type_vector
            if tv.n_i == 0 and tv.distinct_letters() <= 2:
                assert commuting_orbit(gen), gen.label


@pytest.mark.xfail(
    strict=True,
    reason="two distinct letters plus identities do not commute in general: "
    "[X(x)Y(x)1, 1(x)X(x)Y] has exactly one overlapping anticommuting "
    "position; the two-of-three condition only holds identity-free",
)
def test_two_letter_orbits_always_commute_claim():
    for n in range(1, 6):
        for gen in enumerate_basis(n):
            if gen.type_vector.distinct_letters() <= 2:
                assert commuting_orbit(gen), gen.label


def test_commuting_orbit_characterization_recorded():
    # exhaustive record for n <= 5: an orbit pairwise commutes iff it uses
    # at most one distinct letter, or no identities and at most two letters
    for n in range(1, 6):
        for gen in enumerate_basis(n):
            tv = gen.type_vector
            expected = tv.distinct_letters() <= 1 or (
                tv.n_i == 0 and tv.distinct_letters() <= 2
            )
            assert commuting_orbit(gen) == expected, gen.label


def test_all_three_letters_observed_noncommuting():
    # probe of the converse: every orbit with all three letters present
    # failed the pairwise check for n <= 5 (recorded, not assumed)
    for n in range(3, 6):
        for gen in enumerate_basis(n):
            if gen.type_vector.distinct_letters() == 3:
                assert not commuting_orbit(gen), gen.label


def test_dense_exponential_at_zero():
    assert np.abs(dense_exponential(_generator(1, 1, 0, 0), 0.0) - np.eye(4)).max() < 1e-14


def test_dense_exponential_involutory_formula():
    theta = 0.6
    u = dense_exponential(_generator(2, 0, 0, 0), theta)
    want = np.cos(theta / 2) * np.eye(4) - 1j * np.sin(theta / 2) * oracles.word_matrix("XX")
    assert np.abs(u - want).max() < 1e-12


def test_dense_exponential_vs_scaling_squaring():
    gen = _generator(1, 0, 1, 0)
    u = dense_exponential(gen, 1.3)
    want = oracles.expm_oracle(gen.matrix(), 1.3)
    assert np.abs(u - want).max() < 1e-11
    assert unitarity_defect(u) < 1e-12


def test_trotter_exact_for_commuting_orbit():
    gen = _generator(2, 0, 0, 1)
    assert commuting_orbit(gen)
    theta = 1.7
    c = synth_generator(gen, theta, SynthesisPlan("trotter", steps=3))
    assert np.abs(circuit_unitary(c) - dense_exponential(gen, theta)).max() < 1e-10


@pytest.mark.parametrize("counts", [(1, 1, 1, 0), (2, 1, 1, 0)])
def test_trotter_error_halves_when_steps_double(counts):
    gen = _generator(*counts)
    theta = 0.8
    exact = dense_exponential(gen, theta)
    errors = []
    for k in (1, 2, 4, 8, 16):
        u = circuit_unitary(synth_generator(gen, theta, SynthesisPlan("trotter", steps=k)))
        errors.append(np.abs(u - exact).max())
    for coarse, fine in zip(errors, errors[1:]):
        assert 1.5 <= coarse / fine <= 2.5


def test_trotter_swap_defect_shrinks_with_steps():
    # first-order steps are not exactly swap invariant; the defect decays ~1/k
    gen = _generator(1, 1, 1, 0)
    defects = []
    for k in (1, 2, 4, 8):
        u = circuit_unitary(synth_generator(gen, 0.8, SynthesisPlan("trotter", steps=k)))
        defects.append(swap_invariance_defect(u, 3))
    assert all(d1 > d2 for d1, d2 in zip(defects, defects[1:]))
    assert defects[0] > 1e-3


@pytest.mark.xfail(
    strict=True,
    reason="a first-order product step over a non-commuting orbit cannot be made "
    "exactly swap invariant by ordering (exhaustively checked over all 720 "
    "orderings of the three-letter orbit); the defect scales as theta^2/k",
)
def test_trotter_circuits_swap_invariant_at_tolerance():
    gen = _generator(1, 1, 1, 0)
    u = circuit_unitary(synth_generator(gen, 0.8, SynthesisPlan("trotter", steps=16)))
    assert swap_invariance_defect(u, 3) < 1e-10


def test_vertical_swap_equals_horizontal_exchange():
    # conjugating a two-string product by SWAP = exchanging the exponential order
    for word_a, i, j in (("XY", 1, 2), ("XYI", 2, 3), ("ZXI", 1, 3)):
        n = len(word_a)
        s_a = PauliString.from_letters(word_a)
        from pisu import conjugate_by_swap

        s_b = conjugate_by_swap(s_a, i, j)
        u_a = circuit_unitary(synth_string(s_a, 0.9))
        u_b = circuit_unitary(synth_string(s_b, 0.9, param_name="theta2"))
        sw = swap_matrix(i, j, n)
        assert np.abs(sw @ (u_b @ u_a) @ sw - (u_a @ u_b)).max() < 1e-12


def test_cnot_counts():
    assert cnot_count(synth_string(PauliString.from_letters("XX"), 0.1)) == 2
    assert cnot_count(Circuit(2)) == 0


def test_naive_cnot_budget():
    assert naive_cnot_budget(1) == 0
    assert naive_cnot_budget(4) == 288
    assert naive_cnot_budget(2) == 4


def test_json_roundtrip():
    gen = _generator(1, 0, 1, 0)
    c = synth_generator(gen, 0.3)
    back = circuit_from_json(circuit_to_json(c))
    assert back == c
    assert np.abs(circuit_unitary(back) - circuit_unitary(c)).max() == 0


def test_qasm_roundtrip_unitary():
    gen = _generator(1, 1, 0, 1)
    c = synth_generator(gen, 0.45)
    back = circuit_from_qasm(circuit_to_qasm(c))
    assert np.abs(circuit_unitary(back) - circuit_unitary(c)).max() < 1e-15


def test_qasm_export_requires_bound_params():
    c = Circuit(1, (Gate("RX", (1,), "loose"),))
    with pytest.raises(ValueError):
        circuit_to_qasm(c)


def test_qasm_parse_rejects_garbage():
    with pytest.raises(ValueError):
        circuit_from_qasm("OPENQASM 2.0;\nqreg q[1];\nfoo q[0];\n")
    with pytest.raises(ValueError):
        circuit_from_qasm("h q[0];\n")  # no qreg declared


def test_synthesis_plan_validation():
    with pytest.raises(ValueError):
        SynthesisPlan("magic")
    with pytest.raises(ValueError):
        SynthesisPlan("trotter", steps=0)
