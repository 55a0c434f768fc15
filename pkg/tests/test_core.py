"""Core simulation substrate: embedding, application, dagger, entangled state."""

import numpy as np
import pytest

from conftest import haar_unitary, pauli_kron, random_general_circuit, random_state
from qverify.core import (
    Circuit,
    Gate,
    GateKind,
    StateVector,
    UnitaryMatrix,
    apply_circuit,
    apply_gate,
    basis_state,
    circuit_unitary,
    custom_gate,
    dagger,
    embed_gate,
    gate,
    maximally_entangled_state,
    zero_state,
)
from qverify.errors import (
    CapExceeded,
    DimensionMismatch,
    DuplicateTarget,
    IndexOutOfRange,
    NonUnitaryCustomGate,
)

INV_SQRT2 = 1 / np.sqrt(2)


def embed_oracle(g: Gate, n: int) -> np.ndarray:
    """Independent basis-state-enumeration embedding of a gate."""
    k = g.n_targets
    m = g.unitary()
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        bits = [(i >> (n - 1 - q)) & 1 for q in range(n)]
        gate_in = 0
        for j, t in enumerate(g.targets):
            gate_in |= bits[t] << (k - 1 - j)
        for gate_out in range(2**k):
            new_bits = list(bits)
            for j, t in enumerate(g.targets):
                new_bits[t] = (gate_out >> (k - 1 - j)) & 1
            idx = 0
            for q in range(n):
                idx |= new_bits[q] << (n - 1 - q)
            out[idx, i] += m[gate_out, gate_in]
    return out


class TestCircuitUnitary:
    def test_empty_circuit_is_identity(self):
        u = circuit_unitary(Circuit(3, ()))
        assert np.array_equal(u.matrix, np.eye(8))

    def test_single_hadamard(self):
        u = circuit_unitary(Circuit(1, (gate("H", 0),)))
        expected = INV_SQRT2 * np.array([[1, 1], [1, -1]])
        assert np.allclose(u.matrix, expected, atol=1e-12)

    def test_bell_preparation_column(self):
        # Hand multiplication of the two 4x4 gate matrices against |00>.
        u = circuit_unitary(Circuit(2, (gate("H", 0), gate("CNOT", 0, 1))))
        bell = np.array([INV_SQRT2, 0, 0, INV_SQRT2], dtype=complex)
        assert np.allclose(u.matrix[:, 0], bell, atol=1e-12)

    def test_result_unitary_within_tolerance(self, rng):
        for _ in range(10):
            c = random_general_circuit(4, 25, rng, custom_prob=0.2)
            u = circuit_unitary(c).matrix
            assert np.max(np.abs(u.conj().T @ u - np.eye(16))) < 1e-9

    def test_cap_enforced(self):
        with pytest.raises(CapExceeded):
            circuit_unitary(Circuit(13, ()))
        # configurable
        with pytest.raises(CapExceeded):
            circuit_unitary(Circuit(5, ()), cap=4)


class TestEmbedGate:
    def test_x_on_second_qubit_is_i_kron_x(self):
        u = embed_gate(gate("X", 1), 2)
        assert np.array_equal(u.matrix, pauli_kron("IX"))

    def test_cnot_reversed_targets(self):
        # Control on qubit 1: swaps |01> and |11>, fixes |00> and |10>.
        u = embed_gate(gate("CNOT", 1, 0), 2).matrix
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 0] = expected[2, 2] = 1
        expected[3, 1] = expected[1, 3] = 1
        assert np.array_equal(u, expected)

    def test_custom_gate_non_contiguous_targets(self, rng):
        g = custom_gate(haar_unitary(4, rng), 2, 0)
        u = embed_gate(g, 3).matrix
        assert np.allclose(u, embed_oracle(g, 3), atol=1e-12)

    def test_permuted_targets_against_oracle(self, rng):
        for _ in range(10):
            n = 4
            k = int(rng.integers(1, 4))
            targets = tuple(int(t) for t in rng.choice(n, size=k, replace=False))
            g = custom_gate(haar_unitary(2**k, rng), *targets)
            assert np.allclose(embed_gate(g, n).matrix, embed_oracle(g, n), atol=1e-12)

    def test_errors(self):
        with pytest.raises(IndexOutOfRange):
            embed_gate(gate("X", 5), 2)
        with pytest.raises(DuplicateTarget):
            gate("CNOT", 1, 1)


class TestApplyCircuit:
    def test_identity_circuit(self, rng):
        s = StateVector(3, random_state(8, rng))
        out = apply_circuit(Circuit(3, ()), s)
        assert np.array_equal(out.amplitudes, s.amplitudes)

    def test_x_flips_most_significant_qubit(self):
        out = apply_circuit(Circuit(3, (gate("X", 0),)), zero_state(3))
        assert np.array_equal(out.amplitudes, basis_state(3, 0b100).amplitudes)

    def test_matches_full_matrix_product(self, rng):
        # Full-matrix oracle: gate-by-gate tensor application vs the
        # dense product of embedded unitaries.
        for _ in range(5):
            c = random_general_circuit(6, 20, rng, custom_prob=0.15)
            s = StateVector(6, random_state(64, rng))
            via_gates = apply_circuit(c, s).amplitudes
            via_matrix = circuit_unitary(c).matrix @ s.amplitudes
            assert np.max(np.abs(via_gates - via_matrix)) <= 1e-9

    def test_matches_full_matrix_product_all_widths(self, rng):
        # 100 random (circuit, state) pairs across n = 1..8
        for i in range(100):
            n = 1 + i % 8
            c = random_general_circuit(n, 12, rng, custom_prob=0.1)
            s = StateVector(n, random_state(2**n, rng))
            via_gates = apply_circuit(c, s).amplitudes
            via_matrix = circuit_unitary(c).matrix @ s.amplitudes
            assert np.max(np.abs(via_gates - via_matrix)) <= 1e-9

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            apply_circuit(Circuit(2, ()), zero_state(3))

    def test_apply_gate_matches_embedding(self, rng):
        s = StateVector(3, random_state(8, rng))
        g = gate("CNOT", 2, 0)
        assert np.allclose(
            apply_gate(g, s).amplitudes,
            embed_gate(g, 3).matrix @ s.amplitudes,
            atol=1e-12,
        )


class TestDagger:
    def test_hadamard_self_inverse(self):
        c = Circuit(1, (gate("H", 0),))
        assert dagger(c).gates == c.gates

    def test_s_becomes_sdg_and_cancels(self):
        c = Circuit(1, (gate("S", 0),))
        d = dagger(c)
        assert d.gates[0].kind is GateKind.SDG
        combined = circuit_unitary(Circuit(1, c.gates + d.gates)).matrix
        assert np.allclose(combined, np.eye(2), atol=1e-12)

    def test_reverses_and_inverts(self):
        c = Circuit(2, (gate("H", 0), gate("S", 0), gate("CNOT", 0, 1)))
        d = dagger(c)
        assert [g.kind for g in d.gates] == [GateKind.CNOT, GateKind.SDG, GateKind.H]
        product = circuit_unitary(Circuit(2, c.gates + d.gates)).matrix
        assert np.allclose(product, np.eye(4), atol=1e-9)

    def test_unitary_is_conjugate_transpose(self, rng):
        for _ in range(5):
            c = random_general_circuit(4, 15, rng, custom_prob=0.2)
            u = circuit_unitary(c).matrix
            ud = circuit_unitary(dagger(c)).matrix
            assert np.max(np.abs(ud - u.conj().T)) <= 1e-9

    def test_involution_up_to_renaming(self, rng):
        for _ in range(5):
            c = random_general_circuit(3, 12, rng, custom_prob=0.2)
            u = circuit_unitary(c).matrix
            udd = circuit_unitary(dagger(dagger(c))).matrix
            assert np.max(np.abs(udd - u)) <= 1e-9


class TestMaximallyEntangledState:
    def test_one_pair(self):
        s = maximally_entangled_state(1)
        assert np.allclose(s.amplitudes, [INV_SQRT2, 0, 0, INV_SQRT2], atol=1e-12)

    def test_two_pairs_support(self):
        s = maximally_entangled_state(2)
        expected = np.zeros(16, dtype=complex)
        expected[[0, 5, 10, 15]] = 0.5
        assert np.allclose(s.amplitudes, expected, atol=1e-12)

    def test_equals_h_cnot_preparation(self):
        n = 2
        prep = Circuit(
            2 * n,
            tuple(gate("H", j) for j in range(n))
            + tuple(gate("CNOT", j, n + j) for j in range(n)),
        )
        prepared = apply_circuit(prep, zero_state(2 * n))
        assert np.allclose(prepared.amplitudes, maximally_entangled_state(n).amplitudes, atol=1e-12)

    def test_reduced_state_maximally_mixed(self):
        s = maximally_entangled_state(2)
        for q in range(4):
            for letter in "XYZ":
                word = "".join(letter if j == q else "I" for j in range(4))
                expectation = np.vdot(s.amplitudes, pauli_kron(word) @ s.amplitudes)
                assert abs(expectation) < 1e-12

    def test_cap(self):
        with pytest.raises(CapExceeded):
            maximally_entangled_state(7)


class TestValidation:
    def test_non_unitary_custom_rejected(self):
        with pytest.raises(NonUnitaryCustomGate):
            custom_gate(np.array([[1, 0], [1, 1]], dtype=complex), 0)

    def test_custom_requires_matching_shape(self):
        with pytest.raises(NonUnitaryCustomGate):
            custom_gate(np.eye(4), 0)

    def test_named_gate_arity(self):
        with pytest.raises(IndexOutOfRange):
            gate("CNOT", 0)

    def test_circuit_target_bounds(self):
        with pytest.raises(IndexOutOfRange):
            Circuit(2, (gate("X", 2),))

    def test_state_norm_checked(self):
        with pytest.raises(ValueError):
            StateVector(1, np.array([1.0, 1.0]))

    def test_unitary_matrix_checked(self):
        with pytest.raises(NonUnitaryCustomGate):
            UnitaryMatrix(np.ones((2, 2)))
