"""Shared test helpers: independent dense oracles and random objects."""

from __future__ import annotations

import numpy as np
import pytest

from qverify.core import Circuit, Gate, GateKind

# Independent letter matrices for oracle checks (kron order: qubit 0
# is the most significant factor, matching the package convention).
PAULI_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_kron(letters: str, sign: int = 1) -> np.ndarray:
    m = np.array([[complex(sign)]])
    for ch in letters:
        m = np.kron(m, PAULI_1Q[ch])
    return m


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR with phase correction."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


GENERAL_GATE_KINDS = (
    GateKind.I,
    GateKind.X,
    GateKind.Y,
    GateKind.Z,
    GateKind.H,
    GateKind.S,
    GateKind.SDG,
    GateKind.T,
    GateKind.CNOT,
)


def random_general_circuit(
    n: int, length: int, rng: np.random.Generator, custom_prob: float = 0.0
) -> Circuit:
    """Random circuit over the full named gate set, optionally with
    Haar-random custom 2-qubit gates mixed in."""
    gates = []
    for _ in range(length):
        if n >= 2 and rng.random() < custom_prob:
            t = rng.choice(n, size=2, replace=False)
            gates.append(Gate(GateKind.CUSTOM, (int(t[0]), int(t[1])), haar_unitary(4, rng)))
            continue
        kind = GENERAL_GATE_KINDS[rng.integers(0, len(GENERAL_GATE_KINDS))]
        if kind is GateKind.CNOT:
            if n < 2:
                kind = GateKind.H
                gates.append(Gate(kind, (0,)))
                continue
            t = rng.choice(n, size=2, replace=False)
            gates.append(Gate(kind, (int(t[0]), int(t[1]))))
        else:
            gates.append(Gate(kind, (int(rng.integers(0, n)),)))
    return Circuit(n, tuple(gates))


def random_one_gate_pair(n, rng, k=None, non_contiguous=False):
    """(one_gate_pair result, (original, replacement), k) with Haar gates."""
    from qverify.metrics import one_gate_pair

    base = random_general_circuit(n, 12, rng)
    if k is None:
        k = int(rng.integers(1, 4))
    if non_contiguous and n >= 3 and k >= 2:
        targets = (0, n - 1, n // 2)[:k]
    else:
        targets = tuple(int(t) for t in rng.choice(n, size=k, replace=False))
    original = Gate(GateKind.CUSTOM, targets, haar_unitary(2**k, rng))
    replacement = Gate(GateKind.CUSTOM, targets, haar_unitary(2**k, rng))
    position = int(rng.integers(0, base.n_gates + 1))
    gates = base.gates[:position] + (original,) + base.gates[position:]
    return one_gate_pair(Circuit(n, gates), position, replacement), (original, replacement), k


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
