"""Dense statevector/unitary simulation of quantum circuits.

Conventions used throughout the package:

* Qubit 0 is the MOST significant bit of a basis-state index, so for
  ``n = 2`` the order is ``|q0 q1>`` and index 2 means ``|10>``.  With
  numpy this makes axis ``j`` of ``amplitudes.reshape([2] * n)`` the
  axis of qubit ``j``.
* Circuits are ordered gate lists; ``gates[0]`` acts first, so the
  circuit unitary is ``G_s @ ... @ G_1``.
* All dense arithmetic is complex128.  Construction-time unitarity and
  normalisation are checked to 1e-10; products of validated inputs are
  allowed a decade of accumulation slack (1e-9).

Dense objects are capped at ``DEFAULT_QUBIT_CAP`` qubits (configurable
per call) to bound memory.  Everything here is immutable after
construction and safe to use from concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    CapExceeded,
    DimensionMismatch,
    DuplicateTarget,
    IndexOutOfRange,
    NonUnitaryCustomGate,
)

DEFAULT_QUBIT_CAP = 12

INPUT_TOL = 1e-10
DERIVED_TOL = 1e-9

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


class GateKind(str, Enum):
    I = "I"
    X = "X"
    Y = "Y"
    Z = "Z"
    H = "H"
    S = "S"
    SDG = "SDG"
    T = "T"
    CNOT = "CNOT"
    CUSTOM = "CUSTOM"


FIXED_GATE_MATRICES: dict[GateKind, np.ndarray] = {
    GateKind.I: np.eye(2, dtype=complex),
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) * _INV_SQRT2,
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex),
    # CNOT: first listed target is the control (most significant of the pair).
    GateKind.CNOT: np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
}
for _m in FIXED_GATE_MATRICES.values():
    _m.setflags(write=False)

_GATE_ARITY = {k: 1 for k in GateKind}
_GATE_ARITY[GateKind.CNOT] = 2


def _check_unitary(m: np.ndarray, tol: float) -> None:
    d = m.shape[0]
    if m.shape != (d, d):
        raise NonUnitaryCustomGate(f"matrix is not square: shape {m.shape}")
    defect = np.max(np.abs(m.conj().T @ m - np.eye(d)))
    if defect > tol:
        raise NonUnitaryCustomGate(f"unitarity defect {defect:.3e} exceeds {tol:.0e}")


@dataclass(frozen=True, eq=False)
class Gate:
    """One gate: a named kind or a custom 2^k x 2^k unitary on `targets`.

    Targets are an ordered tuple of distinct qubit indices; for CUSTOM
    gates the first target corresponds to the most significant bit of
    the supplied matrix.
    """

    kind: GateKind
    targets: tuple[int, ...]
    matrix: np.ndarray | None = None

    def __eq__(self, other):
        if not isinstance(other, Gate):
            return NotImplemented
        if self.kind is not other.kind or self.targets != other.targets:
            return False
        if self.kind is GateKind.CUSTOM:
            return np.array_equal(self.matrix, other.matrix)
        return True

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if len(set(self.targets)) != len(self.targets):
            raise DuplicateTarget(f"repeated target in {self.targets}")
        if any(t < 0 for t in self.targets):
            raise IndexOutOfRange(f"negative target in {self.targets}")
        if self.kind is GateKind.CUSTOM:
            if self.matrix is None:
                raise NonUnitaryCustomGate("CUSTOM gate requires a matrix")
            m = np.array(self.matrix, dtype=complex)
            if m.shape != (2 ** len(self.targets),) * 2:
                raise NonUnitaryCustomGate(
                    f"matrix shape {m.shape} does not match {len(self.targets)} targets"
                )
            _check_unitary(m, INPUT_TOL)
            m.setflags(write=False)
            object.__setattr__(self, "matrix", m)
        else:
            if self.matrix is not None:
                raise NonUnitaryCustomGate("only CUSTOM gates carry a matrix")
            if len(self.targets) != _GATE_ARITY[self.kind]:
                raise IndexOutOfRange(
                    f"{self.kind.value} takes {_GATE_ARITY[self.kind]} target(s), "
                    f"got {self.targets}"
                )

    @property
    def n_targets(self) -> int:
        return len(self.targets)

    def unitary(self) -> np.ndarray:
        """The gate's own 2^k x 2^k matrix (not embedded)."""
        if self.kind is GateKind.CUSTOM:
            return self.matrix
        return FIXED_GATE_MATRICES[self.kind]


def gate(kind: str | GateKind, *targets: int) -> Gate:
    """Shorthand constructor for named gates: ``gate("H", 0)``."""
    return Gate(GateKind(kind), tuple(targets))


def custom_gate(matrix: np.ndarray, *targets: int) -> Gate:
    """Shorthand constructor for a custom unitary on the given targets."""
    return Gate(GateKind.CUSTOM, tuple(targets), np.asarray(matrix, dtype=complex))


@dataclass(frozen=True)
class Circuit:
    """An ordered gate sequence on `n_qubits` qubits."""

    n_qubits: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_qubits < 1:
            raise IndexOutOfRange(f"n_qubits must be >= 1, got {self.n_qubits}")
        for g in self.gates:
            for t in g.targets:
                if t >= self.n_qubits:
                    raise IndexOutOfRange(
                        f"target {t} outside circuit of {self.n_qubits} qubits"
                    )

    @property
    def n_gates(self) -> int:
        return len(self.gates)


@dataclass(frozen=True, eq=False)
class StateVector:
    """A normalised 2^n-dimensional complex state."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex)
        if a.shape != (2**self.n_qubits,):
            raise DimensionMismatch(
                f"expected {2 ** self.n_qubits} amplitudes, got shape {a.shape}"
            )
        norm = np.linalg.norm(a)
        if abs(norm - 1.0) > INPUT_TOL:
            raise ValueError(f"state norm {norm} deviates from 1 beyond {INPUT_TOL}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)


@dataclass(frozen=True, eq=False)
class UnitaryMatrix:
    """A dense 2^n x 2^n unitary, checked at construction."""

    matrix: np.ndarray
    tol: float = INPUT_TOL

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        n = int(round(np.log2(m.shape[0])))
        if m.shape != (2**n, 2**n):
            raise DimensionMismatch(f"dimension {m.shape} is not a square power of 2")
        _check_unitary(m, self.tol)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1


def zero_state(n_qubits: int) -> StateVector:
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def basis_state(n_qubits: int, index: int) -> StateVector:
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[index] = 1.0
    return StateVector(n_qubits, amps)


def _apply_gate_tensor(arr: np.ndarray, g: Gate, n_qubits: int) -> np.ndarray:
    """Contract gate `g` into the first `n_qubits` axes of tensor `arr`.

    `arr` must have shape [2]*n_qubits + extra trailing axes; trailing
    axes are carried along untouched (used to batch matrix columns).
    """
    k = g.n_targets
    gt = g.unitary().reshape([2] * (2 * k))
    out = np.tensordot(gt, arr, axes=(list(range(k, 2 * k)), list(g.targets)))
    return np.moveaxis(out, list(range(k)), list(g.targets))


def apply_gate(g: Gate, state: StateVector) -> StateVector:
    """Apply a single gate to a state without building the full matrix."""
    n = state.n_qubits
    for t in g.targets:
        if t >= n:
            raise IndexOutOfRange(f"target {t} outside state of {n} qubits")
    arr = _apply_gate_tensor(state.amplitudes.reshape([2] * n), g, n)
    return StateVector(n, arr.reshape(-1))


def apply_circuit(c: Circuit, state: StateVector) -> StateVector:
    """Apply `c` gate by gate; equals circuit_unitary(c) @ amplitudes."""
    if c.n_qubits != state.n_qubits:
        raise DimensionMismatch(
            f"circuit has {c.n_qubits} qubits, state has {state.n_qubits}"
        )
    n = c.n_qubits
    arr = state.amplitudes.reshape([2] * n)
    for g in c.gates:
        arr = _apply_gate_tensor(arr, g, n)
    return StateVector(n, np.ascontiguousarray(arr).reshape(-1))


def embed_gate(g: Gate, n_qubits: int, cap: int = DEFAULT_QUBIT_CAP) -> UnitaryMatrix:
    """The 2^n x 2^n unitary acting as `g` on its targets, identity elsewhere.

    Supports non-contiguous and permuted target lists: the first listed
    target binds to the most significant bit of the gate's own matrix.
    """
    if n_qubits > cap:
        raise CapExceeded(f"{n_qubits} qubits exceeds dense cap {cap}")
    for t in g.targets:
        if t >= n_qubits:
            raise IndexOutOfRange(f"target {t} outside register of {n_qubits} qubits")
    dim = 2**n_qubits
    eye = np.eye(dim, dtype=complex).reshape([2] * n_qubits + [dim])
    out = _apply_gate_tensor(eye, g, n_qubits)
    return UnitaryMatrix(out.reshape(dim, dim), tol=DERIVED_TOL)


def circuit_unitary(c: Circuit, cap: int = DEFAULT_QUBIT_CAP) -> UnitaryMatrix:
    """Product of the embedded gate unitaries in application order."""
    if c.n_qubits > cap:
        raise CapExceeded(f"{c.n_qubits} qubits exceeds dense cap {cap}")
    u = np.eye(2**c.n_qubits, dtype=complex)
    for g in c.gates:
        u = embed_gate(g, c.n_qubits, cap=cap).matrix @ u
    return UnitaryMatrix(u, tol=DERIVED_TOL)


def dagger(c: Circuit) -> Circuit:
    """The inverse circuit: gates reversed and individually inverted.

    Self-inverse kinds pass through, S and SDG swap, T becomes a CUSTOM
    gate holding its conjugate transpose (there is no named Tdg kind),
    and CUSTOM matrices are conjugate-transposed.
    """
    inv = []
    for g in reversed(c.gates):
        if g.kind is GateKind.S:
            inv.append(Gate(GateKind.SDG, g.targets))
        elif g.kind is GateKind.SDG:
            inv.append(Gate(GateKind.S, g.targets))
        elif g.kind is GateKind.T:
            inv.append(Gate(GateKind.CUSTOM, g.targets, g.unitary().conj().T))
        elif g.kind is GateKind.CUSTOM:
            inv.append(Gate(GateKind.CUSTOM, g.targets, g.matrix.conj().T))
        else:
            inv.append(g)
    return Circuit(c.n_qubits, tuple(inv))


def maximally_entangled_state(n_qubits: int, cap: int = DEFAULT_QUBIT_CAP) -> StateVector:
    """(1/sqrt(2^n)) sum_i |i>|i> on 2n qubits; qubit j pairs with qubit n+j.

    Equals the state prepared by H on qubits 0..n-1 followed by
    CNOT(j, n+j) for each j.
    """
    if 2 * n_qubits > cap:
        raise CapExceeded(f"{2 * n_qubits} qubits exceeds dense cap {cap}")
    d = 2**n_qubits
    amps = np.zeros(d * d, dtype=complex)
    amps[np.arange(d) * d + np.arange(d)] = 1.0 / np.sqrt(d)
    return StateVector(2 * n_qubits, amps)
