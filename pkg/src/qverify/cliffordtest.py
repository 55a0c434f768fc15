"""Randomized equality test between a known and a black-box Clifford.

One round: draw a uniformly random Pauli P, classically pull it back
to Q = U^dag P U, prepare a random product-state eigenstate of Q with
known eigenvalue, run the black box once on it and measure P.  Equal
circuits reproduce the eigenvalue with probability 1; distinct
Cliffords flip it with constant probability, either because their
symplectic maps differ on at least half of all Paulis or because they
differ by a nonidentity Pauli factor (which anticommutes with half of
all P).

The black box measures through the tableau of its inverse circuit, so
a round costs O(n + gates) classical work and runs at hundreds of
qubits; a dense statevector mode exists for small-n cross-checks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .clifford import (
    CliffordTableau,
    PauliString,
    conjugate_pauli,
    conjugate_pauli_inverse,
    random_pauli,
    tableau_dagger,
    tableau_from_circuit,
)
from .core import Circuit, Gate, GateKind, StateVector, apply_circuit
from .errors import CandidateNotFound, CapExceeded, DimensionMismatch
from .seeding import rng_from_seed

TPLUS = "T+"

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

_SINGLE_QUBIT_STATES = {
    ("X", 1): np.array([1, 1], dtype=complex) * _INV_SQRT2,
    ("X", -1): np.array([1, -1], dtype=complex) * _INV_SQRT2,
    ("Y", 1): np.array([1, 1j], dtype=complex) * _INV_SQRT2,
    ("Y", -1): np.array([1, -1j], dtype=complex) * _INV_SQRT2,
    ("Z", 1): np.array([1, 0], dtype=complex),
    ("Z", -1): np.array([0, 1], dtype=complex),
    (TPLUS, 1): np.array([1, np.exp(1j * np.pi / 4)], dtype=complex) * _INV_SQRT2,
}


@dataclass(frozen=True)
class EigenstatePrep:
    """Per-qubit product-state recipe plus the known eigenvalue.

    Each entry is (basis, sign): an eigenstate of the X/Y/Z basis
    Pauli, or (TPLUS, 1) - the state (|0> + e^(i pi/4)|1>)/sqrt(2) -
    wherever the target Pauli has an identity letter.
    """

    entries: tuple[tuple[str, int], ...]
    eigenvalue: int


def single_qubit_expectation(entry: tuple[str, int], letter: str) -> float:
    """<psi|A|psi> for one prepared qubit and one Pauli letter A."""
    if letter == "I":
        return 1.0
    basis, sign = entry
    if basis == TPLUS:
        return {"X": _INV_SQRT2, "Y": _INV_SQRT2, "Z": 0.0}[letter]
    return float(sign) if letter == basis else 0.0


def prepare_input(
    q: PauliString, rng: np.random.Generator, identity_mode: str = "tplus"
) -> EigenstatePrep:
    """Random product-state eigenstate of the Hermitian Pauli q.

    Non-identity positions get a +1 or -1 eigenstate of their letter
    (fair coin each); identity positions get the TPLUS state, or with
    identity_mode='mixed' a uniformly random one of the six X/Y/Z
    eigenstates (the more symmetric alternative; not used by the
    acceptance runs).  The recorded eigenvalue is sign(q) times the
    product of the drawn non-identity signs.
    """
    if identity_mode not in ("tplus", "mixed"):
        raise ValueError(f"unknown identity_mode {identity_mode!r}")
    entries = []
    eigenvalue = q.sign()
    coins = rng.integers(0, 2, size=q.n)
    for j in range(q.n):
        letter = q.letter(j)
        if letter == "I":
            if identity_mode == "tplus":
                entries.append((TPLUS, 1))
            else:
                basis = "XYZ"[rng.integers(0, 3)]
                entries.append((basis, 1 if rng.integers(0, 2) == 0 else -1))
        else:
            sign = 1 if coins[j] == 0 else -1
            entries.append((letter, sign))
            eigenvalue *= sign
    return EigenstatePrep(tuple(entries), eigenvalue)


def prep_statevector(prep: EigenstatePrep) -> StateVector:
    """Dense form of the prepared product state (small n only)."""
    amps = np.array([1.0], dtype=complex)
    for entry in prep.entries:
        amps = np.kron(amps, _SINGLE_QUBIT_STATES[entry])
    return StateVector(len(prep.entries), amps)


def expectation_on_prep(prep: EigenstatePrep, p: PauliString) -> float:
    """<psi_in| p |psi_in> as a product of single-qubit expectations."""
    value = float(p.sign())
    for j in range(p.n):
        value *= single_qubit_expectation(prep.entries[j], p.letter(j))
        if value == 0.0:
            return 0.0
    return value


class CliffordBlackBox:
    """Runnable-but-opaque Clifford circuit.

    run_and_measure prepares the given product state, runs the hidden
    circuit once and measures the given Pauli observable, returning a
    single +-1 sample.  mode='analytic' (default) samples from the
    exact expectation computed through the hidden inverse tableau;
    mode='dense' simulates the statevector.  Both distributions are
    identical; dense exists as a small-n cross-check.
    """

    def __init__(self, circuit: Circuit, mode: str = "analytic"):
        if mode not in ("analytic", "dense"):
            raise ValueError(f"unknown mode {mode!r}")
        self.__circuit = circuit
        self._mode = mode
        self._dagger_tableau: CliffordTableau | None = None
        if mode == "analytic":
            self._dagger_tableau = tableau_dagger(circuit)

    @property
    def n_qubits(self) -> int:
        return self.__circuit.n_qubits

    def measurement_expectation(self, prep: EigenstatePrep, observable: PauliString) -> float:
        """E[sample] = <psi_in| U^dag P U |psi_in> for the hidden U."""
        if observable.n != self.n_qubits:
            raise DimensionMismatch(f"{observable.n} vs {self.n_qubits} qubits")
        if self._mode == "analytic":
            q_tilde = conjugate_pauli(self._dagger_tableau, observable)
            return expectation_on_prep(prep, q_tilde)
        psi = apply_circuit(self.__circuit, prep_statevector(prep))
        val = np.vdot(psi.amplitudes, observable.to_matrix() @ psi.amplitudes)
        return float(val.real)

    def run_and_measure(
        self, prep: EigenstatePrep, observable: PauliString, rng: np.random.Generator
    ) -> int:
        e = min(1.0, max(-1.0, self.measurement_expectation(prep, observable)))
        return 1 if rng.random() < (1.0 + e) / 2.0 else -1


def _hidden_circuit(box: CliffordBlackBox) -> Circuit:
    # Module-internal: tests and the error finder's harness may compare
    # against the hidden truth; the test procedures themselves may not.
    return box._CliffordBlackBox__circuit


def acceptance_probability(
    u: CliffordTableau, ut: CliffordTableau, q: PauliString, prep: EigenstatePrep
) -> float:
    """P(outcome = prep.eigenvalue) for one round with pulled-back Pauli q.

    q must be U^dag P U for the measured observable P, and prep must
    have been drawn for q.  The probability is
    (1 + lambda * <psi_in| Ut^dag P Ut |psi_in>) / 2, evaluated through
    the tableaux without any 2^n object.
    """
    if u.n != ut.n or u.n != q.n:
        raise DimensionMismatch("tableaux and Pauli must share the qubit count")
    eigenvalue = q.sign()
    for j in range(q.n):
        basis, sign = prep.entries[j]
        letter = q.letter(j)
        if letter == "I":
            continue  # TPLUS or (mixed mode) any eigenstate is fine here
        if basis != letter:
            raise ValueError(f"prep entry {basis!r} at qubit {j} is no eigenstate of {letter}")
        eigenvalue *= sign
    if eigenvalue != prep.eigenvalue:
        raise ValueError("prep eigenvalue is inconsistent with q and the drawn signs")
    p_observable = conjugate_pauli(u, q)
    q_tilde = conjugate_pauli_inverse(ut, p_observable)
    e = expectation_on_prep(prep, q_tilde)
    return (1.0 + prep.eigenvalue * e) / 2.0


@dataclass(frozen=True)
class TestRun:
    """One round: observable, its pullback, known eigenvalue, sample."""

    pauli: PauliString
    conjugated: PauliString
    eigenvalue: int
    outcome: int

    @property
    def rejected(self) -> bool:
        return self.outcome != self.eigenvalue


@dataclass(frozen=True)
class CliffordTestReport:
    runs: tuple[TestRun, ...]
    verdict: str
    per_run_detection_estimate: float
    seed: int


def run_test_once(
    u: Circuit,
    ut: CliffordBlackBox,
    rng: np.random.Generator,
    u_dagger_tableau: CliffordTableau | None = None,
) -> TestRun:
    """One randomized round; classical cost linear in the size of u."""
    td = u_dagger_tableau if u_dagger_tableau is not None else tableau_dagger(u)
    p = random_pauli(u.n_qubits, rng)
    q = conjugate_pauli(td, p)
    prep = prepare_input(q, rng)
    outcome = ut.run_and_measure(prep, p, rng)
    return TestRun(pauli=p, conjugated=q, eigenvalue=prep.eigenvalue, outcome=outcome)


def repetitions_for_confidence(delta: float, detection_floor: float = 0.25) -> int:
    """Rounds needed to miss with probability <= delta at the given floor.

    The floor is a configuration default (measured, not proven): use
    detection_probability_exact to audit it for specific pairs.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    return math.ceil(math.log(1.0 / delta) / -math.log1p(-detection_floor))


def equivalence_verdict(
    u: Circuit, ut: CliffordBlackBox, repetitions: int, seed: int
) -> CliffordTestReport:
    """Run the test `repetitions` times with fresh Paulis; one-sided.

    Equal circuits are never rejected; a single eigenvalue mismatch
    proves the circuits differ.
    """
    if repetitions < 1:
        raise ValueError(f"repetitions must be >= 1, got {repetitions}")
    if u.n_qubits != ut.n_qubits:
        raise DimensionMismatch(f"{u.n_qubits} vs {ut.n_qubits} qubits")
    td = tableau_dagger(u)
    runs = tuple(
        run_test_once(u, ut, rng_from_seed(seed, i), td) for i in range(repetitions)
    )
    rejections = sum(r.rejected for r in runs)
    return CliffordTestReport(
        runs=runs,
        verdict="different" if rejections else "equal",
        per_run_detection_estimate=rejections / repetitions,
        seed=seed,
    )


def detection_probability_exact(u: Circuit, ut: Circuit, max_qubits: int = 7) -> float:
    """Exact per-round rejection probability, averaged over all 4^n
    Paulis and all eigenstate sign draws.

    The sign draws average out analytically: per qubit the draw
    contributes factor 1 when both pullbacks share a non-identity
    letter, 1/sqrt(2) when the known pullback has I and the hidden one
    has X or Y, and 0 otherwise (forcing a fair coin for that Pauli).
    """
    n = u.n_qubits
    if n > max_qubits:
        raise CapExceeded(f"exact enumeration capped at {max_qubits} qubits")
    if ut.n_qubits != n:
        raise DimensionMismatch(f"{n} vs {ut.n_qubits} qubits")
    td_u = tableau_dagger(u)
    td_ut = tableau_dagger(ut)
    total = 0.0
    for bits in range(4**n):
        p = _pauli_from_index(n, bits)
        q = conjugate_pauli(td_u, p)
        qt = conjugate_pauli(td_ut, p)
        factor = 1.0
        for j in range(n):
            ql, qtl = q.letter(j), qt.letter(j)
            if ql == "I":
                factor *= {"I": 1.0, "X": _INV_SQRT2, "Y": _INV_SQRT2, "Z": 0.0}[qtl]
            elif qtl != ql:
                factor = 0.0
            if factor == 0.0:
                break
        total += (1.0 - q.sign() * qt.sign() * factor) / 2.0
    return total / 4**n


def _pauli_from_index(n: int, bits: int) -> PauliString:
    """Enumerate P^n: two bits per qubit, (x, z) interleaved."""
    x = z = 0
    for j in range(n):
        x |= ((bits >> (2 * j)) & 1) << j
        z |= ((bits >> (2 * j + 1)) & 1) << j
    return PauliString.from_bits(n, x, z, 1)


# ---------------------------------------------------------------------------
# Error finding

_ONE_QUBIT_ALPHABET = (
    GateKind.X,
    GateKind.Y,
    GateKind.Z,
    GateKind.H,
    GateKind.S,
    GateKind.SDG,
    GateKind.I,
)


def _position_alternatives(g: Gate) -> list[tuple[Gate, ...]]:
    """Replacement sequences for one position (the original excluded).

    Single-qubit positions draw from {X, Y, Z, H, S, SDG, I}; a CNOT
    position may flip orientation or become any ordered pair of
    single-qubit gates on its two qubits (I, I = dropped gate).
    """
    if g.kind is GateKind.CNOT:
        c, t = g.targets
        alts: list[tuple[Gate, ...]] = [(Gate(GateKind.CNOT, (t, c)),)]
        for k1, k2 in itertools.product(_ONE_QUBIT_ALPHABET, repeat=2):
            alts.append((Gate(k1, (c,)), Gate(k2, (t,))))
        return alts
    (q,) = g.targets
    return [(Gate(k, (q,)),) for k in _ONE_QUBIT_ALPHABET if k is not g.kind]


def _candidates(u: Circuit, depth: int):
    """Circuits within `depth` gate replacements of u, nearest first."""
    yield u
    gates = u.gates
    positions = range(len(gates))
    alternatives = [_position_alternatives(g) for g in gates]
    for i in positions:
        for alt in alternatives[i]:
            yield Circuit(u.n_qubits, gates[:i] + alt + gates[i + 1 :])
    if depth >= 2:
        for i, j in itertools.combinations(positions, 2):
            for alt_i in alternatives[i]:
                for alt_j in alternatives[j]:
                    yield Circuit(
                        u.n_qubits,
                        gates[:i] + alt_i + gates[i + 1 : j] + alt_j + gates[j + 1 :],
                    )


def find_error(
    u: Circuit,
    ut: CliffordBlackBox,
    depth: int,
    repetitions: int,
    seed: int,
) -> Circuit:
    """Search circuits near u for one that tests equal to the black box.

    Candidates differ from u in at most `depth` gate replacements drawn
    from the documented alphabet; each is tested with up to
    `repetitions` rounds (stopping at the first rejection).  Returns
    the first candidate that survives all rounds - a circuit whose
    tableau matches the hidden one with overwhelming probability.
    Raises CandidateNotFound when the error lies outside the model.
    """
    if depth not in (1, 2):
        raise ValueError(f"depth must be 1 or 2, got {depth}")
    if repetitions < 1:
        raise ValueError(f"repetitions must be >= 1, got {repetitions}")
    for index, candidate in enumerate(_candidates(u, depth)):
        td = tableau_dagger(candidate)
        rng = rng_from_seed(seed, index)
        for _ in range(repetitions):
            if run_test_once(candidate, ut, rng, td).rejected:
                break
        else:
            return candidate
    raise CandidateNotFound(
        f"no circuit within {depth} replacement(s) of u matches the black box"
    )


# ---------------------------------------------------------------------------
# Entanglement fidelity bound for Cliffords

def entanglement_fidelity_clifford(
    u: CliffordTableau, ut: CliffordTableau, max_qubits: int = 7
) -> float:
    """|Tr(U^dag Ut) / 2^n|^2 via Pauli counting, no dense matrices.

    W = U^dag Ut fixes P (up to sign s_P) exactly when both tableaux
    send P to the same letter string, and then s_P is the product of
    the two image signs; the fidelity is sum(s_P over fixed P) / 4^n.
    Distinct tableaux leave at most half the Paulis fixed, capping the
    value at 1/2.
    """
    if u.n != ut.n:
        raise DimensionMismatch(f"{u.n} vs {ut.n} qubits")
    n = u.n
    if n > max_qubits:
        raise CapExceeded(f"Pauli enumeration capped at {max_qubits} qubits")
    total = 0
    for bits in range(4**n):
        p = _pauli_from_index(n, bits)
        a = conjugate_pauli(u, p)
        b = conjugate_pauli(ut, p)
        if a.x == b.x and a.z == b.z:
            total += a.sign() * b.sign()
    return total / 4**n


@lru_cache(maxsize=1)
def one_qubit_clifford_circuits() -> tuple[Circuit, ...]:
    """The 24 single-qubit Cliffords (mod phase) as {H, S} circuits.

    Breadth-first closure starting from the empty circuit; circuits
    are deduplicated by tableau, so each group element appears once.
    """
    seen: dict[tuple, Circuit] = {}
    queue = [Circuit(1, ())]
    while queue:
        c = queue.pop(0)
        key = tableau_from_circuit(c).images
        if key in seen:
            continue
        seen[key] = c
        for kind in (GateKind.H, GateKind.S):
            queue.append(Circuit(1, c.gates + (Gate(kind, (0,)),)))
    return tuple(seen.values())
