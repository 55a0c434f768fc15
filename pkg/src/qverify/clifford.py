"""Signed Pauli strings and Clifford tableaux over F2.

A Pauli string is stored as two n-bit integers (x, z) plus a phase
exponent t mod 4, meaning the operator

    i^t * prod_j X^x_j Z^z_j         (per qubit j)

The (x_j, z_j) pair encodes the letter: 00=I, 10=X, 01=Z, 11=Y.  Since
XZ = -iY, the coefficient in front of the letter form is
i^(t - #Y) and the string is Hermitian exactly when t and #Y have the
same parity.  Tracking t mod 4 (rather than just a sign) makes Pauli
multiplication exact.

A Clifford tableau stores the conjugated images U X_j U^dag and
U Z_j U^dag for j = 0..n-1 as signed Pauli strings.  Construction
walks the circuit gate by gate on a column-major bit representation
(a gate touches only its target columns), then transposes into
bit-packed rows, which are what conjugation consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2
from .core import Circuit, Gate, GateKind, dagger as circuit_dagger
from .errors import DimensionMismatch, NonCliffordGate

_LETTERS = ("I", "X", "Z", "Y")  # indexed by x + 2*z

_LETTER_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

CLIFFORD_GATE_KINDS = frozenset(
    {GateKind.I, GateKind.X, GateKind.Y, GateKind.Z, GateKind.H, GateKind.S, GateKind.SDG, GateKind.CNOT}
)


@dataclass(frozen=True)
class PauliString:
    """Signed n-qubit Pauli in (x bits, z bits, phase exponent) form."""

    n: int
    x: int
    z: int
    phase_t: int = 0

    def __post_init__(self):
        mask = (1 << self.n) - 1
        object.__setattr__(self, "x", self.x & mask)
        object.__setattr__(self, "z", self.z & mask)
        object.__setattr__(self, "phase_t", self.phase_t % 4)

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n, 0, 0, 0)

    @classmethod
    def from_bits(cls, n: int, x: int, z: int, sign: int = 1) -> PauliString:
        """Hermitian string with the given letter bits and sign (+1/-1)."""
        mask = (1 << n) - 1
        x &= mask
        z &= mask
        y = (x & z).bit_count()
        t = (y + (0 if sign > 0 else 2)) % 4
        return cls(n, x, z, t)

    @classmethod
    def from_label(cls, label: str) -> PauliString:
        """Parse '+XIZY' / '-IYZI' (optional +, -, +i, -i prefix)."""
        s = label.strip()
        t_extra = 0
        for prefix, t in (("+i", 1), ("-i", 3), ("+", 0), ("-", 2)):
            if s.startswith(prefix):
                t_extra = t
                s = s[len(prefix) :]
                break
        x = z = 0
        for j, ch in enumerate(s):
            if ch not in "IXYZ":
                raise ValueError(f"bad Pauli letter {ch!r} in {label!r}")
            if ch in "XY":
                x |= 1 << j
            if ch in "ZY":
                z |= 1 << j
        y = (x & z).bit_count()
        return cls(len(s), x, z, (y + t_extra) % 4)

    def letter(self, j: int) -> str:
        return _LETTERS[((self.x >> j) & 1) + 2 * ((self.z >> j) & 1)]

    def letters(self) -> str:
        return "".join(self.letter(j) for j in range(self.n))

    @property
    def y_count(self) -> int:
        return (self.x & self.z).bit_count()

    def coefficient(self) -> complex:
        """Scalar in front of the plain letter tensor: one of 1, i, -1, -i."""
        return 1j ** ((self.phase_t - self.y_count) % 4)

    def is_hermitian(self) -> bool:
        return (self.phase_t - self.y_count) % 2 == 0

    def sign(self) -> int:
        """+1 or -1; only defined on Hermitian strings."""
        r = (self.phase_t - self.y_count) % 4
        if r == 0:
            return 1
        if r == 2:
            return -1
        raise ValueError(f"{self} is not Hermitian")

    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def commutes_with(self, other: PauliString) -> bool:
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n} vs {other.n} qubits")
        parity = ((self.x & other.z).bit_count() + (self.z & other.x).bit_count()) % 2
        return parity == 0

    def to_matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix; intended for small n."""
        m = np.array([[self.coefficient()]], dtype=complex)
        for j in range(self.n):
            m = np.kron(m, _LETTER_MATRICES[self.letter(j)])
        return m

    def __mul__(self, other: PauliString) -> PauliString:
        return pauli_multiply(self, other)

    def __neg__(self) -> PauliString:
        return PauliString(self.n, self.x, self.z, (self.phase_t + 2) % 4)

    def __str__(self) -> str:
        prefix = {0: "+", 1: "+i", 2: "-", 3: "-i"}[(self.phase_t - self.y_count) % 4]
        return prefix + self.letters()


def pauli_multiply(a: PauliString, b: PauliString) -> PauliString:
    """Exact product: bits XOR, phase picks up i^2 per Z-over-X swap."""
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n} vs {b.n} qubits")
    t = (a.phase_t + b.phase_t + 2 * (a.z & b.x).bit_count()) % 4
    return PauliString(a.n, a.x ^ b.x, a.z ^ b.z, t)


def random_pauli(n: int, rng: np.random.Generator) -> PauliString:
    """Uniform over all 4^n strings (identity included), sign +1."""
    nbytes = (n + 7) // 8
    raw = rng.bytes(2 * nbytes)
    x = int.from_bytes(raw[:nbytes], "little")
    z = int.from_bytes(raw[nbytes:], "little")
    return PauliString.from_bits(n, x, z, 1)


@dataclass(frozen=True)
class CliffordTableau:
    """Images of the 2n Pauli generators under conjugation.

    images[j] = U X_j U^dag for j < n, images[n + j] = U Z_j U^dag.
    All images are Hermitian signed Pauli strings.
    """

    n: int
    images: tuple[PauliString, ...]

    def x_image(self, j: int) -> PauliString:
        return self.images[j]

    def z_image(self, j: int) -> PauliString:
        return self.images[self.n + j]


def identity_tableau(n: int) -> CliffordTableau:
    images = [PauliString.from_bits(n, 1 << j, 0) for j in range(n)]
    images += [PauliString.from_bits(n, 0, 1 << j) for j in range(n)]
    return CliffordTableau(n, tuple(images))


class _ColumnTableau:
    """Mutable column-major tableau used only during circuit walks.

    Bit g of colx[q] / colz[q] is the x/z component at qubit q of the
    image of generator g (g < n: X_g, else Z_{g-n}).  Bit g of signs
    is 1 when that image carries a minus sign.  A gate touches only
    its target columns, so a walk is O(gates) big-int operations.
    """

    def __init__(self, n: int):
        self.n = n
        self.colx = [1 << q for q in range(n)]
        self.colz = [1 << (n + q) for q in range(n)]
        self.signs = 0

    def apply(self, g: Gate) -> None:
        kind = g.kind
        if kind is GateKind.I:
            return
        if kind is GateKind.CNOT:
            c, t = g.targets
            self.signs ^= self.colx[c] & self.colz[t] & ~(self.colx[t] ^ self.colz[c])
            self.colx[t] ^= self.colx[c]
            self.colz[c] ^= self.colz[t]
            return
        (q,) = g.targets
        if kind is GateKind.H:
            self.signs ^= self.colx[q] & self.colz[q]
            self.colx[q], self.colz[q] = self.colz[q], self.colx[q]
        elif kind is GateKind.S:
            self.signs ^= self.colx[q] & self.colz[q]
            self.colz[q] ^= self.colx[q]
        elif kind is GateKind.SDG:
            self.colz[q] ^= self.colx[q]
            self.signs ^= self.colx[q] & self.colz[q]
        elif kind is GateKind.X:
            self.signs ^= self.colz[q]
        elif kind is GateKind.Z:
            self.signs ^= self.colx[q]
        elif kind is GateKind.Y:
            self.signs ^= self.colx[q] ^ self.colz[q]
        else:
            raise NonCliffordGate(f"{kind.value} is not a Clifford tableau gate")

    def to_tableau(self) -> CliffordTableau:
        n = self.n
        nbytes = (2 * n + 7) // 8
        xm = np.zeros((n, 2 * n), dtype=np.uint8)
        zm = np.zeros((n, 2 * n), dtype=np.uint8)
        for q in range(n):
            xm[q] = np.unpackbits(
                np.frombuffer(self.colx[q].to_bytes(nbytes, "little"), dtype=np.uint8),
                bitorder="little",
            )[: 2 * n]
            zm[q] = np.unpackbits(
                np.frombuffer(self.colz[q].to_bytes(nbytes, "little"), dtype=np.uint8),
                bitorder="little",
            )[: 2 * n]
        xm, zm = xm.T, zm.T  # (generator, qubit)
        images = []
        for g in range(2 * n):
            x = int.from_bytes(np.packbits(xm[g], bitorder="little").tobytes(), "little")
            z = int.from_bytes(np.packbits(zm[g], bitorder="little").tobytes(), "little")
            sign = -1 if (self.signs >> g) & 1 else 1
            images.append(PauliString.from_bits(n, x, z, sign))
        return CliffordTableau(n, tuple(images))


def tableau_from_circuit(c: Circuit) -> CliffordTableau:
    """Walk the circuit and return the conjugation tableau.

    Raises NonCliffordGate on T or CUSTOM gates.
    """
    cols = _ColumnTableau(c.n_qubits)
    for g in c.gates:
        if g.kind not in CLIFFORD_GATE_KINDS:
            raise NonCliffordGate(f"{g.kind.value} is not a Clifford gate")
        cols.apply(g)
    return cols.to_tableau()


def tableau_dagger(c: Circuit) -> CliffordTableau:
    """Tableau of the inverse circuit (gates reversed and inverted)."""
    return tableau_from_circuit(circuit_dagger(c))


def conjugate_pauli(t: CliffordTableau, p: PauliString) -> PauliString:
    """U p U^dag: expand p over generators and multiply their images."""
    if t.n != p.n:
        raise DimensionMismatch(f"tableau on {t.n} qubits, Pauli on {p.n}")
    x_acc, z_acc, t_acc = 0, 0, p.phase_t
    rem = p.x | p.z
    while rem:
        j = (rem & -rem).bit_length() - 1
        rem &= rem - 1
        if (p.x >> j) & 1:
            img = t.images[j]
            t_acc += img.phase_t + 2 * (z_acc & img.x).bit_count()
            x_acc ^= img.x
            z_acc ^= img.z
        if (p.z >> j) & 1:
            img = t.images[t.n + j]
            t_acc += img.phase_t + 2 * (z_acc & img.x).bit_count()
            x_acc ^= img.x
            z_acc ^= img.z
    return PauliString(t.n, x_acc, z_acc, t_acc % 4)


def conjugate_pauli_inverse(t: CliffordTableau, p: PauliString) -> PauliString:
    """U^dag p U given the tableau of U, via a GF(2) solve.

    The bit part solves M q = p; the sign is fixed by conjugating the
    candidate forward and comparing.
    """
    if t.n != p.n:
        raise DimensionMismatch(f"tableau on {t.n} qubits, Pauli on {p.n}")
    n = t.n
    # Rows of the transposed system: equation per coordinate is awkward,
    # so solve with M^T by swapping the roles: build the 2n rows of M.
    vec_p = p.x | (p.z << n)
    rows = _matrix_rows(t)
    sol = gf2.gf2_solve(rows, [(vec_p >> i) & 1 for i in range(2 * n)], 2 * n)
    if sol is None:
        raise ValueError("tableau matrix is singular; not a valid Clifford tableau")
    q = PauliString.from_bits(n, sol & ((1 << n) - 1), sol >> n, 1)
    forward = conjugate_pauli(t, q)
    if forward.sign() != p.sign():
        q = -q
    return q


def _image_vector(img: PauliString) -> int:
    return img.x | (img.z << img.n)


def _matrix_rows(t: CliffordTableau) -> list[int]:
    """Rows of M_U as bit vectors (bit g of row r = M[r, g]).

    M_U holds the image vectors as its columns, so this transposes.
    """
    n = t.n
    cols = [_image_vector(img) for img in t.images]
    rows = [0] * (2 * n)
    for g, col in enumerate(cols):
        while col:
            r = (col & -col).bit_length() - 1
            rows[r] |= 1 << g
            col &= col - 1
    return rows


def symplectic_matrix(t: CliffordTableau) -> np.ndarray:
    """M_U as a (2n, 2n) uint8 array over F2.

    Column g holds the (x, z) bit vector of generator g's image, so
    M_U @ p mod 2 is the bit part of the conjugated Pauli.
    """
    n = t.n
    m = np.zeros((2 * n, 2 * n), dtype=np.uint8)
    for g, img in enumerate(t.images):
        vec = _image_vector(img)
        for r in range(2 * n):
            m[r, g] = (vec >> r) & 1
    return m


def symplectic_rank_diff(a: CliffordTableau, b: CliffordTableau) -> int:
    """GF(2) rank of M_a - M_b."""
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n} vs {b.n} qubits")
    cols = [_image_vector(ia) ^ _image_vector(ib) for ia, ib in zip(a.images, b.images)]
    return gf2.gf2_rank(cols)


def differing_pauli_fraction(a: CliffordTableau, b: CliffordTableau) -> float:
    """Fraction of the 4^n Paulis whose images differ (ignoring signs)."""
    return 1.0 - 2.0 ** (-symplectic_rank_diff(a, b))


def tableau_compose(a: CliffordTableau, b: CliffordTableau) -> CliffordTableau:
    """Tableau of the product A B (conjugation by A after B)."""
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n} vs {b.n} qubits")
    return CliffordTableau(a.n, tuple(conjugate_pauli(a, img) for img in b.images))


def tableau_equal(a: CliffordTableau, b: CliffordTableau) -> bool:
    """True when all generator images agree, signs included."""
    return a.n == b.n and a.images == b.images


def pauli_correction(a: CliffordTableau, b: CliffordTableau) -> PauliString | None:
    """The unique R with conj_A = conj_(R B), or None if M_a != M_b.

    R must anticommute with the image of generator g exactly when the
    two tableaux disagree on that image's sign; that is a linear
    system over F2 in R's (x, z) bits.
    """
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n} vs {b.n} qubits")
    n = a.n
    for ia, ib in zip(a.images, b.images):
        if (ia.x, ia.z) != (ib.x, ib.z):
            return None
    rows = [img.z | (img.x << n) for img in b.images]
    rhs = [0 if ia.sign() == ib.sign() else 1 for ia, ib in zip(a.images, b.images)]
    sol = gf2.gf2_solve(rows, rhs, 2 * n)
    if sol is None:
        return None
    return PauliString.from_bits(n, sol & ((1 << n) - 1), sol >> n, 1)


def random_clifford_circuit(n: int, length: int, rng: np.random.Generator) -> Circuit:
    """Uniform i.i.d. gates from {H, S, CNOT, X, Y, Z} on random targets.

    This samples circuits, not uniformly random Clifford group
    elements; spread is good enough for testing purposes.
    """
    one_qubit = (GateKind.H, GateKind.S, GateKind.X, GateKind.Y, GateKind.Z)
    gates = []
    for _ in range(length):
        if n >= 2 and rng.integers(0, 6) == 5:
            c, t = rng.choice(n, size=2, replace=False)
            gates.append(Gate(GateKind.CNOT, (int(c), int(t))))
        else:
            kind = one_qubit[rng.integers(0, len(one_qubit))]
            gates.append(Gate(kind, (int(rng.integers(0, n)),)))
    return Circuit(n, tuple(gates))
