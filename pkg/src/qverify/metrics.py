"""Distance and fidelity quantities between two unitaries.

Two distances matter here.  The average-case distance

    D(U, V) = sqrt(1 - |Tr(U^dag V) / 2^n|^2)

is what a Choi-state swap test detects (with per-shot probability
D^2 / 2).  The worst-case distance

    Dmax(U, V) = max_phi sqrt(1 - |<phi| U^dag V |phi>|^2)

is the verification target.  Since W = U^dag V is normal, the set
{<phi|W|phi>} is the convex hull of W's eigenvalues, so the minimum
modulus mu is the distance from the origin to that hull polygon and
Dmax = sqrt(1 - mu^2).  This module computes both exactly, plus the
single-gate transfer identities and the named adversarial examples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_QUBIT_CAP,
    Circuit,
    Gate,
    GateKind,
    UnitaryMatrix,
)
from .errors import CapExceeded, DimensionMismatch, IndexOutOfRange, TargetMismatch

# Eigenvalues closer than this are treated as one hull vertex.
_SNAP_TOL = 1e-12


def _clamp01(v: float) -> float:
    return min(1.0, max(0.0, v))


def _check_same_dim(u: UnitaryMatrix, ut: UnitaryMatrix) -> None:
    if u.dim != ut.dim:
        raise DimensionMismatch(f"dimensions differ: {u.dim} vs {ut.dim}")


def trace_overlap(u: UnitaryMatrix, ut: UnitaryMatrix) -> complex:
    """(1/2^n) Tr(U^dag V); modulus at most 1 up to rounding."""
    _check_same_dim(u, ut)
    return complex(np.trace(u.matrix.conj().T @ ut.matrix)) / u.dim


def avg_distance(u: UnitaryMatrix, ut: UnitaryMatrix) -> float:
    """sqrt(1 - |trace_overlap|^2), the average-case distance D."""
    v = trace_overlap(u, ut)
    return math.sqrt(max(0.0, 1.0 - abs(v) ** 2))


def _snap_points(points: np.ndarray) -> list[tuple[float, float]]:
    """Collapse complex points closer than _SNAP_TOL into one representative."""
    order = np.lexsort((points.imag, points.real))
    snapped: list[tuple[float, float]] = []
    for idx in order:
        p = (float(points[idx].real), float(points[idx].imag))
        if snapped and math.hypot(p[0] - snapped[-1][0], p[1] - snapped[-1][1]) <= _SNAP_TOL:
            continue
        snapped.append(p)
    return snapped


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _convex_hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Monotone-chain hull, counter-clockwise, no repeated endpoint.

    Collinear input degenerates to its two extreme points; a single
    point comes back unchanged.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _segment_distance(p, a, b) -> float:
    """Distance from point p to segment ab."""
    ax, ay = a
    vx, vy = b[0] - ax, b[1] - ay
    seg2 = vx * vx + vy * vy
    if seg2 == 0.0:
        return math.hypot(p[0] - ax, p[1] - ay)
    t = ((p[0] - ax) * vx + (p[1] - ay) * vy) / seg2
    t = min(1.0, max(0.0, t))
    return math.hypot(p[0] - (ax + t * vx), p[1] - (ay + t * vy))


def min_modulus_over_numerical_range(w: np.ndarray) -> float:
    """min_phi |<phi|W|phi>| for a normal matrix W.

    The numerical range of a normal matrix is the convex hull of its
    eigenvalues, so this is the distance from the origin to the hull
    (0 when the origin lies inside or on it).
    """
    eig = np.linalg.eigvals(w)
    pts = _snap_points(eig)
    hull = _convex_hull(pts)
    origin = (0.0, 0.0)
    if len(hull) == 1:
        return math.hypot(*hull[0])
    if len(hull) == 2:
        return _segment_distance(origin, hull[0], hull[1])
    inside = True
    for i in range(len(hull)):
        if _cross(hull[i], hull[(i + 1) % len(hull)], origin) < 0.0:
            inside = False
            break
    if inside:
        return 0.0
    return min(
        _segment_distance(origin, hull[i], hull[(i + 1) % len(hull)])
        for i in range(len(hull))
    )


def worst_distance(u: UnitaryMatrix, ut: UnitaryMatrix, cap: int = DEFAULT_QUBIT_CAP) -> float:
    """The worst-case distance Dmax via the eigenvalue convex hull."""
    _check_same_dim(u, ut)
    if u.dim > 2**cap:
        raise CapExceeded(f"dimension {u.dim} exceeds dense cap 2^{cap}")
    mu = _clamp01(min_modulus_over_numerical_range(u.matrix.conj().T @ ut.matrix))
    return math.sqrt(max(0.0, 1.0 - mu * mu))


@dataclass(frozen=True)
class DistanceReport:
    """All comparison quantities for one pair of unitaries.

    p_swap is the per-shot detection probability of the Choi swap test
    (D^2/2); p_conditional the one of the conditional test, which is
    sensitive to the relative phase.
    """

    trace_overlap: complex
    avg_distance: float
    worst_distance: float
    ent_fidelity: float
    p_swap: float
    p_conditional: float


def detection_probabilities(
    u: UnitaryMatrix, ut: UnitaryMatrix, cap: int = DEFAULT_QUBIT_CAP
) -> DistanceReport:
    """Populate a DistanceReport for the pair (u, ut)."""
    v = trace_overlap(u, ut)
    d = math.sqrt(max(0.0, 1.0 - abs(v) ** 2))
    return DistanceReport(
        trace_overlap=v,
        avg_distance=_clamp01(d),
        worst_distance=_clamp01(worst_distance(u, ut, cap=cap)),
        ent_fidelity=_clamp01(abs(v) ** 2),
        p_swap=_clamp01(d * d / 2.0),
        p_conditional=_clamp01(0.5 - v.real / 2.0),
    )


def verify_theorem1(
    u: UnitaryMatrix, ut: UnitaryMatrix, cap: int = DEFAULT_QUBIT_CAP
) -> tuple[float, float, bool]:
    """Check Dmax <= 2^((n+1)/2) * D; returns (lhs, rhs, holds)."""
    _check_same_dim(u, ut)
    lhs = worst_distance(u, ut, cap=cap)
    rhs = 2.0 ** ((u.n_qubits + 1) / 2.0) * avg_distance(u, ut)
    return lhs, rhs, lhs <= rhs + 1e-9


def one_gate_pair(base: Circuit, position: int, replacement: Gate) -> tuple[Circuit, Circuit]:
    """The pair (base, base-with-one-replaced-gate).

    The replacement must act on the same ordered target tuple as the
    original, which guarantees the factorisation U = U1 (G x I) U2,
    Ut = U1 (Gt x I) U2 and hence the transfer identities
    D(U, Ut) = D(G, Gt) and Dmax(U, Ut) = Dmax(G, Gt).
    """
    if not 0 <= position < base.n_gates:
        raise IndexOutOfRange(f"gate position {position} outside 0..{base.n_gates - 1}")
    original = base.gates[position]
    if replacement.targets != original.targets:
        raise TargetMismatch(
            f"replacement targets {replacement.targets} differ from {original.targets}"
        )
    modified = list(base.gates)
    modified[position] = replacement
    return base, Circuit(base.n_qubits, tuple(modified))


def multi_controlled_not(n_qubits: int) -> np.ndarray:
    """The C^(n-1)NOT matrix: X on the last qubit when all others are 1."""
    dim = 2**n_qubits
    m = np.eye(dim, dtype=complex)
    m[dim - 2 : dim, dim - 2 : dim] = np.array([[0, 1], [1, 0]], dtype=complex)
    return m


def two_fault_example(n_qubits: int, cap: int = DEFAULT_QUBIT_CAP) -> tuple[Circuit, Circuit]:
    """The adversarial two-fault pair built around V = C^(n-1)NOT.

    U = (I x H) V (I x H) and Ut = V: dropping the two Hadamards leaves
    Tr(U^dag Ut) = 2^n - 2, so D is exponentially small while Dmax = 1.
    """
    if not 2 <= n_qubits <= cap:
        raise CapExceeded(f"two_fault_example needs 2 <= n <= {cap}, got {n_qubits}")
    v = Gate(GateKind.CUSTOM, tuple(range(n_qubits)), multi_controlled_not(n_qubits))
    h_last = Gate(GateKind.H, (n_qubits - 1,))
    u = Circuit(n_qubits, (h_last, v, h_last))
    ut = Circuit(n_qubits, (v,))
    return u, ut


def flipped_diagonal_pair(n_qubits: int, cap: int = DEFAULT_QUBIT_CAP) -> tuple[UnitaryMatrix, UnitaryMatrix]:
    """Identity vs identity-with-one-negated-diagonal-entry.

    The needle-in-a-haystack pair: Dmax = 1 while D = sqrt(4/2^n - 4/2^2n)
    is exponentially small.
    """
    if n_qubits > cap:
        raise CapExceeded(f"{n_qubits} qubits exceeds dense cap {cap}")
    dim = 2**n_qubits
    flipped = np.eye(dim, dtype=complex)
    flipped[dim - 1, dim - 1] = -1.0
    return UnitaryMatrix(np.eye(dim, dtype=complex)), UnitaryMatrix(flipped)
