"""GF(2) linear algebra on bit-packed rows.

Rows are Python ints used as bit vectors (bit j = column j), so row
XOR is word-parallel for free.
"""

from __future__ import annotations


def gf2_rank(rows: list[int]) -> int:
    """Rank of the binary matrix whose rows are the given bit vectors."""
    basis: dict[int, int] = {}  # leading bit -> reduced row
    rank = 0
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            if lead in basis:
                row ^= basis[lead]
            else:
                basis[lead] = row
                rank += 1
                break
    return rank


def gf2_solve(rows: list[int], rhs: list[int], n_cols: int) -> int | None:
    """Solve M v = b over GF(2); rows are bit vectors, rhs bits 0/1.

    Returns one solution as a bit vector (free variables set to 0), or
    None when the system is inconsistent.
    """
    aug = [r | (b << n_cols) for r, b in zip(rows, rhs)]
    pivots: dict[int, int] = {}  # pivot column -> row owning it
    for row in aug:
        for col, prow in pivots.items():
            if (row >> col) & 1:
                row ^= prow
        if row == 0:
            continue
        coeffs = row & ((1 << n_cols) - 1)
        if coeffs == 0:
            return None
        col = coeffs.bit_length() - 1
        for c in pivots:
            if (pivots[c] >> col) & 1:
                pivots[c] ^= row
        pivots[col] = row
    solution = 0
    for col, prow in pivots.items():
        if (prow >> n_cols) & 1:
            solution |= 1 << col
    return solution
