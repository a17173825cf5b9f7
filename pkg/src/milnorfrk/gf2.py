"""Dense GF(2) linear algebra on int bitsets.

A vector is a Python int whose bit ``j`` is the coordinate at column ``j``.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple


def rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of the given row vectors."""
    return len(echelon(rows))


def echelon(rows: Iterable[int]) -> List[int]:
    """Reduced basis of the row span, keyed by distinct leading bits.

    Every returned vector has a different highest set bit and no other
    returned vector has that bit set.
    """
    pivots: dict[int, int] = {}
    for v in rows:
        v = reduce(v, pivots)
        if not v:
            continue
        lead = v.bit_length() - 1
        for p, w in list(pivots.items()):
            if (w >> lead) & 1:
                pivots[p] = w ^ v
        pivots[lead] = v
    return [pivots[p] for p in sorted(pivots, reverse=True)]


def reduce(vec: int, pivots: dict[int, int] | Sequence[int]) -> int:
    """Canonical residue of ``vec`` modulo a span given by its pivot rows.

    ``pivots`` is either a ``{lead_bit: row}`` map or the list returned by
    :func:`echelon`; either way the rows must be fully reduced, so one pass
    suffices.  The residue has no bit in common with any pivot lead, so two
    vectors are congruent iff their residues are equal.
    """
    if isinstance(pivots, dict):
        items = pivots.items()
    else:
        items = ((row.bit_length() - 1, row) for row in pivots)
    for lead, row in items:
        if (vec >> lead) & 1:
            vec ^= row
    return vec


def in_span(vec: int, rows: Iterable[int]) -> bool:
    return reduce(vec, echelon(rows)) == 0


def solve(vec: int, rows: Sequence[int]) -> Tuple[int, ...] | None:
    """Indices of a subset of ``rows`` XOR-ing to ``vec``, or None."""
    # track combinations alongside the elimination
    basis: dict[int, Tuple[int, int]] = {}
    for idx, row in enumerate(rows):
        combo = 1 << idx
        for lead in sorted(basis, reverse=True):
            if (row >> lead) & 1:
                brow, bcombo = basis[lead]
                row ^= brow
                combo ^= bcombo
        if row:
            basis[row.bit_length() - 1] = (row, combo)
    combo = 0
    for lead in sorted(basis, reverse=True):
        if (vec >> lead) & 1:
            brow, bcombo = basis[lead]
            vec ^= brow
            combo ^= bcombo
    if vec:
        return None
    return tuple(i for i in range(len(rows)) if (combo >> i) & 1)


def kernel(columns: Sequence[int]) -> List[int]:
    """Basis of the kernel of the matrix whose j-th column is ``columns[j]``.

    Kernel vectors are bitsets over column indices.
    """
    basis: dict[int, Tuple[int, int]] = {}
    kern: List[int] = []
    for j, col in enumerate(columns):
        combo = 1 << j
        for lead in sorted(basis, reverse=True):
            if (col >> lead) & 1:
                bcol, bcombo = basis[lead]
                col ^= bcol
                combo ^= bcombo
        if col:
            basis[col.bit_length() - 1] = (col, combo)
        else:
            kern.append(combo)
    return kern


def bits(vec: int) -> List[int]:
    out = []
    while vec:
        low = vec & -vec
        out.append(low.bit_length() - 1)
        vec ^= low
    return out
