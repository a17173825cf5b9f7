import numpy as np
from hypothesis import given, strategies as st

from milnorfrk import gf2

vectors = st.lists(st.integers(min_value=0, max_value=(1 << 12) - 1), max_size=10)


def numpy_rank(rows, width=12):
    m = np.array([[(v >> b) & 1 for b in range(width)] for v in rows], dtype=np.uint8)
    rank = 0
    for col in range(width):
        piv = next((i for i in range(rank, len(m)) if m[i, col]), None)
        if piv is None:
            continue
        m[[rank, piv]] = m[[piv, rank]]
        for i in range(len(m)):
            if i != rank and m[i, col]:
                m[i] ^= m[rank]
        rank += 1
    return rank


def test_small_examples():
    assert gf2.rank([0b11, 0b01, 0b10]) == 2
    assert gf2.rank([]) == 0
    assert gf2.in_span(0b110, [0b100, 0b010])
    assert not gf2.in_span(0b001, [0b100, 0b010])
    assert gf2.bits(0b10110) == [1, 2, 4]


@given(vectors)
def test_rank_matches_dense_elimination(rows):
    assert gf2.rank(rows) == numpy_rank(rows)


@given(vectors)
def test_echelon_has_distinct_leads(rows):
    basis = gf2.echelon(rows)
    leads = [v.bit_length() - 1 for v in basis]
    assert len(set(leads)) == len(leads)
    for v in rows:
        assert gf2.reduce(v, basis) == 0


@given(vectors, st.integers(min_value=0, max_value=(1 << 12) - 1))
def test_solve_returns_a_valid_combination(rows, vec):
    combo = gf2.solve(vec, rows)
    if combo is None:
        assert not gf2.in_span(vec, rows)
    else:
        acc = 0
        for i in combo:
            acc ^= rows[i]
        assert acc == vec


@given(vectors)
def test_kernel_vectors_annihilate_and_count(columns):
    ker = gf2.kernel(columns)
    for combo in ker:
        acc = 0
        for j in gf2.bits(combo):
            acc ^= columns[j]
        assert acc == 0
    assert gf2.rank(ker) == len(ker) == len(columns) - gf2.rank(columns)
