import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from milnorfrk.algebra import complex_milnor, real_milnor
from milnorfrk.polynomial import F2Poly, parse_poly
from milnorfrk.steenrod import (
    NonHomogeneous,
    ideal_steenrod_closed,
    membership,
    sq,
    total_sq,
)

R = 3


@st.composite
def forms(draw, nvars=R):
    degree = draw(st.integers(1, 4))
    monos = oracles.monomials(nvars, degree)
    chosen = draw(st.sets(st.sampled_from(monos), min_size=1))
    return F2Poly(nvars, frozenset(chosen))


def test_square_of_product_of_generators():
    x1x2 = parse_poly("x1*x2", 2)
    assert sq(1, x1x2) == parse_poly("x1^2*x2 + x1*x2^2", 2)
    alg = real_milnor(3, 3)
    a, b = alg.gens()
    assert sq(1, a * b) == a * a * b + a * b * b
    # in real(2,1) the same class dies because a^2 = 0 and b^2 = ab
    a, b = real_milnor(2, 1).gens()
    assert not sq(1, a * b)


def test_total_square_of_unit():
    for alg in (real_milnor(2, 1), complex_milnor(3, 2)):
        assert total_sq(alg.one) == alg.one
    assert total_sq(F2Poly.one(2)) == F2Poly.one(2)


def test_non_homogeneous_input_is_rejected():
    with pytest.raises(NonHomogeneous):
        sq(1, parse_poly("x1 + x1*x2", 2))


@given(forms(), st.integers(0, 5))
def test_squares_match_binomial_formula(f, k):
    assert sq(k, f).monomials == oracles.binomial_sq(k, f.monomials)


@given(forms())
def test_unstable_range(f):
    d = f.degree
    assert sq(0, f) == f
    assert sq(d, f) == f * f
    assert not sq(d + 1, f)


@given(forms(), forms())
def test_total_square_is_multiplicative(f, g):
    assert total_sq(f * g) == total_sq(f) * total_sq(g)


@given(forms())
def test_adem_relations_in_low_degree(f):
    assert not sq(1, sq(1, f))
    assert sq(1, sq(2, f)) == sq(3, f)
    assert sq(2, sq(2, f)) == sq(3, sq(1, f))


@st.composite
def milnor_pairs(draw):
    r = draw(st.integers(1, 4))
    s = draw(st.integers(1, r))
    alg = draw(st.sampled_from([real_milnor(r, s), complex_milnor(r, s)]))

    def homogeneous():
        d = draw(st.integers(0, alg.top_degree))
        return alg.element(m for m in alg.basis_in_degree(d) if draw(st.booleans()))

    return homogeneous(), homogeneous()


@given(milnor_pairs())
@settings(max_examples=60)
def test_cartan_formula_on_milnor_rings(pair):
    u, v = pair
    assert total_sq(u * v) == total_sq(u) * total_sq(v)


def test_membership_examples():
    x1, x2 = F2Poly.var(0, 2), F2Poly.var(1, 2)
    assert membership(x1 ** 3, (x1 ** 2,))
    assert not membership(x2 ** 3, (x1 ** 2,))
    assert membership(F2Poly.zero(2), (x1 ** 2,))


@given(forms(), forms(), st.data())
@settings(max_examples=60)
def test_combinations_of_generators_are_members(g1, g2, data):
    top = max(g1.degree, g2.degree) + data.draw(st.integers(0, 2))
    pick = lambda d: F2Poly(R, frozenset(  # noqa: E731
        m for m in oracles.monomials(R, d) if data.draw(st.booleans())))
    f = pick(top - g1.degree) * g1 + pick(top - g2.degree) * g2
    assert membership(f, (g1, g2))


def test_closure_examples():
    x1, x2 = F2Poly.var(0, 2), F2Poly.var(1, 2)
    assert ideal_steenrod_closed([x1 ** 2])
    assert ideal_steenrod_closed([x1 * x2])
    assert ideal_steenrod_closed([x1 + x2, x1 * x2 ** 2])
    u = x1 ** 2 + x1 * x2 + x2 ** 2
    verdict = ideal_steenrod_closed([u, u])
    assert not verdict
    assert verdict.witness == (u, 1)
    assert not membership(verdict.residue, (u,))
    assert membership(sq(1, u) + verdict.residue, (u,))


def test_closure_agrees_with_independent_table_in_two_variables():
    forms_, single, pair = oracles.closure_table(2, max_degree=3)
    for i, f in enumerate(forms_):
        p = F2Poly(2, f)
        assert bool(ideal_steenrod_closed([p])) == bool(single[i])
        for j in range(i, len(forms_)):
            q = F2Poly(2, forms_[j])
            assert bool(ideal_steenrod_closed([p, q])) == bool(pair[i, j]), (p, q)
    assert np.array_equal(pair, pair.T)
