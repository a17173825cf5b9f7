import pytest
from hypothesis import given, strategies as st

import oracles
from milnorfrk.polynomial import F2Poly, PolynomialParseError, monomials_of_degree, parse_poly

R = 3


@st.composite
def polys(draw, nvars=R, max_degree=3):
    terms = draw(st.sets(st.tuples(*[st.integers(0, max_degree)] * nvars), max_size=6))
    return F2Poly(nvars, frozenset(terms))


def test_parse_and_print_round_trip():
    p = parse_poly("x1^2*x3 + x2*x3", 3)
    assert p.monomials == {(2, 0, 1), (0, 1, 1)}
    assert parse_poly(str(p), 3) == p
    assert parse_poly("x1 + x1", 1) == F2Poly.zero(1)
    assert parse_poly("0", 2) == F2Poly.zero(2)
    assert parse_poly("x2").nvars == 2


@pytest.mark.parametrize("text", ["", "x1 +", "y1", "x0", "x1^", "x3"])
def test_parse_rejects(text):
    with pytest.raises(PolynomialParseError):
        parse_poly(text, 2)


def test_monomials_of_degree_count():
    assert len(monomials_of_degree(3, 2)) == 6
    assert set(monomials_of_degree(2, 3)) == set(oracles.monomials(2, 3))


@given(polys(), polys())
def test_product_matches_oracle(p, q):
    assert (p * q).monomials == oracles.poly_mul(p.monomials, q.monomials)


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, w):
    assert p * (q + w) == p * q + p * w
    assert (p * q) * w == p * (q * w)
    assert p + p == F2Poly.zero(R)


@given(polys(), st.tuples(*[st.integers(0, 1)] * R))
def test_evaluation_matches_oracle(p, point):
    assert p(point) == oracles.evaluate(p.monomials, point)


@given(polys(), polys())
def test_frobenius(p, q):
    assert (p + q) ** 2 == p ** 2 + q ** 2


def test_homogeneity():
    x, y = F2Poly.var(0, 2), F2Poly.var(1, 2)
    assert (x * y + x ** 2).degree == 2
    assert not (x + x * y).is_homogeneous()
    assert (x + x * y).component(2) == x * y
