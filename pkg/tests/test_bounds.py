import json

import pytest
from hypothesis import given, strategies as st

from milnorfrk import geometry
from milnorfrk.algebra import euler_characteristic, milnor_product
from milnorfrk.bounds import (
    NOT_APPLICABLE,
    BoundsError,
    adem_yalcin_check,
    bound_row,
    complex_exact_rank,
    complex_exact_rank_value,
    complex_rank_bound,
    cusick_context,
    eta,
    euler_obstruction,
    factor,
    khare_nonbounding,
    parse_factor_list,
    real_rank_bound,
    table_csv,
    table_json,
    theta,
)


def real(*pairs):
    return [factor("real", r, s) for r, s in pairs]


def cplx(*pairs):
    return [factor("complex", r, s) for r, s in pairs]


def test_eta_and_theta():
    assert (eta(4), eta(7), eta(0)) == (0, 1, 0)
    assert (theta(3), theta(5), theta(2), theta(0)) == (2, 1, 0, 0)
    with pytest.raises(BoundsError):
        eta(-1)


@pytest.mark.parametrize("factors,part1,part2", [
    (real((5, 5)), 4, 2),
    (real((2, 1)), 2, 1),
    (real((3, 3)), 4, NOT_APPLICABLE),
    (real((5, 5), (2, 1)), 6, 3),
])
def test_real_rank_bound(factors, part1, part2):
    rep = real_rank_bound(factors)
    assert rep.part1 == part1
    assert rep.part2 == part2 if part2 is not NOT_APPLICABLE else rep.part2 is NOT_APPLICABLE


@pytest.mark.parametrize("factors,part1,part2", [
    (cplx((2, 1)), 3, 1),
    (cplx((5, 5), (2, 1)), 9, 3),
    (cplx((3, 1)), 6, NOT_APPLICABLE),
])
def test_complex_rank_bound(factors, part1, part2):
    rep = complex_rank_bound(factors)
    assert rep.part1 == part1
    assert rep.part2 == part2 if part2 is not NOT_APPLICABLE else rep.part2 is NOT_APPLICABLE


def test_kind_mismatch_is_an_error():
    with pytest.raises(BoundsError):
        real_rank_bound(cplx((2, 1)))
    with pytest.raises(BoundsError):
        complex_rank_bound(real((2, 1)))


def test_not_applicable_is_not_zero():
    assert NOT_APPLICABLE != 0
    assert repr(NOT_APPLICABLE) == "NOT_APPLICABLE"
    with pytest.raises(TypeError):
        bool(NOT_APPLICABLE)


def test_exact_complex_rank():
    assert complex_exact_rank_value(cplx((2, 1))) == 1
    assert complex_exact_rank_value(cplx((4, 1), (2, 1))) == 2
    assert complex_exact_rank_value(cplx((3, 1))) is NOT_APPLICABLE
    rep = complex_exact_rank(cplx((2, 1)))
    # the witness involution on the even-r factor does not survive exact checking
    assert rep.lower_bound_verified is False
    assert not geometry.verified_free_involutions("complex", 2, 1)


def test_euler_obstruction():
    assert euler_obstruction(real((3, 2)))
    assert not euler_obstruction(real((5, 5)))
    assert euler_obstruction(cplx((3, 2)))


def test_khare_condition():
    assert khare_nonbounding(4, 3)
    assert khare_nonbounding(2, 3)
    assert not khare_nonbounding(4, 1)
    assert not khare_nonbounding(4, 2)


def test_adem_yalcin_inequality():
    check = adem_yalcin_check(real((2, 1)))
    assert (check.holds, check.lhs, check.rhs) == (True, 2, 4)
    assert adem_yalcin_check([]).rhs == 0
    mixed = adem_yalcin_check(real((3, 2), (4, 1), (5, 2)))
    assert mixed.holds and mixed.rhs == 12
    with pytest.raises(BoundsError):
        adem_yalcin_check(real((3, 3)))


def test_cusick_context():
    assert cusick_context("rp", [3, 3]) == 4
    assert cusick_context("cp", [1, 2, 3]) == 2
    assert cusick_context("rp", []) == 0


factor_lists = st.lists(
    st.integers(1, 12).flatmap(lambda r: st.tuples(st.just(r), st.integers(1, r))),
    min_size=0, max_size=4,
)


@given(factor_lists, st.sampled_from(["real", "complex"]), st.tuples(st.integers(1, 12), st.integers(1, 12)))
def test_bounds_are_ordered_and_monotone(pairs, kind, extra):
    bound = real_rank_bound if kind == "real" else complex_rank_bound
    factors = [factor(kind, r, s) for r, s in pairs]
    rep = bound(factors)
    if rep.part2 is not NOT_APPLICABLE:
        assert rep.part2 <= rep.part1
    r, s = max(extra), min(extra)
    bigger = bound(factors + [factor(kind, r, s)])
    assert bigger.part1 >= rep.part1
    if bigger.part2 is not NOT_APPLICABLE:
        assert rep.part2 is not NOT_APPLICABLE and bigger.part2 >= rep.part2


@given(st.integers(1, 12).flatmap(lambda r: st.tuples(st.just(r), st.integers(1, r))))
def test_zero_bound_and_euler_obstruction(pair):
    r, s = pair
    part1 = real_rank_bound(real(pair)).part1
    obstructed = euler_obstruction(real(pair))
    assert obstructed == (s % 2 == 0 and r % 2 == 1)
    assert (part1 == 0) == (s % 2 == 0 and r % 2 == 0)
    chi = euler_characteristic(milnor_product([("real", r, s)]))
    assert obstructed == (chi % 2 == 1)


@given(st.lists(st.integers(1, 6).map(lambda k: (4 * k - 2 if k % 2 else 4 * k, 1)), min_size=1, max_size=3))
def test_exact_rank_attains_the_upper_bound(pairs):
    factors = cplx(*pairs)
    assert complex_exact_rank_value(factors) == complex_rank_bound(factors).part2 == len(factors)


def test_khare_agrees_with_catalogue():
    for entry in geometry.construction_catalog():
        if entry.name.startswith("B") or entry.status != "PASS" or len(entry.params) != 2:
            continue
        r, s = entry.params
        if entry.verdicts.get("free"):
            assert not khare_nonbounding(r, s), entry.name


def test_table_formats():
    rows = [bound_row(parse_factor_list(t)) for t in ("real:3,2", "complex:5,5;complex:2,1", "real:2,1,complex:2,1")]
    csv_lines = table_csv(rows).splitlines()
    assert csv_lines[0] == "factors,part1,part2,corollary,chi_obstructed,khare"
    assert csv_lines[1] == '"real:3,2",2,NOT_APPLICABLE,NOT_APPLICABLE,true,false'
    doc = json.loads(table_json(rows))
    assert doc[1]["part1"] == 9 and doc[1]["khare"] is None
    assert doc[2]["part1"] == "NOT_APPLICABLE"
    with pytest.raises(BoundsError):
        parse_factor_list("real:3")
