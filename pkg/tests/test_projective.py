from math import comb

import pytest
from hypothesis import given, strategies as st

from k3nine.exact import parse_poly
from k3nine.projective import (
    NECESSARILY_SINGULAR,
    SCREEN_PASSED,
    DiagAction,
    coordinate_point_singularity_screen,
    fixed_strata,
    format_monomial,
    invariant_monomials,
    line_intersection_count,
)


def names(weights, degree=4, character=0, order=9):
    return [format_monomial(m) for m in invariant_monomials(DiagAction(order, weights, character), degree)]


def test_first_family():
    assert names((0, 0, 6, 4)) == [
        "x0^4", "x0^3*x1", "x0^2*x1^2", "x0*x1^3", "x0*x2^3", "x1^4", "x1*x2^3", "x2*x3^3",
    ]


def test_second_family():
    assert sorted(names((0, 3, 6, 1))) == sorted(
        ["x0^2*x1*x2", "x1^2*x2^2", "x0*x2^3", "x0*x1^3", "x0^4", "x2*x3^3"]
    )


def test_family_without_x3():
    got = names((0, 0, 3, 1))
    assert not any("x3" in m for m in got)
    assert {"x0*x2^3", "x1*x2^3", "x1^4"} <= set(got)


def test_screen():
    act = DiagAction(9, (0, 0, 3, 1))
    verdicts = coordinate_point_singularity_screen(invariant_monomials(act, 4), 3)
    assert [v["verdict"] for v in verdicts] == [SCREEN_PASSED] * 3 + [NECESSARILY_SINGULAR]
    for w in [(0, 0, 6, 4), (0, 3, 6, 1)]:
        act = DiagAction(9, w)
        verdicts = coordinate_point_singularity_screen(invariant_monomials(act, 4), 3)
        assert all(v["verdict"] == SCREEN_PASSED for v in verdicts)
    assert all("necessary screen" in v for v in (SCREEN_PASSED, NECESSARILY_SINGULAR))
    with pytest.raises(ValueError):
        coordinate_point_singularity_screen([(1, 0), (2, 0)], 1)


def test_fixed_strata():
    assert [s.describe() for s in fixed_strata(DiagAction(9, (0, 0, 6, 4)))] == [
        "line {x2=x3=0}", "point (0,0,1,0)", "point (0,0,0,1)",
    ]
    assert [s.describe() for s in fixed_strata(DiagAction(9, (0, 0, 0, 3)))] == ["plane {x3=0}", "point (0,0,0,1)"]
    assert [s.describe() for s in fixed_strata(DiagAction(9, (2, 2, 2, 2)))] == ["whole space"]


def test_line_intersections():
    generic = line_intersection_count(parse_poly("t^4 - 5*t + 1", "t"), 4)
    assert generic["multiplicities"] == [1, 1, 1, 1] and generic["squarefree"]
    double = line_intersection_count(parse_poly("(1-t)^2*(1+t)^2", "t"), 4)
    assert double["multiplicities"] == [2, 2]
    at_inf = line_intersection_count(parse_poly("1", "t"), 4)
    assert at_inf["multiplicities"] == [4] and at_inf["root_at_infinity"] == 4
    with pytest.raises(ValueError):
        line_intersection_count(parse_poly("0", "t"), 4)


actions = st.builds(
    lambda n, ws: (n, tuple(ws)),
    st.integers(2, 9),
    st.lists(st.integers(0, 8), min_size=2, max_size=4),
)


@given(actions, st.integers(1, 5))
def test_characters_partition_all_monomials(act, degree):
    n, ws = act
    total = 0
    for c in range(n):
        a = DiagAction(n, ws, c)
        mons = invariant_monomials(a, degree)
        assert all(a.weight(m) == c for m in mons)
        total += len(mons)
    assert total == comb(degree + len(ws) - 1, len(ws) - 1)


@given(actions)
def test_strata_partition_coordinates(act):
    n, ws = act
    strata = fixed_strata(DiagAction(n, ws))
    coords = sorted(i for s in strata for i in s.coords)
    assert coords == list(range(len(ws)))
