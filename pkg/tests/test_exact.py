from fractions import Fraction
from functools import reduce

import pytest
from hypothesis import given, strategies as st

from k3nine.exact import (
    PolyParseError,
    QPoly,
    VariableMismatch,
    coprime_refinement,
    parse_poly,
    poly_gcd,
    poly_xgcd,
    resultant,
    squarefree_decomposition,
    squarefree_part,
)
from conftest import det_cofactor

small = st.integers(-5, 5)
polys = st.lists(small, min_size=0, max_size=6).map(QPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def P(text):
    return parse_poly(text, "t")


def test_parse_and_print():
    p = P("t*(t^3-1)*(t^3-2)*(t^3-3)")
    assert p.degree == 10
    assert str(p) == "t^10 - 6*t^7 + 11*t^4 - 6*t"
    assert P("t^9+1")(-1) == 0
    assert P("(1/2)*t - 3/4").coeffs == (Fraction(-3, 4), Fraction(1, 2))
    assert P(str(p)) == p


def test_parse_errors():
    for bad in ["", "t^", "t*/2", "(t+1", "t/t", "t^-1", "2x + t", "t/0"]:
        with pytest.raises(PolyParseError):
            parse_poly(bad, "t")


def test_variable_mismatch():
    with pytest.raises(VariableMismatch):
        QPoly([0, 1], "t") + QPoly([0, 1], "x")


def test_zero_polynomial_degree():
    assert QPoly().degree == float("-inf")
    assert QPoly().valuation_at(P("t")) == float("inf")


def test_gcd_examples():
    assert poly_gcd(P("t^2-1"), P("t-1")) == P("t-1")
    assert poly_gcd(QPoly(), QPoly()).is_zero()
    assert poly_gcd(P("2*t+2"), QPoly()) == P("t+1")


@given(polys, nonzero_polys)
def test_division_identity(p, q):
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


@given(nonzero_polys, nonzero_polys)
def test_xgcd_bezout(p, q):
    g, s, t = poly_xgcd(p, q)
    assert s * p + t * q == g
    assert g.lc == 1
    assert g.divides(p) and g.divides(q)


def test_squarefree_examples():
    p = P("t^4*(t^3-2)^2")
    assert squarefree_decomposition(p) == [(P("t^3-2"), 2), (P("t"), 4)]
    assert squarefree_part(p) == P("t^4-2*t")
    with pytest.raises(ValueError):
        squarefree_decomposition(QPoly())


factor_lists = st.lists(
    st.tuples(st.lists(small, min_size=2, max_size=4).map(QPoly).filter(lambda f: f.degree >= 1), st.integers(1, 4)),
    min_size=1,
    max_size=4,
)


@given(factor_lists, st.integers(1, 7))
def test_squarefree_round_trip(factors, c):
    p = reduce(lambda acc, fm: acc * fm[0] ** fm[1], factors, QPoly.const(c))
    dec = squarefree_decomposition(p)
    rebuilt = reduce(lambda acc, sm: acc * sm[0] ** sm[1], dec, QPoly.const(p.lc))
    assert rebuilt == p
    mults = [m for _, m in dec]
    assert mults == sorted(set(mults))
    for s, _ in dec:
        assert s.lc == 1 and s.degree >= 1
        assert poly_gcd(s, s.derivative()).degree == 0
    for i in range(len(dec)):
        for j in range(i):
            assert poly_gcd(dec[i][0], dec[j][0]).degree == 0


@given(st.lists(nonzero_polys, min_size=1, max_size=4))
def test_coprime_refinement(ps):
    basis = coprime_refinement(ps)
    for i, b in enumerate(basis):
        assert b.lc == 1 and b.degree >= 1
        assert poly_gcd(b, b.derivative()).degree == 0
        for c in basis[:i]:
            assert poly_gcd(b, c).degree == 0
    for p in ps:
        rest = p
        for b in basis:
            while b.divides(rest):
                rest = rest.exact_div(b)
        assert rest.degree <= 0


def test_coprime_refinement_example():
    assert coprime_refinement([P("t^3"), P("t^2*(t-1)")]) == [P("t-1"), P("t")]


def sylvester(p: QPoly, q: QPoly):
    m, n = int(p.degree), int(q.degree)
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(p.coeffs)) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(q.coeffs)) + [0] * (size - n - 1 - i))
    return rows


def test_resultant_examples():
    assert resultant(P("t-2"), P("t-3")) == -1
    assert resultant(P("t^2-1"), P("t^2-4")) == 9
    assert resultant(P("t^2-1"), P("t-1")) == 0


@given(
    st.lists(small, min_size=2, max_size=6).map(QPoly).filter(lambda p: p.degree >= 1),
    st.lists(small, min_size=2, max_size=6).map(QPoly).filter(lambda p: p.degree >= 1),
)
def test_resultant_matches_sylvester_determinant(p, q):
    assert resultant(p, q) == det_cofactor(sylvester(p, q))
