import pytest
from hypothesis import given, strategies as st

from k3nine.dataset import tau_records
from k3nine.lattices import (
    LatticeParseError,
    SingularMatrix,
    UnsupportedAtom,
    determinant,
    diagonalize,
    gram,
    invariants,
    is_even,
    parse_lattice,
    rank,
    signature,
    smith_normal_form,
    verify_lattice_rows,
)
from conftest import det_cofactor

EXPECTED_DET = {"A": -27, "B": -3, "C": -729, "D": -81, "E": -9, "F": -1, "G": -27, "H": -3}


def test_atoms():
    assert gram("U") == [[0, 1], [1, 0]]
    assert gram("U(3)") == [[0, 3], [3, 0]]
    assert gram("A2") == [[-2, 1], [1, -2]]
    assert gram("A_2") == gram("A2")
    assert len(gram("U(3)+A2")) == 4


def test_parse():
    assert str(parse_lattice("U ⊕ A2^4")) == "U+A2^4"
    assert str(parse_lattice("U+E6^2+A2")) == "U+E6^2+A2"
    for bad in ["", "V", "U+", "A2^0", "U(0)"]:
        with pytest.raises(LatticeParseError):
            parse_lattice(bad)
    with pytest.raises(UnsupportedAtom):
        parse_lattice("E7")


def test_root_lattices():
    for name, det in [("A2", 3), ("E6", 3), ("E8", 1)]:
        g = gram(name)
        assert determinant(g) == det
        assert signature(g) == (0, len(g))
        assert is_even(g)


def test_unimodular_and_rank():
    assert determinant(gram("U+E8")) == -1
    assert rank(gram("U+E6+E8")) == 16
    assert signature(gram("U(3)+A2")) == (1, 3)


def test_hyperbolic_diagonalization():
    d = diagonalize([[0, 1], [1, 0]])
    assert len(d) == 2 and d[0] * d[1] < 0
    assert signature([[0, 1], [1, 0]]) == (1, 1)
    assert rank([[0, 0], [0, 0]]) == 0


def test_column_rows():
    records = tau_records()
    reports = verify_lattice_rows(records)
    assert all(r["ok"] for r in reports), [r["problems"] for r in reports]
    for rec, rep in zip(records, reports):
        g = gram(rec["lattice"])
        assert det_cofactor(g) == EXPECTED_DET[rec["case"]] == rep["determinant"]
        assert rep["rank"] == 22 - 2 * rec["m"]
        assert rep["signature"] == [1, rep["rank"] - 1]


def test_discriminant_groups():
    assert invariants("U(3)+A2")["invariant_factors"] == [1, 3, 3, 3]
    assert invariants("U+E8")["discriminant_group"] == []
    assert invariants("U+A2^4")["discriminant_group"] == [3, 3, 3, 3]


def test_singular_snf():
    with pytest.raises(SingularMatrix):
        smith_normal_form([[1, 2], [2, 4]])


@st.composite
def symmetric_matrices(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(st.integers(-6, 6))
    return m


@given(symmetric_matrices())
def test_determinant_matches_cofactor_oracle(m):
    assert determinant(m) == det_cofactor(m)


@given(symmetric_matrices())
def test_snf_order_equals_determinant(m):
    det = det_cofactor(m)
    if det == 0:
        return
    snf = smith_normal_form(m)
    prod = 1
    for d in snf:
        prod *= d
    assert prod == abs(det)
    assert all(b % a == 0 for a, b in zip(snf, snf[1:]))


@given(symmetric_matrices(max_n=6))
def test_signature_adds_up(m):
    p, q = signature(m)
    assert p + q == rank(m) <= len(m)
    if det_cofactor(m) != 0:
        assert rank(m) == len(m)
        assert (-1) ** q == (1 if det_cofactor(m) > 0 else -1)


@given(symmetric_matrices(max_n=5), st.integers(-3, 3), st.integers(0, 4), st.integers(0, 4))
def test_snf_invariant_under_change_of_basis(m, c, i, j):
    # P^T M P with P = I + c E_ij is a congruence by a unimodular matrix
    n = len(m)
    i, j = i % n, j % n
    if i == j or det_cofactor(m) == 0:
        return
    p = [[int(r == s) for s in range(n)] for r in range(n)]
    p[i][j] = c
    mp = [[sum(m[r][k] * p[k][s] for k in range(n)) for s in range(n)] for r in range(n)]
    g = [[sum(p[k][r] * mp[k][s] for k in range(n)) for s in range(n)] for r in range(n)]
    assert smith_normal_form(g) == smith_normal_form(m)
    assert signature(g) == signature(m)
