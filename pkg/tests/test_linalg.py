from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from g2forms.linalg import (charpoly, det, identity, inverse,
                            leading_principal_minors, mat, mat_mul, nullspace,
                            rank, rref, solve, symmetric_signature, transpose)

rationals = st.fractions(min_value=-5, max_value=5,
                         max_denominator=6).map(Fraction)


def square(n):
    return st.lists(st.lists(rationals, min_size=n, max_size=n),
                    min_size=n, max_size=n)


def test_rref_identity():
    r, pivots = rref(identity(3))
    assert r == identity(3)
    assert pivots == [0, 1, 2]


def test_nullspace_known():
    a = mat([[1, 2, 3], [2, 4, 6]])
    ns = nullspace(a)
    assert len(ns) == 2
    for v in ns:
        assert all(sum(row[j] * v[j] for j in range(3)) == 0 for row in a)


def test_solve_inconsistent():
    assert solve(mat([[1, 1], [1, 1]]), [1, 2]) is None


def test_det_known():
    assert det(mat([[2, 1], [1, 2]])) == 3
    assert det(mat([[0, 1], [1, 0]])) == -1
    assert det(identity(5)) == 1


@settings(max_examples=30, deadline=None)
@given(square(3))
def test_det_multiplicative(rows):
    a = mat(rows)
    b = mat([[1, 2, 0], [0, 1, 1], [1, 0, 1]])
    assert det(mat_mul(a, b)) == det(a) * det(b)


@settings(max_examples=25, deadline=None)
@given(square(3))
def test_inverse_roundtrip(rows):
    a = mat(rows)
    if det(a) == 0:
        with pytest.raises(ValueError):
            inverse(a)
        return
    assert mat_mul(a, inverse(a)) == identity(3)


@settings(max_examples=25, deadline=None)
@given(square(4))
def test_charpoly_evaluates_to_zero(rows):
    # Cayley-Hamilton: p(A) = 0
    a = mat(rows)
    cs = charpoly(a)
    acc = [[Fraction(0)] * 4 for _ in range(4)]
    power = identity(4)
    for c in cs:
        if c != 0:
            acc = [[x + c * p for x, p in zip(ra, rp)]
                   for ra, rp in zip(acc, power)]
        power = mat_mul(power, a)
    assert all(x == 0 for row in acc for x in row)


def test_charpoly_det_consistency():
    a = mat([[1, 2], [3, 4]])
    cs = charpoly(a)
    # constant term is (-1)^n det
    assert cs[0] == det(a)


@pytest.mark.parametrize("diag,expected", [
    ((1, 1, 1), (3, 0)),
    ((-1, -1, -1), (0, 3)),
    ((2, -3, 5), (2, 1)),
    ((0, 1, -1), (1, 1)),
])
def test_signature_diagonal(diag, expected):
    m = [[Fraction(diag[i]) if i == j else Fraction(0) for j in range(3)]
         for i in range(3)]
    assert symmetric_signature(m) == expected


@settings(max_examples=25, deadline=None)
@given(square(3))
def test_signature_congruence_invariant(rows):
    # signature of S^T S diag(1,-1,...) style congruence is preserved
    s = mat(rows)
    if det(s) == 0:
        return
    d = mat([[1, 0, 0], [0, -1, 0], [0, 0, 1]])
    congruent = mat_mul(transpose(s), mat_mul(d, s))
    assert symmetric_signature(congruent) == symmetric_signature(d)


def test_leading_minors_bareiss_int():
    m = [[2, 1, 0], [1, 2, 1], [0, 1, 2]]
    assert leading_principal_minors(m) == [2, 3, 4]


def test_rank_rectangular():
    assert rank(mat([[1, 0, 1], [0, 1, 1]])) == 2
    assert rank([[Fraction(0)] * 3]) == 0
