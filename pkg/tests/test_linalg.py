from __future__ import annotations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from bgalois.errors import Singular
from bgalois.exact import GF, QQ, Poly
from bgalois.linalg import (
    Mat,
    bareiss_det,
    charpoly,
    jordan_block,
    jordan_structure,
    mat_inverse,
    similar,
    similarity_invariants,
)

from strategies import invertible, matrices


def to_sympy(m: Mat) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.value.numerator, x.value.denominator) for x in r] for r in m.to_rows()])


@given(matrices())
def test_det_matches_sympy(m):
    assert m.det() == QQ(to_sympy(m).det())


@given(matrices())
def test_bareiss_agrees_with_elimination(m):
    assert bareiss_det(m.to_rows(), QQ(1)) == m.det()


@given(matrices())
def test_charpoly_matches_sympy(m):
    x = sympy.Symbol("x")
    expected = sympy.Poly(to_sympy(m).charpoly(x).as_expr(), x).all_coeffs()[::-1]
    assert charpoly(m) == Poly(QQ, tuple(QQ(c) for c in expected))


@given(invertible())
def test_inverse(m):
    assert m * mat_inverse(m) == Mat.identity(QQ, m.rows)


@given(invertible(GF(5), min_size=2, max_size=3))
def test_inverse_over_f5(m):
    assert mat_inverse(m) * m == Mat.identity(GF(5), m.rows)


def test_singular_inverse_raises():
    with pytest.raises(Singular):
        mat_inverse(Mat(QQ, [[1, 2], [2, 4]]))


def test_rank_and_nullspace():
    m = Mat(QQ, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert m.rank() == 2
    (v,) = m.nullspace()
    assert all(x.is_zero() for x in (m * Mat.from_columns(QQ, [v])).col(0))


def test_jordan_block_orientation():
    j = jordan_block(QQ, 2, 3)
    assert j[0, 1] == 1 and j[1, 0] == 0 and j[1, 1] == 2


def test_jordan_structure_from_ranks():
    a = Mat.block_diag(QQ, [jordan_block(QQ, -1, 2), jordan_block(QQ, -1, 1), jordan_block(QQ, -1, 1)])
    assert jordan_structure(a) == {QQ(-1): (2, 1, 1)}


def test_jordan_structure_none_when_not_split():
    assert jordan_structure(Mat(QQ, [[0, -2], [1, 0]])) is None


def test_similarity_distinguishes_jordan_from_scalar():
    assert not similar(-Mat.identity(QQ, 2), Mat(QQ, [[-1, -2], [0, -1]]))
    assert similar(Mat(QQ, [[-1, -2], [0, -1]]), jordan_block(QQ, -1, 2))


@given(matrices(size=3), invertible(size=3))
def test_similarity_invariants_are_conjugation_invariant(a, p):
    b = mat_inverse(p) * a * p
    assert similarity_invariants(a) == similarity_invariants(b)
    assert similar(a, b)


def test_invariant_factors_of_direct_sum():
    a = Mat.diag(QQ, [1, 1, 2])
    inv = similarity_invariants(a)
    x = Poly.x(QQ)
    assert inv.invariant_factors == (x - 1, (x - 1) * (x - 2))


@given(st.integers(1, 4), st.integers(-3, 3))
def test_jordan_block_charpoly(n, lam):
    x = Poly.x(QQ)
    assert charpoly(jordan_block(QQ, lam, n)) == (x - lam) ** n
