from __future__ import annotations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from bgalois.errors import CheckFailed, DomainError, NotAntiTriangular, ZeroEigenvalue
from bgalois.exact import GF, QQ, QQq, Poly
from bgalois.forms import (
    Lemma15Case,
    asymmetry_solution_space,
    e_q,
    jordan_pair_form,
    lemma15_solve,
    lemma15_verify,
    trace_invariant,
)
from bgalois.homotopy import (
    PathMatrix,
    direct_sum_paths,
    homotopy_decide,
    path_anti_triangular,
    path_for_form,
    path_jordan_pair,
    reduce_to_blocks,
    validate_path,
)
from bgalois.linalg import Mat, charpoly, jordan_block, mat_inverse

from strategies import invertible, rationals

q = QQq.gen()
t = Poly.x(QQ)


def P(rows, field=QQ):
    from bgalois.parsing import parse_path_entry
    return PathMatrix(field, [[parse_path_entry(x, field) for x in r] for r in rows])


def test_anti_triangular_path_size_two():
    f, g = QQ(3), QQ(5)
    path = path_anti_triangular(Mat(QQ, [[0, f], [-f, g]]))
    assert path == P([["0", "3"], ["-3", "5*t"]])
    assert path.at(1) == Mat(QQ, [[0, 3], [-3, 5]])
    assert path.at(0) == Mat(QQ, [[0, 3], [-3, 0]])


def test_anti_diagonal_input_gives_constant_path():
    f = Mat(QQ, [[0, 0, 2], [0, -2, 0], [2, 0, 0]])
    path = path_anti_triangular(f)
    assert path.max_degree() == 0 and path.at(0) == f


def test_form7_path_has_constant_determinant():
    f = Mat(QQ, [[0, 0, 1], [0, -1, 1], [1, 1, 1]])
    path = path_anti_triangular(f)
    det = path.det()
    assert det.is_constant() and det == Poly(QQ, (f.det(),))
    assert abs(f.det().value) == 1


def test_anti_triangular_rejects():
    with pytest.raises(NotAntiTriangular):
        path_anti_triangular(Mat.identity(QQ, 2))
    with pytest.raises(NotAntiTriangular):
        path_anti_triangular(Mat(QQ, [[0, 1], [0, 1]]))


def test_jordan_pair_path_shape():
    assert path_jordan_pair(QQ(5), 1) == P([["0", "1"], ["5", "0"]])
    path = path_jordan_pair(QQ(2), 2)
    assert path[2, 1] == t and path[2, 3].is_zero()
    assert path.at(1) == jordan_pair_form(QQ(2), 2)
    assert path.at(0) == Mat(QQ, [[0, 0, 1, 0], [0, 0, 0, 1], [2, 0, 0, 0], [0, 2, 0, 0]])
    with pytest.raises(ZeroEigenvalue):
        path_jordan_pair(QQ(0), 2)


def test_jordan_pair_asymmetry_charpoly_at_both_ends():
    x = Poly.x(QQ)
    want = (x - 2) ** 2 * (x - QQ(1) / QQ(2)) ** 2
    path = path_jordan_pair(QQ(2), 2)
    for t0 in (0, 1):
        f = path.at(t0)
        assert charpoly(mat_inverse(f) * f.T) == want


@pytest.mark.parametrize("p, n", [(QQ(2), 1), (QQ(2), 3), (q, 2)])
def test_jordan_pair_inverse_is_manageable(p, n):
    path = path_jordan_pair(p, n)
    cert = validate_path(path, path.at(0), path.at(1))
    inv = cert.checks["manageable"]["inverse"]
    m = 2 * n
    assert inv[m - 1, m - 1].is_zero()
    assert cert.checks["manageable"]["column"] is not None
    col = cert.checks["manageable"]["column"] - 1
    assert inv[m - 1, col] == Poly(p.field, (1,))


def test_direct_sum_paths():
    one = P([["0", "1"], ["-1", "t"]])
    assert direct_sum_paths([one]) == one
    two = direct_sum_paths([one, one])
    assert two.shape == (4, 4) and two[2, 3] == P([["1"]])[0, 0] and two[3, 3] == t
    with pytest.raises(Exception):
        direct_sum_paths([one, P([["1"]], GF(3))])


def test_direct_sum_trace_is_sum_of_block_traces():
    p = QQ(3)
    path = direct_sum_paths([PathMatrix.constant(Mat(QQ, [[1]])), path_jordan_pair(p, 1)])
    cert = validate_path(path, path.at(0), path.at(1))
    assert cert.checks["trace"]["trace"] == Poly(QQ, (1 + p + p.inverse(),))


def test_validate_rejects_non_unit_determinant():
    path = P([["1", "0"], ["0", "t"]])
    with pytest.raises(CheckFailed) as info:
        validate_path(path, path.at(0), path.at(1))
    assert info.value.condition == 2
    assert info.value.evidence["det"] == t


def test_validate_rejects_wrong_endpoints():
    path = P([["0", "1"], ["-1", "t"]])
    with pytest.raises(CheckFailed) as info:
        validate_path(path, path.at(1), path.at(1))
    assert info.value.condition == 1


def test_validate_rejects_unmanageable_path():
    path = PathMatrix.constant(Mat.identity(QQ, 2))
    with pytest.raises(CheckFailed) as info:
        validate_path(path, path.at(0), path.at(1))
    assert info.value.condition == 3


def test_constant_e_q_path():
    e = e_q(q)
    cert = validate_path(PathMatrix.constant(e), e, e)
    assert all(c["passed"] for c in cert.checks.values())


@st.composite
def lemma15_instances(draw):
    tag, size = draw(st.sampled_from([("A", 2), ("A", 4), ("B", 3), ("B", 5)]))
    case = Lemma15Case(tag, size)
    basis = asymmetry_solution_space(jordan_block(QQ, case.eigenvalue, size))
    coeffs = [draw(rationals()) for _ in basis]
    f = sum((b * c for b, c in zip(basis, coeffs)), Mat.zeros(QQ, size))
    assume(not f.det().is_zero())
    return case, f


@given(lemma15_instances())
def test_random_lemma15_paths_validate(inst):
    case, f = inst
    assert lemma15_verify(f, case)
    path = path_anti_triangular(f)
    cert = validate_path(path, path.at(0), f)
    inv = cert.checks["manageable"]["inverse"]
    n = f.rows
    # anti-diagonal of the inverse does not depend on t
    assert all(inv[i, n - 1 - i].is_constant() for i in range(n))


@given(lemma15_instances(), rationals())
def test_specialisation_keeps_trace(inst, t0):
    _, f = inst
    path = path_anti_triangular(f)
    validate_path(path, path.at(0), f)
    g = path.at(t0)
    assert not g.det().is_zero()
    assert trace_invariant(g) == trace_invariant(f)


def test_reduce_e_q_is_one_pair_block():
    red = reduce_to_blocks(e_q(q))
    assert [b.kind for b in red.blocks] == ["C"]
    assert red.blocks[0].gram == Mat(QQq, [[0, 1], [-q.inverse(), 0]])
    assert red.congruence == Mat.identity(QQq, 2)


def test_reduce_symmetric_is_a_residual():
    f = Mat(QQ, [[2, 1], [1, 3]])
    red = reduce_to_blocks(f)
    assert [b.kind for b in red.blocks] == ["symmetric"]


def test_reduce_mixed_minus_one_space():
    f = Mat.block_diag(QQ, [Mat(QQ, [[0, 1], [-1, 1]]), Mat(QQ, [[0, 1], [-1, 0]])])
    red = reduce_to_blocks(f)
    assert sorted(b.kind for b in red.blocks) == ["A", "skew"]
    assert red.congruence * f * red.congruence.T == red.assembled()


@st.composite
def hidden_block_forms(draw):
    blocks = draw(st.sampled_from([
        [Mat(QQ, [[0, 1], [-1, 1]]), Mat(QQ, [[0, 1], [-1, 0]])],
        [jordan_pair_form(QQ(2), 2)],
        [jordan_pair_form(QQ(3), 1), Mat(QQ, [[1]])],
        [lemma15_solve(Lemma15Case("B", 3), QQ).gram, Mat(QQ, [[1]])],
    ]))
    g = Mat.block_diag(QQ, blocks)
    p = draw(invertible(size=g.rows))
    return p * g * p.T


@given(hidden_block_forms())
def test_reduction_recovers_blocks_after_congruence(f):
    red = reduce_to_blocks(f)
    assert red.congruence * f * red.congruence.T == red.assembled()
    for b in red.blocks:
        if b.case is not None:
            assert lemma15_verify(b.gram, b.case)
    p, path, _ = path_for_form(f)
    cert = validate_path(path, path.at(0), path.at(1))
    assert cert.endpoint1 == p * f * p.T


def test_cor16_pair_is_homotopy_equivalent():
    v = homotopy_decide(Mat(QQ, [[0, 1], [-1, 1]]), Mat(QQ, [[0, 1], [-1, 0]]))
    assert v.status == "Equivalent"
    assert v.certificate.path == P([["0", "1"], ["-1", "t"]])
    assert v.connected


def test_sizes_two_and_four_not_equivalent():
    skew = Mat(QQ, [[0, 1], [-1, 0]])
    four = Mat.block_diag(QQ, [skew, Mat(QQ, [[1, 1], [-1, 1]])])
    assert trace_invariant(four) == trace_invariant(skew) == -2
    v = homotopy_decide(skew, four)
    assert (v.status, v.reason) == ("NotEquivalent", "size")


def test_trace_mismatch_is_a_domain_error():
    with pytest.raises(DomainError):
        homotopy_decide(Mat(QQ, [[0, 1], [-1, 0]]), Mat.identity(QQ, 2))


def test_different_charpolys_give_unknown():
    a = Mat.block_diag(QQ, [jordan_pair_form(QQ(-3), 1), jordan_pair_form(QQ(1) / QQ(3), 1)])
    b = Mat.block_diag(QQ, [jordan_pair_form(QQ(-2), 1), jordan_pair_form(QQ(1) / QQ(2), 1)])
    assert trace_invariant(a) == trace_invariant(b) == 0
    v = homotopy_decide(a, b)
    assert v.status == "Unknown" and v.certificate is None


def test_equal_charpolys_with_hidden_blocks_get_paths():
    a = Mat.block_diag(QQ, [jordan_pair_form(QQ(2), 1), Mat(QQ, [[0, 1], [-1, 1]])])
    p = Mat(QQ, [[1, 1, 0, 0], [0, 1, 2, 0], [0, 0, 1, 1], [1, 0, 0, 1]])
    v = homotopy_decide(a, p * a * p.T)
    assert v.status == "Equivalent" and v.connected
    assert all(c.checks["manageable"]["passed"] for c in v.certificates)
