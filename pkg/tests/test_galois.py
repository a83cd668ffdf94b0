from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bgalois import galois as G
from bgalois.errors import DomainError, Singular, SizeTooSmall
from bgalois.exact import GF, QQ, QQq
from bgalois.forms import congruence_witness_bruteforce, e_q, similar_asymmetries, trace_invariant
from bgalois.homotopy import validate_path
from bgalois.linalg import Mat

from strategies import invertible

q = QQq.gen()
EQ = e_q(q)
E1 = e_q(QQ(1))
SKEW = Mat(QQ, [[0, 1], [-1, 0]])
JORDAN = Mat(QQ, [[0, 1], [-1, 1]])
F3 = GF(3)
F5 = GF(5)


def all_forms(field, n=2):
    for xs in itertools.product(range(field.p), repeat=n * n):
        m = Mat(field, [list(xs[i * n:(i + 1) * n]) for i in range(n)])
        if not m.det().is_zero():
            yield m


# classify ------------------------------------------------------------------------------


def test_classify_Eq():
    r = G.classify(EQ, EQ)
    assert r.trace_match and r.size == 2 and r.cleft_possible and r.manageable
    assert r.q_roots == frozenset({q, q.inverse()})
    assert r.nonzero_evidence == (1, 5, 14)


def test_classify_trace_mismatch_skips_evidence():
    r = G.classify(EQ, Mat.identity(QQq, 3))
    assert r.trace_E == -q - q.inverse() and r.trace_F == QQq(3)
    assert not r.trace_match and r.nonzero_evidence is None
    assert any("traces differ" in n for n in r.notes)


def test_classify_rectangular_is_not_cleft():
    f = Mat(QQ, [[-1, -1, -1], [-1, 0, 0], [1, -1, 0]])
    r = G.classify(E1, f)
    assert r.trace_match and r.size == 3 and not r.cleft_possible
    assert r.nonzero_evidence == (1, 7, 31)


def test_classify_errors():
    with pytest.raises(SizeTooSmall):
        G.classify(Mat(QQ, [[1]]), Mat(QQ, [[1]]))
    with pytest.raises(Singular):
        G.classify(E1, Mat(QQ, [[1, 1], [1, 1]]))


@given(invertible(F5, size=2), invertible(F5, size=2))
def test_classify_invariant_under_congruence(f, p):
    a = G.classify(f, f, degree=1, degree_bound=3)
    b = G.classify(f, p * f * p.T, degree=1, degree_bound=3)
    assert (a.trace_E, a.trace_F, a.trace_match, a.size, a.cleft_possible) == \
        (b.trace_E, b.trace_F, b.trace_match, b.size, b.cleft_possible)
    assert a.nonzero_evidence == b.nonzero_evidence
    assert similar_asymmetries(f, p * f * p.T)


# iso -----------------------------------------------------------------------------------


def test_iso_equal_forms():
    v = G.iso_decide(EQ, EQ, EQ)
    assert v.status == "Yes" and v.witness == Mat.identity(QQq, 2)


def test_iso_skew_vs_jordan_dissimilar():
    v = G.iso_decide(E1, SKEW, JORDAN)
    assert str(v) == "No(dissimilar-asymmetries)"


def test_iso_size_mismatch():
    f = Mat(QQ, [[-1, -1, -1], [-1, 0, 0], [1, -1, 0]])
    assert str(G.iso_decide(E1, SKEW, f)) == "No(size)"


def test_iso_symmetric_closed_field():
    i2, d = Mat.identity(QQ, 2), Mat(QQ, [[1, 0], [0, 2]])
    assert G.iso_decide(i2, i2, d).status == "Unknown"
    assert G.iso_decide(i2, i2, d, closed_field_semantics=True).status == "YesOverClosure"


def test_iso_finite_field_search():
    i2 = Mat.identity(F3, 2)
    assert str(G.iso_decide(i2, i2, Mat(F3, [[1, 0], [0, 2]]))) == "No(exhaustive-search)"
    v = G.iso_decide(i2, i2, Mat(F3, [[2, 0], [0, 2]]))
    assert v.status == "Yes" and v.witness * Mat(F3, [[2, 0], [0, 2]]) * v.witness.T == i2


def test_iso_block_witness_over_Q():
    c2 = Mat(QQ, [[0, 1], [2, 0]])
    f = Mat.block_diag(QQ, [c2, SKEW])
    p = Mat(QQ, [[1, 1, 0, 0], [0, 1, 2, 0], [0, 0, 1, 1], [1, 0, 0, 1]])
    g = p * f * p.T
    v = G.iso_decide(f, f, g)
    assert v.status == "Yes" and v.witness * g * v.witness.T == f


def test_iso_without_normal_form_stays_unknown():
    # both have a single 2x2 Jordan block for -1; no witness is constructed over Q
    g = Mat(QQ, [[1, 2], [0, 3]]) * JORDAN * Mat(QQ, [[1, 0], [2, 3]])
    assert G.iso_decide(E1, JORDAN, g).status == "Unknown"
    assert G.iso_decide(E1, JORDAN, g, closed_field_semantics=True).status == "YesOverClosure"


def test_iso_trace_mismatch_is_domain_error():
    with pytest.raises(DomainError):
        G.iso_decide(EQ, EQ, Mat.identity(QQq, 2))


def test_iso_exhaustive_over_F3():
    counts: dict = {}
    forms = list(all_forms(F3))
    for f1 in forms:
        for f2 in forms:
            if trace_invariant(f1) != trace_invariant(f2):
                continue
            v = G.iso_decide(f1, f1, f2)
            counts[str(v)] = counts.get(str(v), 0) + 1
            if v.status == "Yes":
                assert v.witness * f2 * v.witness.T == f1
                assert similar_asymmetries(f1, f2)
            elif v.reason == "dissimilar-asymmetries":
                assert congruence_witness_bruteforce(f1, f2) is None
    assert counts == {"Yes": 456, "No(exhaustive-search)": 272, "No(dissimilar-asymmetries)": 64}


@given(invertible(F5, size=2), invertible(F5, size=2))
def test_iso_yes_implies_homotopy_equivalent(f, p):
    g = p * f * p.T
    v = G.iso_decide(f, f, g)
    assert v.status == "Yes" and v.witness * g * v.witness.T == f
    assert G.homotopy_decide_galois(f, f, g).status == "Equivalent"


# homotopy ------------------------------------------------------------------------------


def test_homotopy_skew_vs_jordan():
    v = G.homotopy_decide_galois(E1, JORDAN, SKEW)
    assert v.status == "Equivalent" and v.connected
    assert [str(c.path) for c in v.certificates] == ["PathMatrix(Q, [0, 1; -1, t])"]
    assert G.REDUCTION_NOTE in v.notes


def test_homotopy_sizes_and_unknown():
    big = Mat.block_diag(QQ, [SKEW, Mat(QQ, [[1, 1], [-1, 1]])])
    i2 = Mat.identity(QQ, 2)
    assert trace_invariant(big) == trace_invariant(SKEW)
    v = G.homotopy_decide_galois(E1, SKEW, big)
    assert (v.status, v.reason) == ("NotEquivalent", "size")
    c = lambda lam: Mat(QQ, [[0, 1], [QQ(lam), 0]])  # noqa: E731
    a = Mat.block_diag(QQ, [c(-3), c(QQ(1) / 3)])
    b = Mat.block_diag(QQ, [c(-2), c(QQ(1) / 2)])
    e0 = Mat(QQ, [[1, 1], [-1, 1]])
    assert trace_invariant(a) == trace_invariant(b) == trace_invariant(e0) == QQ(0)
    assert G.homotopy_decide_galois(e0, a, b).status == "Unknown"
    with pytest.raises(DomainError):
        G.homotopy_decide_galois(i2, SKEW, JORDAN)


# cleft demonstration -------------------------------------------------------------------


def test_cleft_demo_q_one():
    d = G.cleft_triviality_demo(QQ(1))
    assert d["branch"] == "q=1" and len(d["classes"]) == 2
    assert str(d["iso"]) == "No(dissimilar-asymmetries)"
    assert d["homotopy"].status == "Equivalent"
    cert = d["path_certificate"]
    assert all(ch["passed"] for ch in cert.checks.values())
    assert validate_path(cert.path, cert.endpoint0, cert.endpoint1) == cert


def test_cleft_demo_q_minus_one():
    d = G.cleft_triviality_demo(QQ(-1))
    assert d["branch"] == "q=-1" and d["trace"] == QQ(2)
    assert len(d["classes"]) == 1
    assert d["excluded"][0]["realisable"] is False


@pytest.mark.parametrize("value", [q, QQ(2)], ids=["symbolic", "two"])
def test_cleft_demo_generic(value):
    d = G.cleft_triviality_demo(value)
    assert d["branch"] == "generic" and d["squarefree"]
    assert len(d["classes"]) == 1 and d["sample_similar"]
    assert d["iso"].status in ("Yes", "YesOverClosure")
    assert d["homotopy"].status == "Equivalent"


def test_cleft_demo_rejects_zero():
    with pytest.raises(ValueError):
        G.cleft_triviality_demo(QQ(0))


@given(st.integers(2, 4))
def test_cleft_demo_trace_over_F5(value):
    qq = F5(value)
    d = G.cleft_triviality_demo(qq)
    assert d["trace"] == -qq - qq.inverse()
