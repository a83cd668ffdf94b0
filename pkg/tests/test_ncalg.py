from __future__ import annotations

import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bgalois import ncalg as N
from bgalois.errors import BudgetExhausted, DegreeOutOfRange, Singular, SizeTooSmall
from bgalois.exact import GF, QQ, QQq
from bgalois.forms import e_q, is_manageable, trace_invariant
from bgalois.linalg import Mat
from bgalois.ncalg import rewriting
from bgalois.ncalg import words as W

q = QQq.gen()
EQ = e_q(q)
F_Q = Mat(QQq, [[0, 1], [-q.inverse(), 1]])
F5 = GF(5)
E5 = Mat(F5, [[0, 1], [2, 0]])
G5 = Mat(F5, [[0, 1], [2, 1]])

# (E, F) pairs with matching traces and manageable F
PAIRS = [(EQ, EQ), (EQ, F_Q), (E5, G5)]
PAIR_IDS = ["Eq-Eq", "Eq-F", "F5"]


def _poly(field, terms):
    return W.clean({tuple(w): field(c) for w, c in terms})


def oqsl2_count(e):
    # normal words a^i b^j c^k and b^j c^k d^l, the shared b^j c^k counted once
    return 2 * comb(e + 3, 3) - comb(e + 2, 2)


# presentations -------------------------------------------------------------------------


def test_BE_counts_and_quantum_determinant():
    p = N.presentation_BE(EQ)
    assert p.generators == ("a11", "a12", "a21", "a22")
    assert len(p.relations) == 8
    texts = [p.format_relation(i) for i in range(8)]
    assert "(-q^-1)*a12*a21 + a11*a22 - 1" in texts
    assert "a12*a11 - q*a11*a12" in texts


def test_BE_size3_relations_are_quadratic_with_constant():
    e = Mat(QQ, [[1, 2, 0], [0, 1, 3], [1, 0, 1]])
    p = N.presentation_BE(e)
    assert p.ngens == 9 and len(p.relations) == 18
    for r in p.relation_polys():
        assert W.degree(r) == 2
        assert {len(w) for w in r} <= {0, 2}


def test_BEF_counts_rectangular():
    e = Mat(QQ, [[1, 1], [0, 1]])
    f = Mat(QQ, [[1, 0, 0], [0, 0, 1], [0, 1, 1]])
    p = N.presentation_BEF(e, f)
    assert p.ngens == 6 and len(p.relations) == 13
    assert p.generators[:3] == ("z11", "z12", "z13")


def test_BEF_with_F_equal_E_is_BE_renamed():
    a, z = N.presentation_BE(EQ), N.presentation_BEF(EQ, EQ)
    assert a.relations == z.relations
    assert [g.replace("a", "z") for g in a.generators] == list(z.generators)


def test_presentation_rejects_singular_and_small():
    with pytest.raises(Singular):
        N.presentation_BE(Mat(QQ, [[1, 1], [1, 1]]))
    with pytest.raises(SizeTooSmall):
        N.presentation_BEF(Mat(QQ, [[1]]), Mat.identity(QQ, 2))


# completion ----------------------------------------------------------------------------


def test_completion_of_oqsl2():
    s = N.complete(N.presentation_BE(EQ), 4)
    assert len(s.rules) == 7
    assert s.confluent_up_to == 4 <= s.degree_bound
    for lead, tail in s.rules.items():
        assert all(W.deglex_key(w) < W.deglex_key(lead) for w in tail)


def test_completion_is_deterministic():
    p = N.presentation_BEF(EQ, F_Q)
    a = rewriting._complete_cached.__wrapped__(p, 4, 10**6)
    b = rewriting._complete_cached.__wrapped__(p, 4, 10**6)
    assert a.rule_list() == b.rule_list()


def test_free_algebra_has_no_rules():
    s = N.complete(N.free_presentation(QQ, ["x", "y"]), 5)
    assert s.rules == {} and s.confluent_up_to == 5
    assert len(s.irreducible_words(3)[3]) == 8


def test_x_minus_one_collapses_to_constants():
    p = N.Presentation.build(QQ, ["x"], [_poly(QQ, [((0,), 1), ((), -1)])])
    s = N.complete(p, 6)
    for k in range(7):
        assert s.reduce({(0,) * k: QQ(3)}) == {(): QQ(3)}


def test_budget_exhaustion_returns_partial_system():
    p = N.presentation_BE(EQ)
    with pytest.raises(BudgetExhausted) as info:
        N.complete(p, 4, budget=5)
    partial = info.value.partial
    assert partial is not None and partial.confluent_up_to < 4


def test_degree_bound_below_two_rejected():
    with pytest.raises(ValueError):
        N.complete(N.presentation_BE(EQ), 1)


# normal forms --------------------------------------------------------------------------


def test_unit_is_nonzero_normal_form():
    s = N.complete(N.presentation_BE(EQ))
    one = N.normal_form(s.one())
    assert one.value == {(): QQq.one} and not one.is_zero()


def test_relation_leads_rewrite_to_tails():
    s = N.complete(N.presentation_BE(EQ))
    for lead, tail in s.rules.items():
        assert s.reduce({lead: QQq.one}) == s.reduce(tail)


def test_degree_out_of_range():
    s = N.complete(N.presentation_BE(EQ), 3)
    with pytest.raises(DegreeOutOfRange):
        N.normal_form(N.AlgebraElement(s, {(0, 1, 2, 3): QQq.one}))


words4 = st.lists(st.integers(0, 3), min_size=0, max_size=4).map(tuple)
polys4 = st.dictionaries(words4, st.integers(-3, 3), max_size=5)


@given(polys4)
def test_normal_form_idempotent(raw):
    s = N.complete(N.presentation_BE(EQ))
    e = N.AlgebraElement(s, W.clean({w: QQq(c) for w, c in raw.items()}))
    once = N.normal_form(e)
    assert N.normal_form(once) == once
    assert not any(s.is_reducible(w) for w in once.value)


@given(polys4, st.integers(0, 10**6))
def test_random_reduction_order_agrees(raw, seed):
    s = N.complete(N.presentation_BEF(E5, G5))
    poly = W.clean({w: F5(c) for w, c in raw.items()})
    assert s.reduce_randomly(poly, random.Random(seed)) == s.reduce(poly)


def test_algebra_element_arithmetic():
    s = N.complete(N.presentation_BE(EQ))
    a11, a12, a21, a22 = (s.gen(g) for g in ("a11", "a12", "a21", "a22"))
    assert a11 * a22 - q.inverse() * (a12 * a21) == s.one()
    assert a12 * a11 == q * (a11 * a12)


# filtration dimensions -----------------------------------------------------------------


def test_oqsl2_dims_match_monomial_count():
    fd = N.filtration_dims(N.presentation_BE(EQ), 3)
    assert fd.agree
    assert fd.rewriting == tuple(oqsl2_count(e) for e in range(4)) == (1, 5, 14, 30)
    s = N.complete(N.presentation_BE(EQ), 4)
    assert N.dims_by_rewriting(s, 4) == (1, 5, 14, 30, 55)


def test_free_algebra_dims():
    p = N.free_presentation(QQ, ["a", "b", "c", "d"])
    fd = N.filtration_dims(p, 2)
    assert fd.rewriting == fd.oracle == (1, 5, 21)


@pytest.mark.parametrize("e,f", PAIRS, ids=PAIR_IDS)
def test_manageable_BEF_dims_match_BE(e, f):
    assert is_manageable(f) and trace_invariant(e) == trace_invariant(f)
    fd = N.filtration_dims(N.presentation_BEF(e, f), 2)
    assert fd.agree
    assert fd.rewriting == N.filtration_dims(N.presentation_BE(e), 2).rewriting == (1, 5, 14)


def test_dims_beyond_confluence_rejected():
    s = N.complete(N.presentation_BE(EQ), 3)
    with pytest.raises(DegreeOutOfRange):
        N.dims_by_rewriting(s, 4)


def test_trace_mismatch_collapses_algebra():
    # B(E_q, I) is zero: 1 reduces to 0
    p = N.presentation_BEF(EQ, Mat.identity(QQq, 2))
    s = N.complete(p)
    assert s.reduce({(): QQq.one}) == {}
    fd = N.filtration_dims(p, 2)
    assert fd.rewriting == fd.oracle == (0, 0, 0)


# coactions -----------------------------------------------------------------------------


def test_delta_on_generator_and_unit():
    z = N.complete(N.presentation_BEF(EQ, EQ))
    assert str(N.coaction_delta(EQ, EQ, z.gen("z11"))) == "a11 ⊗ z11 + a12 ⊗ z21"
    assert str(N.coaction_delta(EQ, EQ, z.one())) == "1 ⊗ 1"


def test_rho_on_generator():
    z = N.complete(N.presentation_BEF(EQ, F_Q))
    assert str(N.coaction_rho(EQ, F_Q, z.gen("z11"))) == "z11 ⊗ b11 + z12 ⊗ b21"


@pytest.mark.parametrize("e,f", PAIRS, ids=PAIR_IDS)
def test_delta_is_multiplicative(e, f):
    z = N.complete(N.presentation_BEF(e, f))
    h = N.complete(N.presentation_BE(e))
    gens = z.presentation.generators
    for x in gens:
        for y in gens:
            dx = N.coaction_delta(e, f, z.gen(x))
            dy = N.coaction_delta(e, f, z.gen(y))
            raw: dict = {}
            for (h1, z1), c1 in dx.terms.items():
                for (h2, z2), c2 in dy.terms.items():
                    W.add_into(raw, {(h1 + h2, z1 + z2): c1 * c2})
            assert N.coaction_delta(e, f, z.gen(x) * z.gen(y)) == N.reduce_tensor((h, z), raw)


# structural identities -----------------------------------------------------------------


@pytest.mark.parametrize("e,f", PAIRS, ids=PAIR_IDS)
def test_structural_identities_hold(e, f):
    assert N.verify_comodule_algebra(e, f).ok
    assert N.verify_right_comodule_algebra(e, f).ok
    assert N.hopf_structure_BE(e).ok
    assert N.gram_identities(e, f).ok
    assert N.canonical_preimage(e, f).ok


def test_comodule_identity_holds_without_trace_match():
    f = Mat(QQq, [[1, 2], [0, 1]])
    assert trace_invariant(f) != trace_invariant(EQ)
    assert N.verify_comodule_algebra(EQ, f).ok
    assert N.gram_identities(EQ, f).ok


def test_hopf_structure_of_identity_form():
    assert N.hopf_structure_BE(Mat.identity(QQ, 2)).ok


def test_canonical_preimage_images():
    v = N.canonical_preimage(EQ, EQ)
    assert v.details["images"][(1, 1)] == "a11 ⊗ 1"
    assert len(v.details["images"]) == 4


@pytest.mark.parametrize("e,f", PAIRS, ids=PAIR_IDS)
def test_negative_controls_fail(e, f):
    p = N.presentation_BEF(e, f)
    reversed_rel = N.with_reversed_relation(p, 1)
    v = N.verify_comodule_algebra(e, f, z_presentation=reversed_rel)
    assert not v.ok and v.failures
    assert not N.hopf_structure_BE(e, antipode="untransposed").checks["antipode_left"]
    flipped = N.presentation_BEF(e, Mat(f.field, [[-x for x in r] for r in f.to_rows()]))
    flipped = p.with_relations(flipped.relation_polys(), p.relation_names)
    assert not N.gram_identities(e, f, z_presentation=flipped).ok
    dropped = N.without_relations(p, f.rows ** 2)
    assert not N.canonical_preimage(e, f, z_presentation=dropped).ok


def test_reversed_relation_failure_names_it():
    p = N.presentation_BEF(EQ, EQ)
    v = N.verify_comodule_algebra(EQ, EQ, z_presentation=N.with_reversed_relation(p, 1))
    assert p.relation_names[1] in v.failures


# cotensor ------------------------------------------------------------------------------


def test_cotensor_degree1_is_spanned_by_w():
    r = N.cotensor_degree1(EQ, EQ)
    assert r.ok and r.dimension == 2
    assert r.basis == ("v1⊗z11 + v2⊗z21", "v1⊗z12 + v2⊗z22")


@pytest.mark.parametrize("e,f", PAIRS[1:], ids=PAIR_IDS[1:])
def test_cotensor_manageable(e, f):
    r = N.cotensor_degree1(e, f)
    assert r.ok and r.dimension == 2


def test_cotensor_degree0_is_zero():
    r = N.cotensor_degree1(EQ, EQ, degree=0)
    assert r.ok and r.dimension == 0 and r.basis == ()
