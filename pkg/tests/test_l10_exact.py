from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from affmta.l10_exact import (
    audit_relations,
    chain_value,
    ee_relation,
    exact_ideal,
    ff_relation,
    first_rel_exact,
    first_rel_displayed,
    literal_rule,
    second_rel_exact,
    second_rel_displayed,
    third_rel_exact,
    unit_certificate,
)
from affmta.modes import ModeExpr, affine_bracket, e, f, h, pbw_normal

idx = st.integers(-3, 3)


def _first_rel_by_hand(k, n1, n2):
    """[f(k), e(n1)e(n2)] = [f(k), e(n1)] e(n2) + e(n1) [f(k), e(n2)]."""
    a = affine_bracket(f(k), e(n1), 1) * ModeExpr.word(e(n2))
    b = ModeExpr.word(e(n1)) * affine_bracket(f(k), e(n2), 1)
    return pbw_normal(a + b, 1)


def test_ideal_contains_one():
    # three firstRel instances give e(2); the central terms at k + n = 0 carry it
    e2 = (
        _first_rel_by_hand(-2, 2, 2).scale(Fraction(-1, 2))
        + _first_rel_by_hand(-1, 1, 2)
        + _first_rel_by_hand(0, 1, 1).scale(Fraction(-1, 2))
    )
    assert e2 == ModeExpr.word(e(2))
    step = pbw_normal(affine_bracket(f(-2), e(2), 1), 1)
    assert step == ModeExpr.scalar(-2) - ModeExpr.word(h(0))
    # ad f(0) ad e(0) of -h(0) - 2 is -2h(0), so 2 and then 1 lie in the ideal
    assert pbw_normal(affine_bracket(f(0), e(0), 1).scale(2), 1) == ModeExpr.word(h(0), coeff=-2)
    assert chain_value(unit_certificate()) == ModeExpr.scalar(1)


@given(idx, idx)
def test_ee_ff_chains_replay(a, b):
    assert ee_relation(a, b).replay()
    assert ff_relation(a, b).replay()


@settings(max_examples=60)
@given(idx, idx, idx)
def test_first_rel_matches_hand_expansion(k, n1, n2):
    rel = first_rel_exact(k, n1, n2)
    assert rel.replay()
    assert pbw_normal(rel.element() - _first_rel_by_hand(k, n1, n2), 1).is_zero()


@settings(max_examples=60)
@given(idx, idx, idx)
def test_displayed_first_rel_is_exact_up_to_sign_off_the_central_locus(k, n1, n2):
    if 0 in (k + n1, k + n2):
        return
    exact = first_rel_exact(k, n1, n2).element()
    assert pbw_normal(exact + first_rel_displayed(k, n1, n2), 1).is_zero()


@settings(max_examples=40)
@given(idx, idx, idx, idx)
def test_displayed_second_rel_is_exact_up_to_sign_off_the_central_locus(l, k, n1, n2):
    if 0 in (k + n1, k + n2, l + n1, l + n2, l + k + n1 + n2):
        return
    exact = second_rel_exact(l, k, n1, n2).element()
    assert pbw_normal(exact + second_rel_displayed(l, k, n1, n2), 1).is_zero()


def test_third_rel_diagonal():
    for k, r in ((1, 1), (2, -1), (1, 0)):
        got = pbw_normal(third_rel_exact(k, k, k, r, r).element(), 1)
        want = pbw_normal(ModeExpr.word(h(k + r), f(2 * k + r), coeff=12) + ModeExpr.word(f(3 * k + 2 * r), coeff=12), 1)
        assert got == want


def test_exact_ideal_is_consistent():
    ideal = exact_ideal(3)
    assert not ideal.reduce(ModeExpr.scalar(1)).is_zero()
    assert not ideal.reduce(ModeExpr.word(e(0))).is_zero()
    assert ideal.reduce(ModeExpr.word(e(1), e(2))).is_zero()
    assert ideal.reduce(literal_rule("eh", 1, 2).element()).is_zero()
    assert not ideal.reduce(literal_rule("eh", -1, 0).element()).is_zero()


def test_audit_is_deterministic_and_job_independent():
    a = audit_relations(3).canonical_json()
    assert a == audit_relations(3).canonical_json()
    assert a == audit_relations(3, jobs=2).canonical_json()
