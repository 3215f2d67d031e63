import pytest

from affmta import mta
from affmta.modes import ModeExpr, h, pbw_normal
from affmta.pbw import ZhuL10Elt
from affmta.report import FAILED, VERIFIED


def test_degree_one_unit_is_verified_and_idempotent():
    rep = mta.verify_strong_unit(1, mta.LITERAL)
    assert rep.status == VERIFIED
    assert len(rep.cases) == 30
    assert mta.unit_idempotent(1)


@pytest.mark.parametrize("term", [0, 1, 2])
def test_perturbations_are_caught_with_a_trace(term):
    rep = mta.verify_strong_unit(1, mta.LITERAL, perturb={term: 1})
    assert rep.status == FAILED
    bad = [c for c in rep.cases if c.status == FAILED]
    assert bad
    step = bad[0].first_divergence()
    assert step.label == "compare" and step.note.startswith("difference")


def test_unit_shape():
    assert [c for c, _, _ in mta.unit_terms(4)] == [
        mta.Fraction(1, 3), mta.Fraction(1, 3), mta.Fraction(1, 6),
        mta.Fraction(1, 8), mta.Fraction(1, 16), mta.Fraction(1, 8),
    ]
    assert len(mta.unit_terms(4, "unordered")) == 5
    with pytest.raises(ValueError):
        mta.unit_terms(0)


@pytest.mark.parametrize("d", [2, 3])
def test_central_term_in_trace(d):
    rep = mta.verify_strong_unit(d, mta.EXACT)
    vals = {s.after for c in rep.cases for s in c.trace if s.before == f"[f({d}), e(-{d})]" and "bracket" in s.label}
    assert vals == {f"{d} - h(0)"}


def test_reports_are_deterministic():
    a = mta.verify_strong_unit(2, mta.EXACT, "unordered").canonical_json()
    assert a == mta.verify_strong_unit(2, mta.EXACT, "unordered").canonical_json()


def test_every_non_verified_case_has_a_divergent_step():
    rep = mta.verify_strong_unit(2, mta.LITERAL)
    for c in rep.cases:
        assert (c.first_divergence() is None) == (c.status == VERIFIED)


def test_mismatched_regimes_do_not_mix():
    a = mta.build_strong_unit(1, regime=mta.LITERAL)
    b = mta.build_strong_unit(1, regime=mta.EXACT)
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(ValueError):
        mta.build_strong_unit(1, regime="Sloppy")


def test_quartic_bracket():
    # [h(2)h(1), h(-2)h(-1)] by hand: 4 h(1)h(-1) + 2 h(-2)h(2) at level 1
    want = pbw_normal(ModeExpr.word(h(1), h(-1), coeff=4) + ModeExpr.word(h(-2), h(2), coeff=2), 1)
    assert mta.bracket_hh_quartic(2, 1, 2, 1) == want
    assert want.coeff(()) == 8
    with pytest.raises(ValueError):
        mta.bracket_hh_quartic(2, 1, 1, 1)


def test_triple_bidegree():
    x = mta.MtaElt.triple(ModeExpr.word(h(-2)), ZhuL10Elt.basis("e"), ModeExpr.word(h(1), h(1)))
    assert x.bidegree == (2, 2)
