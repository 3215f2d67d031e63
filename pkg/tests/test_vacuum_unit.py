from fractions import Fraction

import pytest

from affmta.pbw import parse_pbw
from affmta.report import INCONCLUSIVE, VERIFIED
from affmta.scalars import K
from affmta.sl2 import Gen
from affmta.vacuum_unit import action_form, nonexistence_certificate, vacuum_constraints


def test_constraint_for_e():
    eq = vacuum_constraints().equation("e", "e")
    assert dict(eq.terms) == {"c_fe": parse_pbw("h + k"), "c_he": parse_pbw("-2 e")}
    assert eq.rhs == 1


def test_renaming_does_not_change_the_system():
    sys = vacuum_constraints()
    renamed = sys.rename({u: f"x{i}" for i, u in enumerate(sys.unknowns)})
    assert renamed.canonical() == sys.canonical()
    assert renamed.render() != sys.render()


def test_action_form_of_e():
    form = action_form(Gen.E)
    assert form["nu"] == parse_pbw("k - h") and form["lambda"] == parse_pbw("2 e")
    assert "mu" not in form


@pytest.mark.parametrize("level", [K, 0, 1, 5, Fraction(-1, 2)])
def test_certificate(level):
    rep = nonexistence_certificate(level, samples=50)
    assert rep.status == VERIFIED, rep.summary()


def test_certificate_at_minus_two_is_inconclusive():
    rep = nonexistence_certificate(-2, samples=10)
    steps = [s for c in rep.cases for s in c.trace if s.status == INCONCLUSIVE]
    assert [s.label for s in steps] == ["lin8 -> lin9"]
