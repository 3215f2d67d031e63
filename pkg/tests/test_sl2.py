from hypothesis import given
from hypothesis import strategies as st

from affmta.sl2 import E, F, GENS, H, LieElt, invariant_form, lie_bracket

coef = st.integers(-4, 4)
elts = st.builds(LieElt, coef, coef, coef)


def test_structure_constants():
    e, h, f = (LieElt.basis(g) for g in (E, H, F))
    assert lie_bracket(e, f) == h
    assert lie_bracket(h, e) == e.scale(2)
    assert lie_bracket(h, f) == f.scale(-2)
    assert invariant_form(e, f) == 1 and invariant_form(h, h) == 2 and invariant_form(e, e) == 0


@given(elts, elts, elts)
def test_lie_axioms(x, y, z):
    assert lie_bracket(x, y) == lie_bracket(y, x).scale(-1)
    jac = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) + lie_bracket(z, lie_bracket(x, y))
    assert jac.is_zero()


@given(elts, elts, elts)
def test_form_is_invariant_and_symmetric(x, y, z):
    assert invariant_form(lie_bracket(x, y), z) == invariant_form(x, lie_bracket(y, z))
    assert invariant_form(x, y) == invariant_form(y, x)


def test_weights():
    assert [g.weight for g in GENS] == [2, 0, -2]
