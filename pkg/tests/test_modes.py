from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affmta.modes import (
    Mode,
    ModeExpr,
    ad_action,
    affine_bracket,
    commutator,
    e,
    f,
    format_expr,
    h,
    parse_expr,
    pbw_normal,
)
from affmta.scalars import K, specialize_level
from affmta.sl2 import GENS

modes = st.builds(Mode, st.sampled_from(GENS), st.integers(-4, 4))
words = st.lists(modes, min_size=0, max_size=3).map(lambda w: ModeExpr.word(*w))


def test_hand_brackets():
    # [f(2), e(-2)] = -h(0) + 2 (f|e) K
    assert pbw_normal(affine_bracket(f(2), e(-2), 1), 1) == parse_expr("2 - h(0)", 1)
    assert format_expr(affine_bracket(f(2), e(-2), K)) == "2*k - h(0)"
    assert affine_bracket(h(3), h(-3), 1) == ModeExpr.scalar(6)
    assert affine_bracket(h(1), e(-2), 1) == ModeExpr.word(e(-1), coeff=2)
    assert affine_bracket(e(1), e(-1), K).is_zero()


@settings(max_examples=500)
@given(modes, modes, modes)
def test_bracket_antisymmetry_and_jacobi(x, y, z):
    assert pbw_normal(affine_bracket(x, y, K) + affine_bracket(y, x, K), K).is_zero()
    wx, wy, wz = (ModeExpr.word(m) for m in (x, y, z))
    jac = (
        commutator(wx, commutator(wy, wz, K), K)
        + commutator(wy, commutator(wz, wx, K), K)
        + commutator(wz, commutator(wx, wy, K), K)
    )
    assert pbw_normal(jac, K).is_zero()


@given(words, words)
def test_commutator_is_ab_minus_ba(a, b):
    assert pbw_normal(commutator(a, b, K) - (a * b - b * a), K).is_zero()


@given(words, words, words)
def test_pbw_normal_is_multiplicative_and_idempotent(a, b, c):
    ab = pbw_normal(a * b, K)
    assert pbw_normal(ab, K) == ab
    assert pbw_normal(pbw_normal(a * b, K) * c, K) == pbw_normal(a * pbw_normal(b * c, K), K)


@given(modes, words)
def test_ad_action_matches_commutator(x, w):
    assert pbw_normal(ad_action(x, w, K) - commutator(ModeExpr.word(x), w, K), K).is_zero()


@given(words)
def test_format_parse_round_trip(w):
    x = pbw_normal(w, 1)
    assert parse_expr(format_expr(x), 1) == x


def test_parser_features():
    env = {"r": 2, "s": 1}
    assert parse_expr("e(-(s+r))h(2*r)", 1, env) == ModeExpr.word(e(-3), h(4))
    assert parse_expr("[f(r), e(-r)]", 1, env) == parse_expr("2 - h(0)", 1)
    assert parse_expr("1/3 e(0)", 1) == ModeExpr.word(e(0), coeff=Fraction(1, 3))
    with pytest.raises(ValueError):
        parse_expr("h(1", 1)


def test_level_specialization_of_central_terms():
    x = pbw_normal(parse_expr("f(3)e(-3)", K), K)
    one = {w: specialize_level(c, 1) for w, c in x.items()}
    assert one[()] == 3
