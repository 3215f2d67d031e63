import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from affmta.l10 import (
    KINDS,
    STRATEGIES,
    LoopElt,
    check_h4,
    derive_literal_table,
    involution_alpha,
    literal_table_entry,
    reduce_paper,
    sym,
)
from affmta.modes import Mode, ModeExpr, e, f, h
from affmta.sl2 import GENS

syms = st.builds(sym, st.sampled_from(KINDS), st.integers(-4, 4))
loop = st.lists(st.tuples(syms, st.integers(-2, 2)), min_size=1, max_size=3).map(
    lambda ts: sum((LoopElt.basis(s, c) for s, c in ts), LoopElt())
)
modes = st.builds(Mode, st.sampled_from(GENS), st.integers(-4, 4))


def test_ee_and_ff_vanish():
    for m, n in itertools.product(range(-10, 11), repeat=2):
        assert not reduce_paper(ModeExpr.word(e(m), e(n)))
        assert not reduce_paper(ModeExpr.word(f(m), f(n)))


def test_table_matches_letter_rules():
    for k1, k2 in itertools.product(KINDS, repeat=2):
        for m, n in itertools.product(range(-2, 3), repeat=2):
            s1, s2 = sym(k1, m), sym(k2, n)
            assert literal_table_entry(s1, s2) == derive_literal_table(s1, s2), (s1, s2)


def test_hand_values():
    assert reduce_paper(ModeExpr.word(e(1), h(2))) == LoopElt.basis(sym("E", 3), -1)
    assert reduce_paper(ModeExpr.word(h(1), e(2))) == LoopElt.basis(sym("E", 3))
    assert reduce_paper(ModeExpr.word(h(1), h(2))) == LoopElt.basis(sym("H2", 3))


@settings(max_examples=500)
@given(loop, loop, loop)
def test_product_is_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@settings(max_examples=200)
@given(st.lists(modes, min_size=4, max_size=4))
def test_confluence_on_four_letter_words(w):
    x = ModeExpr.word(*w)
    results = {str(reduce_paper(x, strategy=s)) for s in STRATEGIES}
    assert len(results) == 1


@given(st.lists(modes, max_size=4))
def test_alpha_is_an_involution_preserving_the_rules(w):
    x = ModeExpr.word(*w)
    assert involution_alpha(involution_alpha(x)) == x


@settings(max_examples=60)
@given(*[st.integers(-3, 3)] * 7)
def test_h4(a, b, c, d, r, s, t):
    rep = check_h4(a, b, c, d, r, s, t)
    assert rep.status == "verified"
    assert len(rep.cases[0].trace) == 5
