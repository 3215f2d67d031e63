from hypothesis import given
from hypothesis import strategies as st

from affmta.pbw import PbwElt, parse_pbw
from affmta.scalars import K
from affmta.sl2 import GENS, Gen
from affmta.vacuum import A1Elt, a1_basis, a1_star, bracket_pairing

gens = st.sampled_from(GENS)


def test_pairing_table():
    assert bracket_pairing(Gen.E, Gen.F) == parse_pbw("h + k")
    assert bracket_pairing(Gen.F, Gen.E) == parse_pbw("k - h")
    assert bracket_pairing(Gen.H, Gen.H) == parse_pbw("2k")
    assert bracket_pairing(Gen.H, Gen.E) == parse_pbw("2e")
    assert bracket_pairing(Gen.E, Gen.E) == PbwElt()
    assert bracket_pairing(Gen.E, Gen.F, 1) == parse_pbw("h + 1")


@given(gens, gens)
def test_pairing_symmetric_part_is_the_form(a, b):
    s = bracket_pairing(a, b) + bracket_pairing(b, a)
    assert s == PbwElt.scalar(2 * K * (2 if a == b == Gen.H else 1 if {a, b} == {Gen.E, Gen.F} else 0))


triples = st.builds(lambda a, b, c: A1Elt.triple(a, c, b), gens, gens, st.integers(-2, 2))


@given(triples, triples, triples)
def test_a1_star_is_associative(x, y, z):
    assert a1_star(a1_star(x, y), z) == a1_star(x, a1_star(y, z))


def test_a1_basis_size():
    assert len(a1_basis()) == 9
