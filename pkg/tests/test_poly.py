from hypothesis import given, strategies as st

from knotmosaic.poly import LaurentPoly

polys = st.dictionaries(st.integers(-6, 6), st.integers(-9, 9), max_size=5).map(LaurentPoly)


def test_text_round_trip_and_zero():
    p = LaurentPoly({-1: 1, 0: -1, 1: 1})
    assert p.to_text() == "1*t^-1 + -1*t^0 + 1*t^1"
    assert LaurentPoly.from_text(p.to_text()) == p
    assert LaurentPoly({3: 0}) == LaurentPoly()


def test_evaluate_and_invert():
    p = LaurentPoly({1: 1, 3: 1, 4: -1})
    assert p(1) == 1
    assert p(-1) == -3
    assert p.invert_variable() == LaurentPoly({-1: 1, -3: 1, -4: -1})


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - a) == LaurentPoly()


@given(polys, st.integers(-4, 4))
def test_shift_is_monomial_product(a, k):
    assert a.shift(k) == a * LaurentPoly({k: 1})
