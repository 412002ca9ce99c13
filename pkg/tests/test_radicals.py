from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from evograph.radicals import Radical, RadicalSum

F = Fraction

rationals = st.fractions(min_value=-50, max_value=50).filter(lambda q: q != 0)
positive_rationals = st.fractions(min_value=F(1, 20), max_value=50)


def test_cube_root_normal_form():
    r = Radical.root(F(1, 4), 3)
    assert r.coeff == F(1, 2) and r.parts == ((2, F(1, 3)),)
    assert r == Radical.root(2, 3).inverse() ** 2
    assert abs(float(r) - 0.25 ** (1 / 3)) < 1e-12


def test_known_constants():
    assert Radical.root(F(1, 2), 3) == Radical(F(1, 2), ((2, F(2, 3)),))
    # 1/sqrt(6) factors over both prime bases
    inv_sqrt6 = Radical.root(F(1, 6), 2)
    assert inv_sqrt6.parts == ((2, F(1, 2)), (3, F(1, 2)))
    assert inv_sqrt6.coeff == F(1, 6)


def test_even_root_of_negative_rejected():
    with pytest.raises(ValueError):
        Radical.root(F(-4), 2)
    assert Radical.root(F(-8), 3) == Radical.from_rational(-2)


def test_nth_root_of_radical():
    r = Radical.root(2, 3).nth_root(2)
    assert r.parts == ((2, F(1, 6)),)
    assert (r ** 6).as_rational() == 2


@settings(max_examples=300, deadline=None)
@given(rationals)
def test_cube_root_cubes_back(q):
    assert (Radical.root(q, 3) ** 3).as_rational() == q


@settings(max_examples=300, deadline=None)
@given(positive_rationals, st.integers(min_value=1, max_value=5))
def test_roots_invert_powers(q, n):
    r = Radical.root(q, n)
    assert (r ** n).as_rational() == q
    assert r.nth_root(2) ** 2 == r


@settings(max_examples=200, deadline=None)
@given(rationals, rationals)
def test_multiplication_matches_floats(a, b):
    x = Radical.root(abs(a), 3) * Radical.root(abs(b), 2)
    assert abs(float(x) - abs(a) ** (1 / 3) * abs(b) ** 0.5) < 1e-9 * max(1.0, abs(float(x)))


@settings(max_examples=200, deadline=None)
@given(rationals)
def test_parse_round_trip(q):
    r = Radical.root(q, 3) * Radical.root(abs(q), 2)
    assert Radical.parse(str(r)) == r


class TestRadicalSum:
    def test_cancellation(self):
        x = RadicalSum.from_radical(Radical.root(F(1, 4), 3))
        assert (x - x).is_zero

    def test_independent_parts_never_cancel(self):
        s = RadicalSum.from_radical(Radical.root(2, 3)) + RadicalSum.from_radical(
            Radical.root(3, 3)
        )
        assert not s.is_zero and not s.is_single_term()

    def test_product_distributes(self):
        a = RadicalSum.from_radical(Radical.root(2, 3)) + RadicalSum.from_rational(1)
        b = RadicalSum.from_radical(Radical.root(2, 3)) - RadicalSum.from_rational(1)
        prod = a * b
        # (c + 1)(c - 1) = c^2 - 1 with c = 2^(1/3)
        expected = RadicalSum.from_radical(Radical(F(1), ((2, F(2, 3)),))) - RadicalSum.from_rational(1)
        assert prod == expected

    def test_as_radical_requires_single_term(self):
        s = RadicalSum.from_rational(2) + RadicalSum.from_radical(Radical.root(5, 2))
        with pytest.raises(ValueError):
            s.as_radical()

    @settings(max_examples=100, deadline=None)
    @given(rationals, rationals)
    def test_float_agreement(self, a, b):
        s = RadicalSum.from_radical(Radical.root(abs(a), 3)) + RadicalSum.from_rational(b)
        assert abs(float(s) - (abs(a) ** (1 / 3) + float(b))) < 1e-9 * max(1.0, abs(float(s)))
