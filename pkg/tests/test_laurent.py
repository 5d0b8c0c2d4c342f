import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kldecomp.laurent import LaurentPolynomial, auto_q_display, q_to_t, t_to_q


def lp(coeffs):
    return LaurentPolynomial(coeffs)


polys = st.dictionaries(st.integers(-8, 8), st.integers(-9, 9), max_size=6).map(lp)
plain_polys = st.dictionaries(st.integers(0, 8), st.integers(-9, 9), max_size=6).map(lp)


class TestArithmetic:
    def test_canonical_form_drops_zeros(self):
        assert lp({2: 0, 0: 1}) == lp({0: 1})
        assert not lp({3: 0})

    def test_unit(self):
        p = lp({0: 1, 2: 1})
        assert p * LaurentPolynomial.one() == p

    def test_monomial_shift_product(self):
        assert lp({1: 1, -1: 1}) * lp({1: 1}) == lp({2: 1, 0: 1})

    def test_cube_of_one_plus_t(self):
        # expanded by repeated multiplication
        p = lp({0: 1, 1: 1})
        assert p * p * p == lp({0: 1, 1: 3, 2: 3, 3: 1})
        assert p**3 == p * p * p

    def test_int_mixing(self):
        p = lp({1: 2})
        assert p + 1 == lp({0: 1, 1: 2})
        assert 1 - p == lp({0: 1, 1: -2})
        assert 3 * p == lp({1: 6})
        assert sum([p, p]) == lp({1: 4})

    def test_eq_and_hash_against_ints(self):
        assert lp({}) == 0
        assert lp({0: 5}) == 5
        assert lp({1: 1}) != 1
        assert hash(lp({0: 5})) == hash(5)

    def test_evaluate(self):
        from fractions import Fraction

        p = lp({-1: 1, 2: 3})
        assert p.evaluate(1) == 4
        assert p.evaluate(2) == Fraction(25, 2)
        assert lp({0: 2, 3: 1}).evaluate(2) == 10
        with pytest.raises(ZeroDivisionError):
            p.evaluate(0)

    @given(polys, polys, polys)
    @settings(max_examples=80, deadline=None)
    def test_ring_axioms(self, p, r, s):
        assert (p + r) + s == p + (r + s)
        assert p + r == r + p
        assert (p * r) * s == p * (r * s)
        assert p * r == r * p
        assert p * (r + s) == p * r + p * s


class TestOperators:
    def test_shift(self):
        assert LaurentPolynomial.one().shift(3) == lp({3: 1})
        assert lp({-1: 1, 1: 1}).shift(1) == lp({0: 1, 2: 1})

    @given(polys, st.integers(-5, 5))
    @settings(max_examples=60, deadline=None)
    def test_shift_inverse_and_module_action(self, p, k):
        assert p.shift(k).shift(-k) == p
        r = lp({0: 1, 2: -3})
        assert (p * r).shift(k) == p.shift(k) * r

    def test_truncate_nonnegative(self):
        assert lp({-2: 1, 0: 1, 1: 1}).truncate_nonnegative() == lp({0: 1, 1: 1})
        assert lp({-3: 1}).truncate_nonnegative() == 0
        p = lp({0: 2, 3: 1})
        assert p.truncate_nonnegative() == p

    def test_truncate_at_least(self):
        assert lp({0: 1, 2: 1}).truncate_at_least(2) == lp({2: 1})
        assert lp({0: 1}).truncate_at_least(1) == 0
        p = lp({0: 4, 1: 1})
        assert p.truncate_at_least(0) == p
        with pytest.raises(ValueError):
            p.truncate_at_least(-1)
        with pytest.raises(ValueError):
            lp({-1: 1}).truncate_at_least(1)

    def test_symmetrize(self):
        assert lp({0: 1}).symmetrized() == lp({0: 1})
        assert lp({1: 1}).symmetrized() == lp({1: 1, -1: 1})
        assert lp({0: 2, 2: 3}).symmetrized() == lp({-2: 3, 0: 2, 2: 3})
        with pytest.raises(ValueError):
            lp({-1: 1}).symmetrized()

    @given(plain_polys)
    @settings(max_examples=60, deadline=None)
    def test_symmetrize_palindromic_and_sections_back(self, p):
        s = p.symmetrized()
        assert s.is_palindromic_about(0)
        assert s.truncate_nonnegative() == p

    def test_q_t_conversions(self):
        assert q_to_t(lp({0: 1, 1: 1})) == lp({0: 1, 2: 1})
        assert t_to_q(lp({0: 1, 2: 1})) == lp({0: 1, 1: 1})
        with pytest.raises(ValueError):
            t_to_q(lp({0: 1, 1: 1}))

    @given(polys)
    @settings(max_examples=60, deadline=None)
    def test_q_t_roundtrip(self, p):
        assert t_to_q(q_to_t(p)) == p


class TestRendering:
    def test_q_display(self):
        assert lp({0: 1, 1: 3, 2: 1}).render("q") == "1 + 3*q + q^2"

    def test_t_display_with_negative_exponents(self):
        assert lp({-2: 1, 0: 1, 2: 1}).render("t") == "t^-2 + 1 + t^2"

    def test_zero_and_signs(self):
        assert lp({}).render() == "0"
        assert lp({0: 1, 1: -1}).render("q") == "1 - q"
        assert lp({1: -1}).render("q") == "-q"
        assert lp({0: 1, 1: 1}).render("q", compact=True) == "1+q"

    def test_coeffs_json_roundtrip(self):
        p = lp({-2: 1, 3: -4})
        assert LaurentPolynomial.from_coeffs_json(p.coeffs_json()) == p

    def test_auto_q_display(self):
        var, shown = auto_q_display(lp({0: 1, 2: 1}))
        assert (var, shown) == ("q", lp({0: 1, 1: 1}))
        var, shown = auto_q_display(lp({1: 1}))
        assert (var, shown) == ("t", lp({1: 1}))
