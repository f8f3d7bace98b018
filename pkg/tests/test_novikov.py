import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perskt import (DomainError, DoubleExpPoly, NovikovPoly, in_image_qr,
                    qr_tilde, sigma_inverse)

from helpers import rand_poly

exponents = st.fractions(min_value=-8, max_value=8, max_denominator=6)
coefficients = st.integers(min_value=-4, max_value=4).filter(bool)
polys = st.dictionaries(exponents, coefficients, max_size=5).map(NovikovPoly)


def mono(e, c=1):
    return NovikovPoly.monomial(Fraction(e), c)


class TestPolyBasics:
    def test_cancellation(self):
        assert mono(1) - mono(2) + mono(2) == mono(1)

    def test_zero_identity(self):
        p = NovikovPoly([(Fraction(1, 2), 2), (3, -1)])
        assert NovikovPoly.zero() + p == p

    def test_like_terms(self):
        assert mono(Fraction(1, 2), 2) + mono(Fraction(1, 2), 3) == mono(Fraction(1, 2), 5)

    def test_monomial_product(self):
        assert mono(Fraction(1, 3)) * mono(Fraction(2, 3)) == mono(1)

    def test_unit(self):
        p = NovikovPoly([(0, 1), (Fraction(-1, 2), 4)])
        assert p * NovikovPoly.one() == p

    def test_square_expansion(self):
        u = NovikovPoly.one() - mono(1)
        assert u * u == NovikovPoly([(0, 1), (1, -2), (2, 1)])

    def test_eval_at_one_eight_term_example(self):
        p = NovikovPoly([(Fraction(1, 10), 1), (Fraction(7, 10), 3), (Fraction(11, 10), -2),
                         (Fraction(19, 10), 5), (Fraction(21, 10), 1), (Fraction(37, 10), 1),
                         (Fraction(49, 10), -5), (Fraction(57, 10), -4)])
        assert p.eval_at_one() == 0

    def test_eval_simple(self):
        assert mono(Fraction(5, 7)).eval_at_one() == 1
        assert (mono(2) - mono(5)).eval_at_one() == 0

    def test_length(self):
        assert (mono(0) - mono(3)).length() == 3
        assert mono(0, 7).length() == 0

    def test_length_product_rule_example(self):
        p = mono(1) - mono(2)
        q = mono(0, 2)
        assert (p * q).length() == p.length() * q.eval_at_one() + p.eval_at_one() * q.length() == 2

    def test_project_zero(self):
        assert mono(2).project_zero() == mono(2) - mono(0)
        member = mono(1) - mono(4)
        assert member.project_zero() == member
        assert mono(0, 3).project_zero() == NovikovPoly.zero()

    def test_invert_variable(self):
        assert mono(2).invert_variable() == mono(-2)
        p = rand_poly(random.Random(5))
        assert p.invert_variable().invert_variable() == p
        q = mono(-1, -1) + mono(1)
        assert q.invert_variable() == mono(1, -1) + mono(-1)

    def test_gap(self):
        assert (mono(-1, -1) + mono(1)).gap() == 1
        assert mono(0).gap() == 0
        assert NovikovPoly.zero().gap() == 0
        assert (mono(1) + mono(3)).gap() == 2

    def test_positive_mass(self):
        assert (mono(Fraction(-3, 2), -1) + mono(Fraction(3, 2))).positive_mass() == 1
        assert mono(0, 9).positive_mass() == 0
        assert (mono(1, 2) + mono(2, -3)).positive_mass() == 5

    def test_is_constant(self):
        assert mono(0, -4).is_constant()
        assert NovikovPoly.zero().is_constant()
        assert not (mono(1) - mono(-1)).is_constant()

    def test_negative_power_rejected(self):
        with pytest.raises(DomainError):
            mono(1) ** -1

    def test_json_round_trip(self):
        p = NovikovPoly([(Fraction(-1, 2), -1), (Fraction(1, 2), 1), (3, 4)])
        assert NovikovPoly.from_json(p.to_json()) == p
        assert p.to_json() == sorted(p.to_json(), key=lambda t: Fraction(t["exp"]))

    def test_str(self):
        assert str(mono(Fraction(-1, 2), -1) + mono(Fraction(1, 2))) == "-t^(-1/2) + t^(1/2)"
        assert str(NovikovPoly.zero()) == "0"


class TestRingAxioms:
    @given(polys, polys, polys)
    @settings(max_examples=100, deadline=None)
    def test_mul_associative_commutative_distributive(self, p, q, r):
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r

    @given(polys, polys)
    @settings(max_examples=100, deadline=None)
    def test_eval_at_one_is_ring_hom(self, p, q):
        assert (p * q).eval_at_one() == p.eval_at_one() * q.eval_at_one()
        assert (p + q).eval_at_one() == p.eval_at_one() + q.eval_at_one()

    @given(polys, polys)
    @settings(max_examples=100, deadline=None)
    def test_length_product_rule(self, p, q):
        assert (p * q).length() == p.length() * q.eval_at_one() + p.eval_at_one() * q.length()

    @given(polys, st.integers(min_value=0, max_value=5))
    @settings(max_examples=60, deadline=None)
    def test_length_power_rule(self, p, n):
        if n >= 1:
            assert (p ** n).length() == n * p.eval_at_one() ** (n - 1) * p.length()

    @given(polys, polys)
    @settings(max_examples=100, deadline=None)
    def test_invert_variable_automorphism(self, p, q):
        assert (p * q).invert_variable() == p.invert_variable() * q.invert_variable()
        assert (p + q).invert_variable() == p.invert_variable() + q.invert_variable()


class TestDoubleExp:
    def test_normal_form_difference(self):
        d = DoubleExpPoly.generator(1, 5) - DoubleExpPoly.generator(2, 7)
        assert d == DoubleExpPoly([(1, 2, 1), (5, 7, -1)])

    def test_normal_form_sum(self):
        d = DoubleExpPoly.generator(1, 5) + DoubleExpPoly.generator(2, 7)
        assert d.terms() == ((Fraction(1), Fraction(2), 1),
                             (Fraction(2), Fraction(5), 2),
                             (Fraction(5), Fraction(7), 1))

    def test_concatenation_relation(self):
        lhs = DoubleExpPoly.generator(0, 1) + DoubleExpPoly.generator(1, 3)
        assert lhs == DoubleExpPoly.generator(0, 3)

    def test_degenerate_interval_rejected(self):
        with pytest.raises(DomainError):
            DoubleExpPoly([(1, 1, 1)])

    def test_product_formula(self):
        s01 = DoubleExpPoly.generator(0, 1)
        assert s01 * s01 == DoubleExpPoly.generator(0, 1) - DoubleExpPoly.generator(1, 2)

    def test_product_zero(self):
        assert DoubleExpPoly.generator(0, 2) * DoubleExpPoly.zero() == DoubleExpPoly.zero()

    def test_product_alternate_form(self):
        # s^{a,b} s^{c,d} = s^{a+c,b+c} - s^{a+d,b+d} after normalization
        a, b, c, d = Fraction(0), Fraction(2), Fraction(1), Fraction(4)
        lhs = DoubleExpPoly.generator(a, b) * DoubleExpPoly.generator(c, d)
        rhs = DoubleExpPoly.generator(a + c, b + c) - DoubleExpPoly.generator(a + d, b + d)
        assert lhs == rhs

    def test_sigma(self):
        assert DoubleExpPoly.generator(0, 2).sigma() == mono(0) - mono(2)
        lhs = (DoubleExpPoly.generator(0, 1) + DoubleExpPoly.generator(1, 2)).sigma()
        assert lhs == DoubleExpPoly.generator(0, 2).sigma()

    def test_sigma_lands_in_ideal(self):
        rng = random.Random(11)
        for _ in range(50):
            d = DoubleExpPoly((a, a + Fraction(rng.randint(1, 8), 4), rng.randint(-3, 3))
                              for a in (Fraction(rng.randint(-8, 8), 4) for _ in range(4)))
            assert d.sigma().eval_at_one() == 0

    def test_sigma_multiplicative(self):
        x = DoubleExpPoly.generator(0, 1)
        assert (x * x).sigma() == x.sigma() * x.sigma()

    def test_sigma_inverse_base_case(self):
        assert sigma_inverse(mono(1) - mono(3)) == DoubleExpPoly.generator(1, 3)
        assert sigma_inverse(NovikovPoly.zero()) == DoubleExpPoly.zero()

    def test_sigma_inverse_round_trip(self):
        rng = random.Random(3)
        for _ in range(100):
            p = rand_poly(rng).project_zero()
            assert sigma_inverse(p).sigma() == p

    def test_sigma_inverse_rejects_nonideal(self):
        with pytest.raises(DomainError):
            sigma_inverse(mono(2))

    def test_json_round_trip(self):
        d = DoubleExpPoly.generator(Fraction(-1, 2), 3, 2) - DoubleExpPoly.generator(4, 5)
        assert DoubleExpPoly.from_json(d.to_json()) == d


class TestTruncationMaps:
    def test_qr_tilde(self):
        assert qr_tilde(mono(0), 1) == DoubleExpPoly.generator(0, 1)
        assert qr_tilde(NovikovPoly.zero(), 1) == DoubleExpPoly.zero()
        with pytest.raises(DomainError):
            qr_tilde(mono(0), 0)

    def test_sigma_qr_tilde_is_multiplication(self):
        rng = random.Random(7)
        for _ in range(100):
            p = rand_poly(rng)
            r = Fraction(rng.randint(1, 8), rng.randint(1, 4))
            assert qr_tilde(p, r).sigma() == p * (NovikovPoly.one() - mono(r))

    def test_in_image_qr_paper_example(self):
        p = NovikovPoly([(Fraction(1, 10), 1), (Fraction(7, 10), 3), (Fraction(11, 10), -2),
                         (Fraction(19, 10), 5), (Fraction(21, 10), 1), (Fraction(37, 10), 1),
                         (Fraction(49, 10), -5), (Fraction(57, 10), -4)])
        assert in_image_qr(p, 1)

    def test_in_image_qr_counterexample(self):
        assert not in_image_qr(mono(0) - mono(Fraction(1, 2)), 1)

    def test_in_image_qr_trivial_image(self):
        a, r = Fraction(5, 3), Fraction(2, 7)
        assert in_image_qr(mono(a) - mono(a + r), r)

    def test_in_image_qr_agrees_with_division(self):
        # brute-force oracle: repeatedly strip the least exponent via
        # n t^a = n (t^a - t^{a+r}) + n t^{a+r}
        def divides(p, r):
            limit = max(p.exponents(), default=Fraction(0))
            rem = p
            while rem:
                e, c = rem.terms()[0]
                if e > limit:
                    return False
                rem = rem - NovikovPoly.monomial(e, c) + NovikovPoly.monomial(e + r, c)
            return True

        rng = random.Random(19)
        for _ in range(300):
            p = rand_poly(rng, max_terms=6, denominator=12)
            r = Fraction(rng.randint(1, 6), rng.randint(1, 12))
            assert in_image_qr(p, r) == divides(p, r)
