import random
from fractions import Fraction

import pytest

from perskt import (Combination, DomainError, FieldSpec, FilteredComplex,
                    GradedBarcode, InputError, NovikovPoly, PairingTable,
                    TableGenerator, decompose, euler_alpha, is_r_acyclic,
                    is_r_isomorphism, kappa_direct, kappa_formula, kappa_table,
                    kclass, kq_r, random_chain_map, random_complex,
                    seminorm_witness, strong_seminorm_upper)

from helpers import rand_poly

F2 = FieldSpec(2)
F5 = FieldSpec(5)


def mono(e, c=1):
    return NovikovPoly.monomial(Fraction(e), c)


def plumbing_table(a: Fraction) -> PairingTable:
    barcode = GradedBarcode([(0, Fraction(0), a, 1), (0, Fraction(0), float("inf"), 1)])
    return PairingTable(1,
                        [TableGenerator("Z0", mono(0), 0), TableGenerator("Y", mono(0), 0)],
                        {("Z0", "Y"): barcode})


class TestClassesAndEuler:
    def test_elementary_classes(self):
        assert kclass(FilteredComplex.e1(Fraction(3, 4), 0)) == mono(Fraction(3, 4))
        assert kclass(FilteredComplex.e2(0, 2, 0)) == mono(0) - mono(2)

    def test_class_multiplicative_under_tensor(self):
        for seed in range(15):
            c = random_complex(seed, max_pieces=3)
            d = random_complex(seed + 40, max_pieces=3)
            assert kclass(c.tensor(d)) == kclass(c) * kclass(d)

    def test_euler_alpha(self):
        e2 = FilteredComplex.e2(1, 3, 0)
        assert euler_alpha(e2, 1) == 1
        assert euler_alpha(e2, 2) == 1
        assert euler_alpha(e2, 3) == 0
        assert euler_alpha(FilteredComplex.empty(), 0) == 0

    def test_euler_alpha_matches_chi_bar(self):
        for seed in range(15):
            c = random_complex(seed)
            chi = decompose(c).chi_bar()
            for g in c.generators:
                assert euler_alpha(c, g.filtration) == chi.value(g.filtration)


class TestAcyclicity:
    def test_elementary(self):
        assert is_r_acyclic(FilteredComplex.e2(0, 2, 0), 2)
        assert not is_r_acyclic(FilteredComplex.e2(0, 2, 0), 1)
        assert not is_r_acyclic(FilteredComplex.e1(0, 0), 100)
        assert is_r_acyclic(FilteredComplex.empty(), 0)

    def test_negative_threshold_rejected(self):
        with pytest.raises(DomainError):
            is_r_acyclic(FilteredComplex.empty(), -1)

    def test_r_isomorphism(self):
        c = random_complex(2)
        from perskt import FilteredChainMap
        assert is_r_isomorphism(FilteredChainMap.identity(c), 0)
        a, b = Fraction(1), Fraction(4)
        f = FilteredChainMap(FilteredComplex.e1(b, 0, gid="u"),
                             FilteredComplex.e1(a, 0, gid="v"), {"u": {"v": 1}})
        assert is_r_isomorphism(f, b - a)
        assert not is_r_isomorphism(f, b - a - Fraction(1, 100))
        zero = FilteredChainMap(FilteredComplex.e1(0, 0, gid="u"),
                                FilteredComplex.e1(0, 0, gid="v"), {})
        assert not is_r_isomorphism(zero, Fraction(1, 2))


class TestKappa:
    def test_formula_on_generators(self):
        rng = random.Random(51)
        for _ in range(20):
            a = Fraction(rng.randint(-8, 8), 4)
            c = Fraction(rng.randint(-8, 8), 4)
            assert kappa_formula(mono(a), mono(c)) == mono(c - a)

    def test_self_pairing_unit(self):
        assert kappa_formula(mono(0), mono(0)) == mono(0)

    def test_skew_symmetry(self):
        rng = random.Random(52)
        for _ in range(60):
            p, q = rand_poly(rng), rand_poly(rng)
            assert kappa_formula(p, q) == kappa_formula(q, p).invert_variable()

    def test_direct_on_free_generators(self):
        a, c = Fraction(1, 2), Fraction(9, 2)
        assert kappa_direct(FilteredComplex.e1(a, 0), FilteredComplex.e1(c, 0)) == mono(c - a)

    def test_direct_degree_sign(self):
        assert kappa_direct(FilteredComplex.e1(0, 0), FilteredComplex.e1(0, 1)) == mono(0, -1)

    def test_direct_agrees_with_formula(self):
        for seed in range(30):
            field = F2 if seed % 2 else F5
            c1 = random_complex(seed, max_pieces=3, field=field)
            c2 = random_complex(seed + 70, max_pieces=3, field=field)
            assert kappa_direct(c1, c2) == kappa_formula(kclass(c1), kclass(c2))

    def test_shift_action(self):
        c1, c2 = random_complex(3, max_pieces=2), random_complex(4, max_pieces=2)
        r = Fraction(3, 2)
        base = kappa_direct(c1, c2)
        assert kappa_direct(c1.shift(r), c2) == mono(-r) * base
        assert kappa_direct(c1, c2.shift(r)) == mono(r) * base

    def test_kq_r(self):
        a, r = Fraction(2, 3), Fraction(1, 2)
        assert kq_r(mono(a), r) == mono(a) - mono(a + r)
        assert kq_r(mono(a), 0) == NovikovPoly.zero()
        rng = random.Random(53)
        for _ in range(30):
            p = rand_poly(rng)
            assert kq_r(p, r) == p * (mono(0) - mono(r))


class TestPairingTable:
    def test_plumbing_example(self):
        for a in (Fraction(1, 2), Fraction(1), Fraction(7, 3)):
            table = plumbing_table(a)
            combo = Combination.parse("-Z0+Y")
            assert kappa_table(table, combo, combo) == mono(-a, -1) + mono(a)

    def test_diagonal_generator(self):
        table = PairingTable(2, [TableGenerator("L", mono(0), -2)], {})
        combo = Combination.parse("L")
        assert kappa_table(table, combo, combo) == mono(0, -2)

    def test_shift_translation_invariance(self):
        table = plumbing_table(Fraction(1, 2))
        plain = Combination.parse("-Z0+Y")
        moved = Combination.parse("-t^{5/4}*T^3 Z0+t^{5/4}*T^3 Y")
        assert kappa_table(table, moved, moved) == kappa_table(table, plain, plain)

    def test_unknown_generator(self):
        table = plumbing_table(Fraction(1))
        with pytest.raises(DomainError):
            kappa_table(table, Combination.parse("Q"), Combination.parse("Y"))

    def test_duality_violation_fails_fast(self):
        good = GradedBarcode([(0, Fraction(0), Fraction(1), 1)])
        bad = GradedBarcode([(0, Fraction(0), Fraction(2), 1)])
        with pytest.raises(DomainError):
            PairingTable(1, [TableGenerator("A", mono(0), 0), TableGenerator("B", mono(0), 0)],
                         {("A", "B"): good, ("B", "A"): bad})

    def test_diagonal_violation_fails_fast(self):
        wrong = GradedBarcode([(0, Fraction(0), float("inf"), 3)])
        with pytest.raises(DomainError):
            PairingTable(1, [TableGenerator("A", mono(0), 0)], {("A", "A"): wrong})

    def test_embeddedness_criterion(self):
        table = plumbing_table(Fraction(1, 2))
        combo = Combination.parse("-Z0+Y")
        assert not kappa_table(table, combo, combo).is_constant()
        single = PairingTable(3, [TableGenerator("L", mono(0), 2)], {})
        value = kappa_table(single, Combination.parse("L"), Combination.parse("L"))
        assert value.is_constant() and value == mono(0, -2)

    def test_json_round_trip(self):
        table = plumbing_table(Fraction(1, 2))
        again = PairingTable.from_json(table.to_json())
        assert again.to_json() == table.to_json()


class TestCombinationParsing:
    def test_simple(self):
        combo = Combination.parse("-Z0+Y")
        assert [(t.name, t.coeff) for t in combo.terms] == [("Z0", -1), ("Y", 1)]

    def test_full_grammar(self):
        combo = Combination.parse("2*t^{1/2}*T^2 L - t^(-1)*M")
        first, second = combo.terms
        assert (first.name, first.coeff, first.shift, first.translation) == \
            ("L", 2, Fraction(1, 2), 2)
        assert (second.name, second.coeff, second.shift, second.translation) == \
            ("M", -1, Fraction(-1), 0)

    def test_bad_expression(self):
        with pytest.raises(InputError):
            Combination.parse("2*")
        with pytest.raises(InputError):
            Combination.parse("")


class TestSeminormWitness:
    def test_weights_and_thresholds(self):
        for a in (Fraction(-1), Fraction(-3, 2)):
            for n in (1, 2, 4, 8):
                c0, phi, weight = seminorm_witness(a, n)
                assert weight == -a / n
                assert kclass(c0) == NovikovPoly.zero()
                assert phi.validate() == []
                assert is_r_isomorphism(phi, weight)
                assert not is_r_isomorphism(phi, weight / 2)

    def test_cone_pieces_have_small_gaps(self):
        c0, phi, weight = seminorm_witness(Fraction(-1), 4)
        for _, birth, death, _ in decompose(phi.cone()).bars():
            assert death - birth <= weight

    def test_preconditions(self):
        with pytest.raises(DomainError):
            seminorm_witness(0, 1)
        with pytest.raises(DomainError):
            seminorm_witness(-1, 0)

    def test_strong_upper(self):
        assert strong_seminorm_upper(-2) == 2
        assert strong_seminorm_upper(Fraction(-3, 2)) == Fraction(3, 2)
        assert strong_seminorm_upper(0) == 0
        assert strong_seminorm_upper(3) == 0
