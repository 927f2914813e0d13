"""Tests for weylcheck.characters."""

import unittest
from fractions import Fraction
from math import gcd

from weylcheck.algebra import LaurentPoly, MultiPoly, RationalFunction
from weylcheck.characters import (
    ExplicitCharacter,
    char_L_at_1,
    character_of_L,
    character_of_standard,
    coerce_parameters,
    coinvariant_graded_character,
    coxeter_parameter,
    exterior_character,
    exterior_sum_series,
    fixed_dimension,
    graded_char_L,
    graded_char_standard,
    isotypic_series,
    kappa,
    lowest_h_eigenvalue,
    multiplicity_in_L,
    parameter_sum,
    perm_char_Q_mod,
)
from weylcheck.errors import UnsupportedParameter
from weylcheck.rootsystem import build_root_system, enumerate_weyl_group
from weylcheck.series import hilbert_L


class TestElementCharacters(unittest.TestCase):
    def setUp(self):
        self.rs = build_root_system("A", 2)
        self.group = enumerate_weyl_group(self.rs)

    def test_exterior_characters_of_identity(self):
        ident = self.group.identity
        self.assertEqual([exterior_character(self.rs, k, ident) for k in range(3)], [1, 2, 1])

    def test_exterior_character_of_reflection(self):
        s = self.group.generators[0]
        self.assertEqual([exterior_character(self.rs, k, s) for k in range(3)], [1, 0, -1])

    def test_exterior_degree_out_of_range(self):
        with self.assertRaises(ValueError):
            exterior_character(self.rs, 3, self.group.identity)

    def test_fixed_dimension(self):
        self.assertEqual(fixed_dimension((1, -2, 1)), 2)
        self.assertEqual(fixed_dimension((1, 0, -1)), 1)
        self.assertEqual(fixed_dimension((1, 1, 1)), 0)

    def test_perm_char_of_identity(self):
        self.assertEqual(perm_char_Q_mod(self.rs, self.group.identity, 4), 16)

    def test_perm_char_rejects_zero_modulus(self):
        with self.assertRaises(ValueError):
            perm_char_Q_mod(self.rs, self.group.identity, 0)

    def test_char_L_equals_fixed_points(self):
        for label, rank in [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3)]:
            rs = build_root_system(label, rank)
            for w in enumerate_weyl_group(rs):
                with self.subTest(type=rs.label, word=w.word):
                    self.assertEqual(char_L_at_1(rs, w), perm_char_Q_mod(rs, w, rs.h + 1))

    def test_char_L_equals_fixed_points_classical_series(self):
        for label, rank in [("C", 3), ("D", 4)]:
            rs = build_root_system(label, rank)
            for w in enumerate_weyl_group(rs):
                with self.subTest(type=rs.label, word=w.word):
                    self.assertEqual(char_L_at_1(rs, w), perm_char_Q_mod(rs, w, rs.h + 1))

    def test_char_L_equals_fixed_points_exceptional(self):
        for label, rank in [("F", 4), ("E", 6)]:
            rs = build_root_system(label, rank)
            q = rs.h + 1
            representatives = {}
            for w in enumerate_weyl_group(rs):
                representatives.setdefault(w.char_coefficients(), w)
            for coeffs, w in representatives.items():
                with self.subTest(type=rs.label, charpoly=coeffs):
                    self.assertEqual(gcd(w.order(limit=q * rs.h), q), 1)
                    self.assertEqual(char_L_at_1(rs, w), perm_char_Q_mod(rs, w, q))
                    self.assertEqual(char_L_at_1(rs, w), q ** fixed_dimension(coeffs))

    def test_char_L_palindromy(self):
        for label, rank in [("A", 2), ("B", 2), ("G", 2), ("A", 3)]:
            rs = build_root_system(label, rank)
            for w in enumerate_weyl_group(rs):
                with self.subTest(type=rs.label, word=w.word):
                    self.assertEqual(graded_char_L(rs, w).invert_t(), graded_char_L(rs, w.inverse()))

    def test_char_L_of_identity(self):
        self.assertEqual(char_L_at_1(self.rs, self.group.identity), 16)
        self.assertEqual(graded_char_L(self.rs, self.group.identity), hilbert_L(self.rs))

    def test_char_L_of_coxeter_element(self):
        # no fixed vectors: (h+1)^0 = 1
        self.assertEqual(char_L_at_1(self.rs, (1, 1, 1)), 1)


class TestParameters(unittest.TestCase):
    def test_symbolic_by_default(self):
        rs = build_root_system("B", 2)
        params = coerce_parameters(rs, None)
        self.assertEqual(set(params), {"c_s", "c_l"})
        self.assertFalse(params["c_s"].is_constant())

    def test_mapping_must_name_every_class(self):
        with self.assertRaises(UnsupportedParameter):
            coerce_parameters(build_root_system("B", 2), {"c_s": 1})

    def test_scalar_applies_to_every_class(self):
        params = coerce_parameters(build_root_system("G", 2), Fraction(1, 6))
        self.assertEqual(params["c_s"], params["c_l"])

    def test_coxeter_parameter(self):
        self.assertEqual(coxeter_parameter(build_root_system("B", 2)), Fraction(5, 4))
        self.assertEqual(coxeter_parameter(build_root_system("A", 2), 2), Fraction(7, 3))

    def test_kappa_of_exterior_powers(self):
        for label, rank in [("A", 2), ("B", 2), ("G", 2), ("A", 3)]:
            rs = build_root_system(label, rank)
            for k in range(rank + 1):
                with self.subTest(type=rs.label, k=k):
                    self.assertEqual(kappa(rs, k, 1), rs.h * k)

    def test_kappa_symbolic_b2(self):
        rs = build_root_system("B", 2)
        cs, cl = MultiPoly.variable(rs.parameter_names, "c_s"), MultiPoly.variable(rs.parameter_names, "c_l")
        self.assertEqual(kappa(rs, 2), (cs + cl) * 4)
        self.assertEqual(parameter_sum(rs), (cs + cl) * 2)

    def test_kappa_of_explicit_character(self):
        rs = build_root_system("A", 2)
        sign = ExplicitCharacter(1, {root: Fraction(-1) for root in rs.positive_roots})
        self.assertEqual(kappa(rs, sign, 1), 6)

    def test_lowest_eigenvalue_at_coxeter_parameter(self):
        rs = build_root_system("G", 2)
        c = coxeter_parameter(rs)
        for k in range(3):
            self.assertEqual(lowest_h_eigenvalue(rs, k, c), -rs.N + k * (rs.h + 1))


class TestGradedCharacters(unittest.TestCase):
    def test_alternating_sum_of_standard_characters(self):
        for label, rank in [("A", 2), ("B", 2), ("G", 2)]:
            rs = build_root_system(label, rank)
            group = enumerate_weyl_group(rs)
            for coeffs, _ in group.charpoly_census():
                w = next(g for g in group if g.char_coefficients() == coeffs)
                total = RationalFunction(0)
                for k in range(rank + 1):
                    term = graded_char_standard(rs, k, w)
                    total = total + (term if k % 2 == 0 else -term)
                with self.subTest(type=rs.label, coeffs=coeffs):
                    self.assertEqual(total, graded_char_L(rs, w))

    def test_symbolic_parameter_rejected(self):
        rs = build_root_system("A", 1)
        group = enumerate_weyl_group(rs)
        with self.assertRaises(UnsupportedParameter):
            graded_char_standard(rs, 1, group.identity, MultiPoly.variable(("c",), "c"))

    def test_non_integral_exponent_rejected(self):
        rs = build_root_system("A", 1)
        group = enumerate_weyl_group(rs)
        with self.assertRaises(UnsupportedParameter):
            graded_char_standard(rs, 0, group.identity, Fraction(1, 3))

    def test_character_objects(self):
        rs = build_root_system("A", 1)
        self.assertEqual(character_of_L(rs).hilbert_series(), LaurentPoly({-1: 1, 0: 1, 1: 1}))
        standard = character_of_standard(rs, 0)
        self.assertEqual(standard.hilbert_series(), RationalFunction(LaurentPoly.monomial(-1), LaurentPoly({0: 1, 1: -1})))

    def test_coinvariant_character_of_identity_is_poincare(self):
        rs = build_root_system("A", 2)
        group = enumerate_weyl_group(rs)
        series = coinvariant_graded_character(rs, group.identity)
        self.assertEqual(series, LaurentPoly.geometric(1) * LaurentPoly.geometric(2))
        self.assertEqual(series.value_at_one(), 6)

    def test_isotypic_series_follow_exponents(self):
        for label, rank in [("A", 2), ("B", 2), ("G", 2), ("A", 3)]:
            rs = build_root_system(label, rank)
            group = enumerate_weyl_group(rs)
            for k in range(rank + 1):
                with self.subTest(type=rs.label, k=k):
                    self.assertEqual(isotypic_series(rs, group, k), exterior_sum_series(rs, k))

    def test_exterior_sum_series(self):
        rs = build_root_system("B", 2)
        self.assertEqual(exterior_sum_series(rs, 1), LaurentPoly({1: 1, 3: 1}))
        self.assertEqual(exterior_sum_series(rs, 2), LaurentPoly.monomial(4))

    def test_multiplicities_in_L(self):
        rs = build_root_system("A", 1)
        group = enumerate_weyl_group(rs)
        self.assertEqual([multiplicity_in_L(rs, group, k) for k in range(2)], [2, 1])
        rs = build_root_system("A", 2)
        group = enumerate_weyl_group(rs)
        mults = [multiplicity_in_L(rs, group, k) for k in range(3)]
        self.assertTrue(all(m.denominator == 1 and m >= 0 for m in mults))
        self.assertEqual(mults[0] + 2 * mults[1] + mults[2], 16)


if __name__ == "__main__":
    unittest.main()
