"""Tests for weylcheck.dunkl -- Dunkl operators and the contravariant form."""

import random
import unittest
from fractions import Fraction

from weylcheck.algebra import MultiPoly
from weylcheck.characters import coxeter_parameter
from weylcheck.cherednik import pbw_normal_form
from weylcheck.dunkl import (
    DunklContext,
    coinvariant_image_check,
    commutativity_check,
    consistency_check,
    contravariant_form_rank,
    contravariant_ranks,
    discriminant,
    dunkl_apply,
    euler_eigenvalue,
    expected_L_dimensions,
    gram_matrix,
    h_grading_check,
    random_polynomial,
    sign_project,
)
from weylcheck.errors import DegreeBudgetExceeded, UnsupportedParameter
from weylcheck.rootsystem import build_root_system, enumerate_weyl_group


class TestDunklOperators(unittest.TestCase):
    def test_a1_formula(self):
        ctx = DunklContext(build_root_system("A", 1), Fraction(3, 2))
        x = MultiPoly.variable(ctx.variables, 0)
        self.assertEqual(ctx.apply(0, x ** 2), x * 2)
        # odd powers pick up the reflection term: (k - 2c) x^(k-1)
        self.assertEqual(ctx.apply(0, x ** 3), MultiPoly.zero(ctx.variables))
        self.assertEqual(ctx.apply(0, x), MultiPoly.constant(ctx.variables, -2))

    def test_symbolic_parameters_rejected(self):
        with self.assertRaises(UnsupportedParameter):
            DunklContext(build_root_system("A", 2))

    def test_default_degree_cap(self):
        ctx = DunklContext(build_root_system("B", 2), 1)
        self.assertEqual(ctx.degree_cap, 9)

    def test_vector_argument(self):
        ctx = DunklContext(build_root_system("A", 2), Fraction(1, 5))
        f = random_polynomial(ctx.variables, random.Random(5), max_degree=3)
        combined = dunkl_apply(ctx, [Fraction(1), Fraction(2)], f)
        self.assertEqual(combined, dunkl_apply(ctx, 0, f) + dunkl_apply(ctx, 1, f) * 2)

    def test_commuting_and_consistent(self):
        rng = random.Random(1729)
        for label, rank in [("A", 1), ("A", 2), ("B", 2), ("G", 2)]:
            rs = build_root_system(label, rank)
            for _ in range(3):
                ctx = DunklContext(rs, Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
                for _ in range(5):
                    f = random_polynomial(ctx.variables, rng)
                    with self.subTest(type=rs.label, c=ctx.c):
                        self.assertTrue(commutativity_check(ctx, f))
                        self.assertTrue(consistency_check(ctx, f))

    def test_two_parameter_b2(self):
        ctx = DunklContext(build_root_system("B", 2), {"c_s": Fraction(1, 3), "c_l": Fraction(-2, 7)})
        f = random_polynomial(ctx.variables, random.Random(2), max_degree=5)
        self.assertTrue(commutativity_check(ctx, f))
        self.assertTrue(consistency_check(ctx, f))

    def test_euler_grading(self):
        rs = build_root_system("A", 2)
        ctx = DunklContext(rs, Fraction(1, 3))
        self.assertEqual(euler_eigenvalue(ctx, 4), 4)
        x1, x2 = (MultiPoly.variable(ctx.variables, i) for i in range(2))
        self.assertTrue(h_grading_check(ctx, x1 ** 2 * x2 - x2 ** 3))

    def test_euler_grading_needs_homogeneous(self):
        ctx = DunklContext(build_root_system("A", 1), Fraction(1, 2))
        x = MultiPoly.variable(ctx.variables, 0)
        with self.assertRaises(ValueError):
            h_grading_check(ctx, x + 1)

    def test_pbw_elements_act_as_composites(self):
        rs = build_root_system("B", 2)
        ctx = DunklContext(rs, Fraction(2, 3))
        f = random_polynomial(ctx.variables, random.Random(9), max_degree=3)
        element = pbw_normal_form(ctx.frame, "y1 x2")
        x2 = MultiPoly.variable(ctx.variables, 1)
        self.assertEqual(ctx.act(element, f), ctx.apply(0, x2 * f))


class TestContravariantForm(unittest.TestCase):
    def test_expected_dimensions(self):
        self.assertEqual(expected_L_dimensions(2, 3), [1, 2, 3, 4, 3, 2, 1])
        self.assertEqual(expected_L_dimensions(1, 2), [1, 1, 1])

    def test_a1(self):
        ctx = DunklContext(build_root_system("A", 1), Fraction(3, 2))
        self.assertEqual(contravariant_ranks(ctx), [1, 1, 1, 0])

    def test_ranks_give_hilbert_series_of_L(self):
        for label, rank in [("A", 2), ("B", 2), ("G", 2)]:
            rs = build_root_system(label, rank)
            ctx = DunklContext(rs, coxeter_parameter(rs))
            expected = expected_L_dimensions(rank, rs.h) + [0]
            with self.subTest(type=rs.label):
                self.assertEqual(contravariant_ranks(ctx), expected)

    def test_generic_parameter_has_full_rank(self):
        ctx = DunklContext(build_root_system("A", 2), Fraction(1, 7))
        self.assertEqual(contravariant_form_rank(ctx, 3), 4)

    def test_degree_cap(self):
        ctx = DunklContext(build_root_system("A", 2), 1, degree_cap=3)
        gram_matrix(ctx, 3)
        with self.assertRaises(DegreeBudgetExceeded) as raised:
            gram_matrix(ctx, 4)
        self.assertEqual(raised.exception.budget, "degree_cap")


class TestCoinvariantImage(unittest.TestCase):
    def test_discriminant_is_anti_invariant(self):
        rs = build_root_system("B", 2)
        group = enumerate_weyl_group(rs)
        ctx = DunklContext(rs, coxeter_parameter(rs))
        delta = discriminant(ctx.frame)
        self.assertEqual(delta.degree(), rs.N)
        self.assertEqual(sign_project(ctx.frame, group, delta), delta)

    def test_sign_projection_kills_invariants(self):
        rs = build_root_system("A", 2)
        group = enumerate_weyl_group(rs)
        ctx = DunklContext(rs, 1)
        x1, x2 = (MultiPoly.variable(ctx.variables, i) for i in range(2))
        quadratic = x1 ** 2 + x1 * x2 + x2 ** 2
        self.assertTrue(sign_project(ctx.frame, group, quadratic).is_zero())

    def test_image_is_the_coinvariant_algebra(self):
        for label, rank in [("A", 1), ("A", 2), ("B", 2)]:
            rs = build_root_system(label, rank)
            group = enumerate_weyl_group(rs)
            report = coinvariant_image_check(DunklContext(rs, coxeter_parameter(rs)), group)
            with self.subTest(type=rs.label):
                self.assertTrue(report.passed, report.to_dict())
                self.assertEqual(report.graded_dimensions.value_at_one(), group.order)


if __name__ == "__main__":
    unittest.main()
