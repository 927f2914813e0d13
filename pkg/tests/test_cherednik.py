"""Tests for weylcheck.cherednik -- H_c relations, PBW normal form, sl2-triple."""

import random
import unittest
from fractions import Fraction

from weylcheck.algebra import MultiPoly
from weylcheck.cherednik import (
    GroupAlgebraElement,
    HcElement,
    casimir_elements,
    commutator,
    commutator_yx,
    frame_for_root_system,
    is_central,
    kappa_element,
    letter_element,
    parse_word,
    pbw_normal_form,
    sign_idempotent,
    sl2_closure_check,
    trivial_idempotent,
    trivial_module_check,
    type_b_frame,
)
from weylcheck.errors import DegreeBudgetExceeded, UnsupportedParameter
from weylcheck.rootsystem import build_root_system, enumerate_weyl_group


def _random_letters(frame, rng, size):
    letters = []
    for _ in range(size):
        kind = rng.choice("xyw")
        if kind == "w":
            letters.append(("w", rng.choice(frame.generators)))
        else:
            letters.append((kind, rng.randrange(frame.rank)))
    return letters


class TestDefiningRelations(unittest.TestCase):
    def test_a1_commutator(self):
        frame = frame_for_root_system(build_root_system("A", 1))
        c = MultiPoly.variable(("c",), "c")
        (s,) = frame.generators
        expected = HcElement.one(frame) - HcElement.group(frame, s).scale(c * 2)
        self.assertEqual(commutator_yx(frame, 0, 0), expected)

    def test_commutator_matches_product(self):
        frame = frame_for_root_system(build_root_system("B", 2))
        for i in range(2):
            for j in range(2):
                with self.subTest(i=i, j=j):
                    got = commutator(HcElement.y(frame, i), HcElement.x(frame, j))
                    self.assertEqual(got, commutator_yx(frame, i, j))

    def test_half_sum_over_all_roots(self):
        frame = frame_for_root_system(build_root_system("G", 2))
        for i in range(2):
            for j in range(2):
                self.assertEqual(commutator_yx(frame, i, j), commutator_yx(frame, i, j, over_all_roots=True))

    def test_type_b_display(self):
        frame = type_b_frame(2)
        cs = MultiPoly.variable(("c_s", "c_l"), "c_s")
        cl = MultiPoly.variable(("c_s", "c_l"), "c_l")
        minus, plus, long1, _ = frame.reflections
        diagonal = commutator_yx(frame, 0, 0).group_part()
        self.assertEqual(diagonal[frame.identity], 1)
        self.assertEqual(diagonal[minus], -cs)
        self.assertEqual(diagonal[plus], -cs)
        self.assertEqual(diagonal[long1], -cl * 2)
        off = commutator_yx(frame, 0, 1).group_part()
        self.assertEqual(off[minus], cs)
        self.assertEqual(off[plus], -cs)
        self.assertNotIn(frame.identity, off)

    def test_specialize(self):
        frame = frame_for_root_system(build_root_system("A", 1))
        value = commutator_yx(frame, 0, 0).specialize({"c": Fraction(1, 2)})
        self.assertEqual(value.augmentation(), 0)

    def test_frames_do_not_mix(self):
        a = frame_for_root_system(build_root_system("A", 1))
        b = frame_for_root_system(build_root_system("A", 1))
        with self.assertRaises(ValueError):
            HcElement.x(a, 0) + HcElement.x(b, 0)

    def test_group_part_rejects_polynomials(self):
        frame = frame_for_root_system(build_root_system("A", 1))
        with self.assertRaises(ValueError):
            HcElement.x(frame, 0).group_part()


class TestOneDimensionalModule(unittest.TestCase):
    def test_exists_at_inverse_coxeter_number(self):
        for label, rank in [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("D", 4), ("G", 2), ("F", 4)]:
            rs = build_root_system(label, rank)
            with self.subTest(type=rs.label):
                self.assertTrue(trivial_module_check(rs, Fraction(1, rs.h)))

    def test_absent_elsewhere(self):
        rng = random.Random(7)
        for label, rank in [("A", 2), ("B", 2), ("G", 2)]:
            rs = build_root_system(label, rank)
            for _ in range(5):
                c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                if c == Fraction(1, rs.h):
                    continue
                with self.subTest(type=rs.label, c=c):
                    self.assertFalse(trivial_module_check(rs, c))

    def test_type_b_both_classes(self):
        self.assertTrue(trivial_module_check(type_b_frame(2), {"c_s": Fraction(1, 4), "c_l": Fraction(1, 4)}))
        self.assertTrue(trivial_module_check(type_b_frame(3), Fraction(1, 6)))
        self.assertFalse(trivial_module_check(type_b_frame(2), {"c_s": Fraction(1, 4), "c_l": Fraction(1, 3)}))

    def test_missing_class(self):
        with self.assertRaises(UnsupportedParameter):
            type_b_frame(2, {"c_s": 1})


class TestPBW(unittest.TestCase):
    def setUp(self):
        self.frame = frame_for_root_system(build_root_system("A", 2))

    def test_parse_word(self):
        letters = parse_word(self.frame, "y1 x2 s1")
        self.assertEqual(letters[:2], [("y", 0), ("x", 1)])
        self.assertEqual(letters[2], ("w", self.frame.generators[0]))

    def test_parse_errors(self):
        for word in ("z1", "x3", "s3", "x0"):
            with self.subTest(word=word):
                with self.assertRaises(ValueError):
                    parse_word(self.frame, word)

    def test_y_moves_past_x(self):
        got = pbw_normal_form(self.frame, "y1 x1")
        expected = HcElement.x(self.frame, 0) * HcElement.y(self.frame, 0) + commutator_yx(self.frame, 0, 0)
        self.assertEqual(got, expected)

    def test_group_moves_past_x(self):
        # s1(alpha_1) = -alpha_1, s1(alpha_2) = alpha_1 + alpha_2
        s1 = self.frame.generators[0]
        g = HcElement.group(self.frame, s1)
        self.assertEqual(pbw_normal_form(self.frame, "s1 x1"), -(HcElement.x(self.frame, 0) * g))
        self.assertEqual(
            pbw_normal_form(self.frame, "s1 x2"),
            (HcElement.x(self.frame, 0) + HcElement.x(self.frame, 1)) * g,
        )

    def test_x_commute(self):
        self.assertEqual(pbw_normal_form(self.frame, "x1 x2"), pbw_normal_form(self.frame, "x2 x1"))

    def test_y_commute(self):
        self.assertEqual(pbw_normal_form(self.frame, "y1 y2"), pbw_normal_form(self.frame, "y2 y1"))

    def test_reflection_squares_to_one(self):
        self.assertEqual(pbw_normal_form(self.frame, "s2 s2"), HcElement.one(self.frame))

    def test_degree_budget(self):
        with self.assertRaises(DegreeBudgetExceeded) as ctx:
            pbw_normal_form(self.frame, "x1 x1 y1 y1 x2", degree_bound=4)
        self.assertEqual(ctx.exception.budget, "pbw_degree")

    def test_associativity(self):
        rng = random.Random(11)
        frame = frame_for_root_system(build_root_system("B", 2))
        for _ in range(15):
            a, b, c = (
                pbw_normal_form(frame, _random_letters(frame, rng, 2)),
                letter_element(frame, ("y", rng.randrange(2))),
                pbw_normal_form(frame, _random_letters(frame, rng, 2)),
            )
            self.assertEqual((a * b) * c, a * (b * c))

    def test_left_fold_equals_normal_form(self):
        rng = random.Random(3)
        for _ in range(10):
            letters = _random_letters(self.frame, rng, 4)
            left = letter_element(self.frame, letters[0])
            for letter in letters[1:]:
                left = left * letter_element(self.frame, letter)
            self.assertEqual(left, pbw_normal_form(self.frame, letters))


class TestSl2(unittest.TestCase):
    def test_closure_with_symbolic_parameters(self):
        for label, rank in [("A", 1), ("A", 2), ("B", 2)]:
            rs = build_root_system(label, rank)
            with self.subTest(type=rs.label):
                report = sl2_closure_check(rs)
                self.assertTrue(report.passed)
                self.assertEqual(
                    [v.as_constant() for v in (report.lam, report.mu, report.nu)],
                    [-4, 2, -2],
                )

    def test_casimirs_are_invariant(self):
        frame = frame_for_root_system(build_root_system("A", 2))
        x2, y2, h = casimir_elements(frame)
        for s in frame.generators:
            g = HcElement.group(frame, s)
            self.assertEqual(g * x2, x2 * g)
            self.assertEqual(g * y2, y2 * g)
            self.assertEqual(g * h, h * g)

    def test_report_payload(self):
        payload = sl2_closure_check(build_root_system("A", 1)).to_dict()
        self.assertEqual(payload["lambda"], "-4")
        self.assertTrue(payload["closes"])


class TestGroupAlgebra(unittest.TestCase):
    def setUp(self):
        self.rs = build_root_system("B", 2)
        self.group = enumerate_weyl_group(self.rs)

    def test_idempotents(self):
        e = trivial_idempotent(self.group)
        e_sign = sign_idempotent(self.group)
        self.assertEqual(e * e, e)
        self.assertEqual(e_sign * e_sign, e_sign)
        self.assertEqual(len(e * e_sign), 0)

    def test_kappa_element_is_central(self):
        self.assertTrue(is_central(kappa_element(self.rs), self.group.generators))
        self.assertTrue(is_central(kappa_element(self.rs, 1), self.group.generators))

    def test_single_reflection_is_not_central(self):
        s = self.group.generators[0]
        self.assertFalse(is_central(GroupAlgebraElement({s: 1}), self.group.generators))

    def test_kappa_on_trivial_is_zero(self):
        # the augmentation of sum c (1 - s) vanishes
        total = sum((v for _, v in kappa_element(self.rs, 1).items()), Fraction(0))
        self.assertEqual(total, 0)


if __name__ == "__main__":
    unittest.main()
