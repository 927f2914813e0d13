"""Tests for weylcheck.coinvariants."""

import random
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from weylcheck.algebra import LaurentPoly, MultiPoly
from weylcheck.coinvariants import (
    BigradedTable,
    bi_variables,
    bidegree,
    cell_size,
    compare_DW_RW,
    diagonal_action,
    diagonal_coinvariant_dims,
    invariant_space_basis,
    poisson_bracket,
    poisson_identity_check,
    quadratic_invariants,
    random_bipoly,
    reynolds,
    wallach_generation_check,
)
from weylcheck.errors import BudgetExceeded, IncompleteTable
from weylcheck.rootsystem import build_root_system, enumerate_weyl_group
from weylcheck.series import hilbert_L


def _setup(label, rank):
    rs = build_root_system(label, rank)
    return rs, enumerate_weyl_group(rs)


class TestDiagonalAction(unittest.TestCase):
    def test_cell_size(self):
        self.assertEqual(cell_size(2, 0, 0), 1)
        self.assertEqual(cell_size(2, 1, 1), 4)
        self.assertEqual(cell_size(2, 2, 1), 6)

    def test_reynolds_is_invariant(self):
        rs, group = _setup("A", 2)
        variables = bi_variables(2)
        x1, y2 = MultiPoly.variable(variables, 0), MultiPoly.variable(variables, 3)
        averaged = reynolds(rs, group, x1 * x1 * y2)
        action = diagonal_action(group)
        for g in group.generators:
            self.assertEqual(action.act(g, averaged), averaged)
        self.assertEqual(reynolds(rs, group, averaged), averaged)

    def test_reynolds_needs_matching_group(self):
        rs, _ = _setup("A", 2)
        _, other = _setup("A", 2)
        with self.assertRaises(ValueError):
            reynolds(rs, other, MultiPoly.zero(bi_variables(2)))

    def test_pairing_is_invariant(self):
        # the x and y actions are contragredient
        rs, group = _setup("B", 2)
        x2, y2 = quadratic_invariants(rs)
        action = diagonal_action(group)
        for g in group:
            self.assertEqual(action.act(g, x2), x2)
            self.assertEqual(action.act(g, y2), y2)
        self.assertEqual(len(invariant_space_basis(rs, group, (1, 1))), 1)

    def test_poisson_bracket_of_quadratics(self):
        for label, rank in [("A", 1), ("A", 2), ("B", 2), ("G", 2)]:
            rs = build_root_system(label, rank)
            variables = bi_variables(rank)
            x2, y2 = quadratic_invariants(rs)
            euler = MultiPoly.zero(variables)
            for i in range(rank):
                euler = euler + MultiPoly.variable(variables, i) * MultiPoly.variable(variables, rank + i)
            with self.subTest(type=rs.label):
                self.assertEqual(poisson_bracket(y2, x2), euler * 4)
                self.assertEqual(poisson_bracket(x2, y2), euler * -4)

    def test_bracket_needs_common_variables(self):
        with self.assertRaises(ValueError):
            poisson_bracket(MultiPoly.zero(bi_variables(1)), MultiPoly.zero(bi_variables(2)))

    def test_invariant_counts(self):
        rs, group = _setup("A", 1)
        self.assertEqual([len(invariant_space_basis(rs, group, (a, 2 - a))) for a in range(3)], [1, 1, 1])
        self.assertEqual(len(invariant_space_basis(rs, group, (1, 0))), 0)


class TestPoissonIdentities(unittest.TestCase):
    def test_canonical_pairs(self):
        variables = bi_variables(2)
        x1, x2, y1, y2 = (MultiPoly.variable(variables, v) for v in variables)
        self.assertEqual(poisson_bracket(y1, x1), MultiPoly.constant(variables, 1))
        self.assertTrue(poisson_bracket(y1, x2).is_zero())
        self.assertTrue(poisson_bracket(x1, x2).is_zero())

    @given(st.integers(min_value=0, max_value=10**6))
    @settings(max_examples=25, deadline=None)
    def test_random_triples(self, seed):
        rng = random.Random(seed)
        f, g, k = (random_bipoly(2, rng) for _ in range(3))
        fg = poisson_bracket(f, g)
        self.assertEqual(fg, poisson_bracket(g, f) * -1)
        self.assertEqual(poisson_bracket(f, g * k), fg * k + g * poisson_bracket(f, k))
        jacobi = (
            poisson_bracket(f, poisson_bracket(g, k))
            + poisson_bracket(g, poisson_bracket(k, f))
            + poisson_bracket(k, fg)
        )
        self.assertTrue(jacobi.is_zero())

    def test_random_bipoly_is_bihomogeneous(self):
        rng = random.Random(7)
        for _ in range(20):
            f = random_bipoly(2, rng, max_bidegree=(3, 3))
            cells = {bidegree(mono) for mono in f.terms()}
            self.assertLessEqual(len(cells), 1)
            for a, b in cells:
                self.assertLessEqual(a, 3)
                self.assertLessEqual(b, 3)

    def test_hundred_samples(self):
        report = poisson_identity_check(2, random.Random(1729), samples=100)
        self.assertEqual(report.samples, 100)
        self.assertTrue(report.passed, report.to_dict())
        self.assertEqual(set(report.to_dict()["failures"]), {"antisymmetry", "leibniz", "jacobi", "bidegree"})


class TestCoinvariantTable(unittest.TestCase):
    def test_a1(self):
        rs, group = _setup("A", 1)
        table = diagonal_coinvariant_dims(rs, group)
        self.assertEqual(table.total(), 3)
        self.assertEqual(table.certified_degree, 2)
        self.assertEqual(table.z_graded(), LaurentPoly({-1: 1, 0: 1, 1: 1}))
        self.assertTrue(compare_DW_RW(rs, table).equal)

    def test_a2_matches_hilbert_series_of_L(self):
        rs, group = _setup("A", 2)
        table = diagonal_coinvariant_dims(rs, group)
        self.assertEqual(table.total(), 16)
        self.assertEqual(table.z_graded(), hilbert_L(rs))
        self.assertTrue(table.is_symmetric())
        # the y-degree 0 column is the ordinary coinvariant algebra
        self.assertEqual(table.column_series(), LaurentPoly({0: 1, 1: 2, 2: 2, 3: 1}))
        report = compare_DW_RW(rs, table)
        self.assertTrue(report.equal)
        self.assertEqual(report.to_dict()["strict_degrees"], [])

    def test_b2_dominates_strictly(self):
        rs, group = _setup("B", 2)
        table = diagonal_coinvariant_dims(rs, group)
        self.assertTrue(table.is_symmetric())
        self.assertEqual(table.column_series().value_at_one(), group.order)
        report = compare_DW_RW(rs, table)
        self.assertTrue(report.dominates)
        self.assertFalse(report.equal)
        self.assertGreaterEqual(len(report.strict_degrees), 1)
        self.assertGreater(table.total(), 25)

    def test_g2_dominates_strictly(self):
        rs, group = _setup("G", 2)
        table = diagonal_coinvariant_dims(rs, group)
        self.assertIsNotNone(table.certified_degree)
        self.assertTrue(table.is_symmetric())
        self.assertEqual(table.column_series().value_at_one(), 12)
        report = compare_DW_RW(rs, table)
        self.assertTrue(report.dominates)
        self.assertFalse(report.equal)
        self.assertGreaterEqual(len(report.strict_degrees), 1)
        self.assertGreater(table.total(), 49)

    def test_cell_budget(self):
        rs, group = _setup("A", 2)
        with self.assertRaises(BudgetExceeded) as raised:
            diagonal_coinvariant_dims(rs, group, cell_budget=1)
        self.assertEqual(raised.exception.budget, "cell_budget")

    def test_uncertified_table(self):
        rs, group = _setup("A", 2)
        table = diagonal_coinvariant_dims(rs, group, bounds=(1, 1))
        self.assertIsNone(table.certified_degree)
        with self.assertRaises(IncompleteTable):
            compare_DW_RW(rs, table)

    def test_negative_bounds(self):
        rs, group = _setup("A", 1)
        with self.assertRaises(ValueError):
            diagonal_coinvariant_dims(rs, group, bounds=(-1, 2))

    def test_table_payload(self):
        table = BigradedTable("A1", (2, 2), {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 0}, 2)
        payload = table.to_dict()
        self.assertEqual(payload["cells"], [[0, 0, 1], [0, 1, 1], [1, 0, 1]])
        self.assertEqual(payload["total"], 3)


class TestGeneration(unittest.TestCase):
    def test_small_types(self):
        for label, rank in [("A", 1), ("A", 2)]:
            rs, group = _setup(label, rank)
            report = wallach_generation_check(rs, group, max_total=3, extra=1)
            with self.subTest(type=rs.label):
                self.assertTrue(report.passed, report.to_dict())
                self.assertIn("1,1", report.to_dict())


if __name__ == "__main__":
    unittest.main()
