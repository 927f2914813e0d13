"""Diagonal invariants and diagonal coinvariants of W on C[h + h*].

Polynomials live in 2n variables ``x1..xn, y1..yn``: the x's are the simple
roots (a basis of h*), the y's the dual basis of h. W acts on both sets at
once, contragrediently on the y's. The coinvariant table is assembled cell
by cell: the ideal piece in bidegree (a, b) is spanned by the invariants of
that bidegree and by the pieces of (a-1, b) and (a, b-1) multiplied by one
variable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import LaurentPoly, Monomial, MultiPoly, monomial_count, monomials
from .errors import BudgetExceeded, IncompleteTable
from .matrices import EchelonBasis
from .rootsystem import GroupElement, RootSystemData, WeylGroup
from .series import hilbert_L

DEFAULT_CELL_BUDGET = 20000

BiPoly = MultiPoly
Bidegree = Tuple[int, int]


def bi_variables(n: int) -> Tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n)) + tuple(f"y{i + 1}" for i in range(n))


def bidegree(mono: Monomial) -> Bidegree:
    n = len(mono) // 2
    return sum(mono[:n]), sum(mono[n:])


def bidegree_monomials(n: int, a: int, b: int) -> List[Monomial]:
    ys = list(monomials(n, b))
    return [xm + ym for xm in monomials(n, a) for ym in ys]


def cell_size(n: int, a: int, b: int) -> int:
    return monomial_count(n, a) * monomial_count(n, b)


class DiagonalAction:
    """W acting on C[x, y]: x_j -> sum_k w[k][j] x_k and y by the inverse transpose."""

    def __init__(self, group: WeylGroup):
        self.group = group
        self.n = group.root_system.rank
        self.variables = bi_variables(self.n)
        self._images: Dict[bytes, List[MultiPoly]] = {}
        self._monomial_averages: Dict[Monomial, MultiPoly] = {}

    def images(self, g: GroupElement) -> List[MultiPoly]:
        if g.key not in self._images:
            n = self.n
            m = g.rows()
            inv = g.inverse().rows()
            xs = [
                MultiPoly.linear_form(self.variables, [m[k][j] for k in range(n)] + [0] * n)
                for j in range(n)
            ]
            ys = [
                MultiPoly.linear_form(self.variables, [0] * n + [inv[j][k] for k in range(n)])
                for j in range(n)
            ]
            self._images[g.key] = xs + ys
        return self._images[g.key]

    def act(self, g: GroupElement, f: BiPoly) -> BiPoly:
        return f.substitute(self.images(g))

    def average_monomial(self, mono: Monomial) -> BiPoly:
        if mono not in self._monomial_averages:
            f = MultiPoly.monomial(self.variables, mono)
            total = MultiPoly.zero(self.variables)
            for g in self.group:
                total = total + self.act(g, f)
            self._monomial_averages[mono] = total * Fraction(1, self.group.order)
        return self._monomial_averages[mono]

    def reynolds(self, f: BiPoly) -> BiPoly:
        total = MultiPoly.zero(self.variables)
        for mono, value in f.terms().items():
            total = total + self.average_monomial(mono) * value
        return total


def diagonal_action(group: WeylGroup) -> DiagonalAction:
    if "diagonal" not in group._memo:
        group._memo["diagonal"] = DiagonalAction(group)
    return group._memo["diagonal"]


def reynolds(rs: RootSystemData, group: WeylGroup, f: BiPoly) -> BiPoly:
    """Projection (1/|W|) sum_w w(f) onto the diagonal invariants."""
    if group.root_system is not rs:
        raise ValueError(f"group does not belong to {rs.label}")
    return diagonal_action(group).reynolds(f)


def poisson_bracket(f: BiPoly, g: BiPoly) -> BiPoly:
    """{f, g} = sum_i (df/dy_i dg/dx_i - df/dx_i dg/dy_i), so {y_i, x_j} = delta_ij."""
    if f.variables != g.variables:
        raise ValueError("brackets need a common variable set")
    n = f.nvars // 2
    out = MultiPoly.zero(f.variables)
    for i in range(n):
        out = out + f.derivative(n + i) * g.derivative(i) - f.derivative(i) * g.derivative(n + i)
    return out


def random_bipoly(n: int, rng: random.Random, max_bidegree: Bidegree = (3, 3), terms: int = 3) -> BiPoly:
    """A random polynomial, homogeneous of a random bidegree within the bound."""
    a, b = rng.randint(0, max_bidegree[0]), rng.randint(0, max_bidegree[1])
    cell = bidegree_monomials(n, a, b)
    out: Dict[Monomial, Fraction] = {}
    for _ in range(terms):
        out[rng.choice(cell)] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return MultiPoly(bi_variables(n), out)


@dataclass
class PoissonReport:
    samples: int
    failures: Dict[str, int]

    @property
    def passed(self) -> bool:
        return not any(self.failures.values())

    def to_dict(self) -> Dict:
        return {"samples": self.samples, "failures": dict(self.failures)}


def poisson_identity_check(
    n: int,
    rng: random.Random,
    samples: int = 100,
    max_bidegree: Bidegree = (3, 3),
) -> PoissonReport:
    """Antisymmetry, Leibniz, Jacobi and the bidegree shift on random triples."""
    failures = {"antisymmetry": 0, "leibniz": 0, "jacobi": 0, "bidegree": 0}
    for _ in range(samples):
        f, g, k = (random_bipoly(n, rng, max_bidegree) for _ in range(3))
        fg = poisson_bracket(f, g)
        if fg != poisson_bracket(g, f) * -1:
            failures["antisymmetry"] += 1
        if poisson_bracket(f, g * k) != fg * k + g * poisson_bracket(f, k):
            failures["leibniz"] += 1
        jacobi = (
            poisson_bracket(f, poisson_bracket(g, k))
            + poisson_bracket(g, poisson_bracket(k, f))
            + poisson_bracket(k, fg)
        )
        if not jacobi.is_zero():
            failures["jacobi"] += 1
        if not (fg.is_zero() or f.is_zero() or g.is_zero()):
            (fa, fb), (ga, gb) = bidegree(next(iter(f.terms()))), bidegree(next(iter(g.terms())))
            if any(bidegree(mono) != (fa + ga - 1, fb + gb - 1) for mono in fg.terms()):
                failures["bidegree"] += 1
    return PoissonReport(samples, failures)


def quadratic_invariants(rs: RootSystemData) -> Tuple[BiPoly, BiPoly]:
    """x^2 = sum (G^-1)_ij x_i x_j and y^2 = sum G_ij y_i y_j from the invariant form."""
    n = rs.rank
    variables = bi_variables(n)
    dual = rs.gram.inverse()
    x2 = MultiPoly.zero(variables)
    y2 = MultiPoly.zero(variables)
    for i in range(n):
        xi, yi = MultiPoly.variable(variables, i), MultiPoly.variable(variables, n + i)
        for j in range(n):
            x2 = x2 + xi * MultiPoly.variable(variables, j) * dual[i, j]
            y2 = y2 + yi * MultiPoly.variable(variables, n + j) * rs.gram[i, j]
    return x2, y2


def _check_cell(n: int, a: int, b: int, limit: int):
    size = cell_size(n, a, b)
    if size > limit:
        raise BudgetExceeded("cell_budget", size, limit)


def invariant_space_basis(
    rs: RootSystemData,
    group: WeylGroup,
    bideg: Bidegree,
    cell_budget: int = DEFAULT_CELL_BUDGET,
) -> List[BiPoly]:
    a, b = bideg
    _check_cell(rs.rank, a, b, cell_budget)
    action = diagonal_action(group)
    basis = EchelonBasis()
    for mono in bidegree_monomials(rs.rank, a, b):
        basis.add(action.average_monomial(mono).terms())
    return [MultiPoly(action.variables, row) for row in basis.rows()]


@dataclass
class BigradedTable:
    label: str
    bounds: Bidegree
    cells: Dict[Bidegree, int] = field(default_factory=dict)
    certified_degree: Optional[int] = None

    def dim(self, a: int, b: int) -> int:
        return self.cells.get((a, b), 0)

    def total(self) -> int:
        return sum(self.cells.values())

    def z_graded(self) -> LaurentPoly:
        """Collapse with deg x = 1, deg y = -1."""
        out: Dict[int, int] = {}
        for (a, b), value in self.cells.items():
            out[a - b] = out.get(a - b, 0) + value
        return LaurentPoly(out)

    def column_series(self) -> LaurentPoly:
        """The y-degree 0 column as a series in t."""
        return LaurentPoly({a: v for (a, b), v in self.cells.items() if b == 0})

    def is_symmetric(self) -> bool:
        return all(self.dim(b, a) == v for (a, b), v in self.cells.items())

    def to_dict(self) -> Dict:
        return {
            "label": self.label,
            "bounds": list(self.bounds),
            "certified_degree": self.certified_degree,
            "cells": [[a, b, v] for (a, b), v in sorted(self.cells.items()) if v],
            "total": self.total(),
        }


class DiagonalCoinvariants:
    """Incremental computation of the ideal pieces and the quotient dimensions."""

    def __init__(self, rs: RootSystemData, group: WeylGroup, cell_budget: int = DEFAULT_CELL_BUDGET):
        self.rs = rs
        self.group = group
        self.n = rs.rank
        self.cell_budget = cell_budget
        self._ideal: Dict[Bidegree, EchelonBasis] = {}

    def _shifted(self, source: Bidegree, var: int) -> List[Dict[Monomial, Fraction]]:
        out = []
        for row in self.ideal_piece(*source).rows():
            out.append({m[:var] + (m[var] + 1,) + m[var + 1:]: v for m, v in row.items()})
        return out

    def ideal_piece(self, a: int, b: int) -> EchelonBasis:
        key = (a, b)
        if key in self._ideal:
            return self._ideal[key]
        _check_cell(self.n, a, b, self.cell_budget)
        basis = EchelonBasis()
        if a + b > 0:
            full = cell_size(self.n, a, b)
            candidates = [g.terms() for g in invariant_space_basis(self.rs, self.group, key, self.cell_budget)]
            if a > 0:
                for var in range(self.n):
                    candidates.extend(self._shifted((a - 1, b), var))
            if b > 0:
                for var in range(self.n):
                    candidates.extend(self._shifted((a, b - 1), self.n + var))
            for vector in candidates:
                if basis.rank == full:
                    break
                basis.add(vector)
        self._ideal[key] = basis
        return basis

    def dimension(self, a: int, b: int) -> int:
        return cell_size(self.n, a, b) - self.ideal_piece(a, b).rank


def diagonal_coinvariant_dims(
    rs: RootSystemData,
    group: WeylGroup,
    bounds: Optional[Bidegree] = None,
    cell_budget: int = DEFAULT_CELL_BUDGET,
) -> BigradedTable:
    """Dimensions of D_W by anti-diagonals, stopping at the first zero anti-diagonal.

    A zero anti-diagonal of total degree s lying inside the bounds certifies
    that every higher total degree vanishes, since D_W is generated in degree 1.
    """
    if bounds is None:
        top = rs.rank * rs.h
        bounds = (top, top)
    bound_a, bound_b = bounds
    if bound_a < 0 or bound_b < 0:
        raise ValueError("bidegree bounds must be non-negative")
    work = DiagonalCoinvariants(rs, group, cell_budget)
    table = BigradedTable(label=rs.label, bounds=(bound_a, bound_b))
    for s in range(bound_a + bound_b + 1):
        row_total = 0
        for a in range(max(0, s - bound_b), min(s, bound_a) + 1):
            value = work.dimension(a, s - a)
            table.cells[(a, s - a)] = value
            row_total += value
        if row_total == 0 and s <= min(bound_a, bound_b):
            table.certified_degree = s
            break
    return table


@dataclass
class DominanceReport:
    label: str
    dw_series: LaurentPoly
    rw_series: LaurentPoly
    strict_degrees: List[int]
    deficient_degrees: List[int]

    @property
    def dominates(self) -> bool:
        return not self.deficient_degrees

    @property
    def equal(self) -> bool:
        return self.dominates and not self.strict_degrees

    def to_dict(self) -> Dict:
        return {
            "label": self.label,
            "dw": self.dw_series.to_table(),
            "rw": self.rw_series.to_table(),
            "dominates": self.dominates,
            "equal": self.equal,
            "strict_degrees": list(self.strict_degrees),
        }


def compare_DW_RW(rs: RootSystemData, table: BigradedTable) -> DominanceReport:
    if table.certified_degree is None:
        raise IncompleteTable(
            f"no zero anti-diagonal within bounds {table.bounds}; raise the bidegree bound"
        )
    dw = table.z_graded()
    rw = hilbert_L(rs)
    exps = sorted({e for e, _ in dw.items()} | {e for e, _ in rw.items()})
    strict = [e for e in exps if dw.coeff(e) > rw.coeff(e)]
    deficient = [e for e in exps if dw.coeff(e) < rw.coeff(e)]
    return DominanceReport(rs.label, dw, rw, strict, deficient)


# -- generation by invariants and brackets ------------------------------------


@dataclass
class GenerationReport:
    spans: Dict[Bidegree, Tuple[int, int]]

    @property
    def passed(self) -> bool:
        return all(got == want for got, want in self.spans.values())

    def to_dict(self) -> Dict:
        return {f"{a},{b}": {"spanned": got, "invariants": want} for (a, b), (got, want) in sorted(self.spans.items())}


def wallach_generation_check(
    rs: RootSystemData,
    group: WeylGroup,
    max_total: int = 4,
    extra: int = 2,
    cell_budget: int = DEFAULT_CELL_BUDGET,
) -> GenerationReport:
    """Products of C[h]^W, C[h*]^W and iterated Poisson brackets span the diagonal invariants.

    Elements up to total degree ``max_total + extra`` take part in the
    closure; spans are compared for total degree at most ``max_total``.
    """
    room = max_total + extra
    spans: Dict[Bidegree, EchelonBasis] = {}
    pool: Dict[Bidegree, List[BiPoly]] = {}

    def offer(f: BiPoly) -> bool:
        if f.is_zero():
            return False
        key = bidegree(next(iter(f.terms())))
        if sum(key) == 0 or sum(key) > room:
            return False
        basis = spans.setdefault(key, EchelonBasis())
        if basis.add(f.terms()):
            pool.setdefault(key, []).append(f)
            return True
        return False

    for d in range(1, room + 1):
        for g in invariant_space_basis(rs, group, (d, 0), cell_budget):
            offer(g)
        for g in invariant_space_basis(rs, group, (0, d), cell_budget):
            offer(g)

    changed = True
    while changed:
        changed = False
        current = [f for fs in pool.values() for f in fs]
        for i, f in enumerate(current):
            for g in current[i:]:
                if offer(poisson_bracket(f, g)):
                    changed = True
                if sum(bidegree(next(iter(f.terms())))) + sum(bidegree(next(iter(g.terms())))) <= room:
                    if offer(f * g):
                        changed = True

    result: Dict[Bidegree, Tuple[int, int]] = {}
    for total in range(1, max_total + 1):
        for a in range(total + 1):
            b = total - a
            want = len(invariant_space_basis(rs, group, (a, b), cell_budget))
            got = spans[(a, b)].rank if (a, b) in spans else 0
            result[(a, b)] = (got, want)
    return GenerationReport(result)
