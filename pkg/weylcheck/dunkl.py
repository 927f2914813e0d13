"""Dunkl operators and the polynomial representation of H_c.

With numeric parameters, ``T_i = d/dx_i - sum_{alpha>0} c_alpha alpha_i D_alpha``
where ``D_alpha f = (f - s_alpha f)/alpha``. Polynomials in the x-variables
form the module M_c(triv); its contravariant form pairs the y-monomial
``y^a`` with ``f`` through the constant term of ``T^a f``. The rank of that
pairing in degree d is dim L_c(triv)_d.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Union

from .algebra import LaurentPoly, Monomial, MultiPoly, monomials
from .characters import ParamSpec
from .cherednik import CherednikFrame, HcElement, as_frame, commutator_yx
from .errors import DegreeBudgetExceeded
from .matrices import ExactMatrix, exact_rank
from .rootsystem import RootSystemData, WeylGroup


class DunklContext:
    """Cached Dunkl operators for one frame and one numeric parameter value."""

    def __init__(
        self,
        source: Union[CherednikFrame, RootSystemData],
        c: ParamSpec = None,
        degree_cap: Optional[int] = None,
    ):
        self.frame = as_frame(source, c)
        self.c = self.frame.parameter_values()
        self.rank = self.frame.rank
        self.variables = self.frame.x_variables
        if degree_cap is None:
            degree_cap = self.rank * self.frame.coxeter_number + 1
        self.degree_cap = int(degree_cap)
        self._weights = [self.c[name] for name in self.frame.root_parameters]
        self._cache: Dict[tuple, MultiPoly] = {}

    def zero(self) -> MultiPoly:
        return MultiPoly.zero(self.variables)

    def x_monomial(self, mono: Monomial) -> MultiPoly:
        return MultiPoly.monomial(self.variables, mono)

    def apply_monomial(self, i: int, mono: Monomial) -> MultiPoly:
        key = (i, mono)
        if key not in self._cache:
            result = self.x_monomial(mono).derivative(i)
            for r, root in enumerate(self.frame.roots):
                weight = self._weights[r] * root[i]
                if weight:
                    result = result - self.frame.divided_difference(r, mono) * weight
            self._cache[key] = result
        return self._cache[key]

    def apply(self, i: int, f: MultiPoly) -> MultiPoly:
        out = self.zero()
        for mono, value in f.terms().items():
            out = out + self.apply_monomial(i, mono) * value
        return out

    def apply_vector(self, y: Sequence[Fraction], f: MultiPoly) -> MultiPoly:
        """T_y f for y = sum y_k e_k in h."""
        out = self.zero()
        for k, weight in enumerate(y):
            if weight:
                out = out + self.apply(k, f) * weight
        return out

    def act(self, element: HcElement, f: MultiPoly) -> MultiPoly:
        """Action of a PBW element q w p on f: q * w(p(T) f)."""
        out = self.zero()
        for (q, w, p), coef in element.terms():
            value = coef.value_at(self.c)
            g = f
            for k, exp in enumerate(p):
                for _ in range(exp):
                    g = self.apply(k, g)
            g = self.frame.act(w, g).times_monomial(q)
            out = out + g * value
        return out

    def reflect(self, r: int, f: MultiPoly) -> MultiPoly:
        return self.frame.act(self.frame.reflections[r], f)


def dunkl_apply(ctx: DunklContext, y: Union[int, Sequence[Fraction]], f: MultiPoly) -> MultiPoly:
    if isinstance(y, int):
        return ctx.apply(y, f)
    return ctx.apply_vector(y, f)


# -- the contravariant form ------------------------------------------------


def _constant_terms(ctx: DunklContext, f: MultiPoly, degree: int) -> Dict[Monomial, Fraction]:
    """Constant terms of T^a f for every multi-index a of the given degree."""
    layer: Dict[Monomial, MultiPoly] = {(0,) * ctx.rank: f}
    for step in range(1, degree + 1):
        nxt: Dict[Monomial, MultiPoly] = {}
        for a in monomials(ctx.rank, step):
            i = next(k for k, e in enumerate(a) if e)
            parent = a[:i] + (a[i] - 1,) + a[i + 1:]
            g = layer.get(parent)
            if g is not None and not g.is_zero():
                nxt[a] = ctx.apply(i, g)
        layer = nxt
    return {a: g.constant_term() for a, g in layer.items()}


def gram_matrix(ctx: DunklContext, degree: int) -> ExactMatrix:
    """Rows indexed by y^a, columns by x^b, both of the given degree."""
    if degree > ctx.degree_cap:
        raise DegreeBudgetExceeded("degree_cap", degree, ctx.degree_cap)
    basis = list(monomials(ctx.rank, degree))
    columns = []
    for b in basis:
        consts = _constant_terms(ctx, ctx.x_monomial(b), degree)
        columns.append([consts.get(a, Fraction(0)) for a in basis])
    return ExactMatrix.from_columns(columns, rows=len(basis))


def contravariant_form_rank(ctx: DunklContext, degree: int) -> int:
    return exact_rank(gram_matrix(ctx, degree))


def contravariant_ranks(ctx: DunklContext, top: Optional[int] = None) -> List[int]:
    top = ctx.degree_cap if top is None else top
    return [contravariant_form_rank(ctx, d) for d in range(top + 1)]


def expected_L_dimensions(rank: int, h: int) -> List[int]:
    """Coefficients of (1 + t + ... + t^h)^n."""
    return [int(v) for _, v in (LaurentPoly.geometric(h) ** rank).items()]


# -- the image of the coinvariant algebra ------------------------------------


def sign_project(frame: CherednikFrame, group: WeylGroup, f: MultiPoly) -> MultiPoly:
    """(1/|W|) sum_w det(w) w(f)."""
    out = MultiPoly.zero(frame.x_variables)
    for g in group:
        out = out + frame.act(g.rows(), f) * g.det()
    return out * Fraction(1, group.order)


def discriminant(frame: CherednikFrame) -> MultiPoly:
    """Product of the positive roots."""
    out = MultiPoly.constant(frame.x_variables, 1)
    for r in range(len(frame.roots)):
        out = out * frame.root_form(r)
    return out


@dataclass
class CoinvariantImageReport:
    sign_dimension: int
    proportional_to_discriminant: bool
    graded_dimensions: LaurentPoly
    expected: LaurentPoly
    group_order: int
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> Dict:
        return {
            "sign_dimension": self.sign_dimension,
            "proportional_to_discriminant": self.proportional_to_discriminant,
            "graded_dimensions": self.graded_dimensions.to_table(),
            "expected": self.expected.to_table(),
            "group_order": self.group_order,
            "checks": dict(self.checks),
        }


def _image(gram: ExactMatrix, basis: Sequence[Monomial], f: MultiPoly) -> List[Fraction]:
    return gram.apply([f.coefficient(m) for m in basis])


def coinvariant_image_check(ctx: DunklContext, group: WeylGroup) -> CoinvariantImageReport:
    """The submodule C[h] v_sign of L_c(triv) is the coinvariant algebra."""
    rs = group.root_system
    frame = ctx.frame
    n, top_sign = ctx.rank, rs.N
    basis = list(monomials(n, top_sign))
    gram = gram_matrix(ctx, top_sign)

    projected = [sign_project(frame, group, ctx.x_monomial(m)) for m in basis]
    images = [_image(gram, basis, v) for v in projected]
    sign_dimension = exact_rank(ExactMatrix.from_columns(images, rows=len(basis)))
    v_sign = next((v for v, img in zip(projected, images) if any(img)), None)

    proportional = False
    dims: List[int] = []
    if v_sign is not None:
        delta = discriminant(frame)
        pair = ExactMatrix.from_columns([_image(gram, basis, v_sign), _image(gram, basis, delta)])
        proportional = exact_rank(pair) == 1
        for k in range(rs.rank * rs.h - top_sign + 1):
            degree = top_sign + k
            target = list(monomials(n, degree))
            g = gram if k == 0 else gram_matrix(ctx, degree)
            cols = [_image(g, target, v_sign.times_monomial(b)) for b in monomials(n, k)]
            dims.append(exact_rank(ExactMatrix.from_columns(cols, rows=len(target))))

    graded = LaurentPoly.from_coefficients(dims)
    expected = LaurentPoly.constant(1)
    for d in rs.degrees:
        expected = expected * LaurentPoly.geometric(d - 1)
    report = CoinvariantImageReport(sign_dimension, proportional, graded, expected, group.order)
    report.checks["sign vector is unique"] = sign_dimension == 1
    report.checks["sign vector is the discriminant"] = proportional
    report.checks["graded dimensions match the coinvariant algebra"] = graded == expected
    report.checks["total dimension is |W|"] = graded.value_at_one() == group.order
    return report


# -- randomized identities ----------------------------------------------------


def random_polynomial(
    variables: Sequence[str],
    rng: random.Random,
    max_degree: int = 4,
    terms: int = 5,
) -> MultiPoly:
    out: Dict[Monomial, Fraction] = {}
    for _ in range(terms):
        degree = rng.randint(0, max_degree)
        mono = [0] * len(variables)
        for _ in range(degree):
            mono[rng.randrange(len(variables))] += 1
        out[tuple(mono)] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return MultiPoly(variables, out)


def euler_eigenvalue(ctx: DunklContext, degree: int) -> Fraction:
    """Eigenvalue of h = 1/2 sum (x_i y_i + y_i x_i) on polynomials of the given degree."""
    total = sum((ctx.c[name] for name in ctx.frame.root_parameters), Fraction(0))
    return degree + Fraction(ctx.rank, 2) - total


def h_grading_check(ctx: DunklContext, f: MultiPoly) -> bool:
    if not f.is_homogeneous() or f.is_zero():
        raise ValueError("h-grading check needs a nonzero homogeneous polynomial")
    frame = ctx.frame
    h = HcElement(frame)
    for i in range(ctx.rank):
        xi, yi = HcElement.x(frame, i), HcElement.y(frame, i)
        h = h + xi * yi + yi * xi
    h = h.scale(Fraction(1, 2))
    return ctx.act(h, f) == f * euler_eigenvalue(ctx, f.degree())


def commutativity_check(ctx: DunklContext, f: MultiPoly) -> bool:
    for i in range(ctx.rank):
        for j in range(i + 1, ctx.rank):
            if ctx.apply(i, ctx.apply(j, f)) != ctx.apply(j, ctx.apply(i, f)):
                return False
    return True


def consistency_check(ctx: DunklContext, f: MultiPoly) -> bool:
    """[T_i, x_j] acts on f as the group-algebra element [y_i, x_j]."""
    for i in range(ctx.rank):
        for j in range(ctx.rank):
            xj = MultiPoly.variable(ctx.variables, j)
            lhs = ctx.apply(i, xj * f) - xj * ctx.apply(i, f)
            rhs = ctx.act(commutator_yx(ctx.frame, i, j), f)
            if lhs != rhs:
                return False
    return True
