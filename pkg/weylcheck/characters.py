"""Characters of Weyl group elements on the modules built from h.

Exterior-power characters come from coefficients of det(1 + t w). The graded
characters of the standard modules M_c(h_k) and of L_c(triv) are rational
functions in t. Fixed points on Q/mQ are counted through the Smith normal
form of w - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple, Union

from .algebra import ONE_MINUS_T, LaurentPoly, MultiPoly, RationalFunction, Scalar
from .errors import UnsupportedParameter
from .matrices import ExactMatrix, smith_normal_form
from .rootsystem import GroupElement, Root, RootSystemData, WeylGroup

ParamScalar = MultiPoly
ParamSpec = Union[None, Scalar, MultiPoly, Mapping[str, Union[Scalar, MultiPoly]]]


@dataclass(frozen=True)
class ExplicitCharacter:
    """A representation given by its dimension and its values on reflections."""

    dim: int
    reflection_values: Mapping[Root, Fraction]


def det_one_minus_tw(w: Union[GroupElement, Sequence[int]]) -> LaurentPoly:
    coeffs = w.char_coefficients() if isinstance(w, GroupElement) else w
    return LaurentPoly.from_coefficients(coeffs)


def exterior_character(rs: RootSystemData, k: int, w: GroupElement) -> Fraction:
    """Trace of w on the k-th exterior power of h."""
    if not 0 <= k <= rs.rank:
        raise ValueError(f"exterior degree {k} outside 0..{rs.rank}")
    return Fraction((-1) ** k * w.char_coefficients()[k])


def fixed_dimension(coeffs: Sequence[int]) -> int:
    """dim ker(1 - w): the multiplicity of (1 - t) in det(1 - t w)."""
    poly = LaurentPoly.from_coefficients(coeffs)
    count = 0
    while not poly.is_zero() and poly.value_at_one() == 0:
        poly = poly.exact_div(ONE_MINUS_T)
        count += 1
    return count


# -- parameters ---------------------------------------------------------


def symbolic_parameters(rs: RootSystemData) -> Dict[str, ParamScalar]:
    names = rs.parameter_names
    return {name: MultiPoly.variable(names, name) for name in names}


def coerce_parameters(rs: RootSystemData, c: ParamSpec) -> Dict[str, ParamScalar]:
    """Normalise a parameter choice to one ParamScalar per length class."""
    names = rs.parameter_names
    if c is None:
        return symbolic_parameters(rs)
    if isinstance(c, Mapping):
        missing = set(names) - set(c)
        if missing:
            raise UnsupportedParameter(f"no value for parameter(s) {sorted(missing)}")
        out = {}
        for name in names:
            value = c[name]
            out[name] = value if isinstance(value, MultiPoly) else MultiPoly.constant(names, value)
        return out
    if isinstance(c, MultiPoly):
        return {name: c for name in names}
    return {name: MultiPoly.constant(names, c) for name in names}


def coxeter_parameter(rs: RootSystemData, m: int = 1) -> Fraction:
    """The equal-parameter value c = (1 + m h)/h."""
    return Fraction(1 + m * rs.h, rs.h)


def _integral(value: ParamScalar, what: str) -> int:
    if not value.is_constant():
        raise UnsupportedParameter(f"{what} depends on the parameters: {value}")
    number = value.as_constant()
    if number.denominator != 1:
        raise UnsupportedParameter(f"{what} = {number} is not an integer")
    return int(number)


# -- scalars on the standard modules ------------------------------------


def kappa(rs: RootSystemData, tau: Union[int, ExplicitCharacter], c: ParamSpec = None) -> ParamScalar:
    """Scalar by which sum c_alpha (1 - s_alpha) acts on tau."""
    params = coerce_parameters(rs, c)
    if isinstance(tau, ExplicitCharacter):
        dim = tau.dim
        values = {root: Fraction(tau.reflection_values[root]) for root in rs.positive_roots}
    else:
        dim = comb(rs.rank, tau)
        values = {root: exterior_character(rs, tau, rs.reflection(root)) for root in rs.positive_roots}
    total = MultiPoly.zero(rs.parameter_names)
    for root in rs.positive_roots:
        total = total + params[rs.root_class(root)] * (dim - values[root])
    return total * Fraction(1, dim)


def parameter_sum(rs: RootSystemData, c: ParamSpec = None) -> ParamScalar:
    params = coerce_parameters(rs, c)
    total = MultiPoly.zero(rs.parameter_names)
    for root in rs.positive_roots:
        total = total + params[rs.root_class(root)]
    return total


def lowest_h_eigenvalue(rs: RootSystemData, k: int, c: ParamSpec = None) -> ParamScalar:
    """n/2 + kappa_c(h_k) - sum over positive roots of c_alpha."""
    return kappa(rs, k, c) - parameter_sum(rs, c) + Fraction(rs.rank, 2)


def graded_char_standard(
    rs: RootSystemData,
    k: int,
    w: GroupElement,
    c: ParamSpec = None,
    shifted: bool = True,
) -> RationalFunction:
    """Graded character of M_c(h_k) at w.

    With ``shifted`` the lowest degree is the h-eigenvalue of h_k (so that
    M_c(triv) starts in degree -N at c = (1+h)/h); otherwise it is
    kappa_c(h_k).
    """
    if c is None:
        c = coxeter_parameter(rs)
    exponent = lowest_h_eigenvalue(rs, k, c) if shifted else kappa(rs, k, c)
    start = _integral(exponent, f"lowest degree of M_c(h_{k})")
    return RationalFunction(
        LaurentPoly.monomial(start, exterior_character(rs, k, w)), det_one_minus_tw(w)
    )


def graded_char_L(rs: RootSystemData, w: Union[GroupElement, Sequence[int]]) -> RationalFunction:
    """t^{-N} det(1 - t^{h+1} w) / det(1 - t w)."""
    det = det_one_minus_tw(w)
    return RationalFunction(det.substitute_power(rs.h + 1).shift(-rs.N), det)


def char_L_at_1(rs: RootSystemData, w: Union[GroupElement, Sequence[int]]) -> int:
    value = graded_char_L(rs, w).limit_at_one()
    if value.denominator != 1 or value <= 0:
        raise ArithmeticError(f"character value {value} is not a positive integer")
    return int(value)


def perm_char_Q_mod(rs: RootSystemData, w: GroupElement, m: int) -> int:
    """Number of fixed points of w on Q/mQ."""
    if m <= 0:
        raise ValueError("modulus must be positive")
    diff = w.as_exact() - ExactMatrix.identity(rs.rank)
    divisors, rank = smith_normal_form(diff)
    count = m ** (rs.rank - rank)
    for d in divisors[:rank]:
        count *= gcd(m, d)
    return count


def coinvariant_graded_character(rs: RootSystemData, w: Union[GroupElement, Sequence[int]]) -> LaurentPoly:
    """Graded character of the classical coinvariant algebra at w."""
    numerator = LaurentPoly.constant(1)
    for d in rs.degrees:
        numerator = numerator * LaurentPoly({0: 1, d: -1})
    return numerator.exact_div(det_one_minus_tw(w))


# -- group averages -----------------------------------------------------


def _exterior_from_coeffs(coeffs: Sequence[int], k: int) -> int:
    return (-1) ** k * coeffs[k]


def isotypic_series(rs: RootSystemData, group: WeylGroup, k: int) -> LaurentPoly:
    """Graded multiplicity of h_k in the coinvariant algebra.

    The characters of exterior powers are real, so chi(w^-1) = chi(w).
    """
    total = LaurentPoly()
    for coeffs, count in group.charpoly_census():
        weight = count * _exterior_from_coeffs(coeffs, k)
        if weight:
            total = total + coinvariant_graded_character(rs, coeffs) * weight
    return total * Fraction(1, group.order)


def multiplicity_in_L(rs: RootSystemData, group: WeylGroup, k: int) -> Fraction:
    """Multiplicity of h_k in L_c(triv) at c = (1+h)/h, from its ungraded character."""
    total = Fraction(0)
    for coeffs, count in group.charpoly_census():
        total += count * (rs.h + 1) ** fixed_dimension(coeffs) * _exterior_from_coeffs(coeffs, k)
    return total / group.order


def exterior_sum_series(rs: RootSystemData, k: int) -> LaurentPoly:
    """e_k(t^{e_1}, ..., t^{e_n}), with e_0 = 1."""
    levels = [LaurentPoly.constant(1)] + [LaurentPoly() for _ in range(rs.rank)]
    for e in rs.exponents:
        for j in range(rs.rank, 0, -1):
            levels[j] = levels[j] + levels[j - 1].shift(e)
    return levels[k]


class GradedCharacter:
    """A class function w -> RationalFunction."""

    def __init__(self, name: str, rs: RootSystemData, evaluate: Callable[[GroupElement], RationalFunction]):
        self.name = name
        self.rs = rs
        self._evaluate = evaluate

    def __call__(self, w: GroupElement) -> RationalFunction:
        return self._evaluate(w)

    def hilbert_series(self) -> RationalFunction:
        identity = GroupElement([[int(i == j) for j in range(self.rs.rank)] for i in range(self.rs.rank)])
        return self(identity)

    def __repr__(self) -> str:
        return f"GradedCharacter({self.name!r}, {self.rs.label})"


def character_of_L(rs: RootSystemData) -> GradedCharacter:
    return GradedCharacter("L_c(triv)", rs, lambda w: graded_char_L(rs, w))


def character_of_standard(rs: RootSystemData, k: int, c: ParamSpec = None) -> GradedCharacter:
    return GradedCharacter(f"M_c(h_{k})", rs, lambda w: graded_char_standard(rs, k, w, c))
