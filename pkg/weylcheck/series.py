"""Hilbert series identities for the invariant ring, the sign-isotypic parts of
the standard modules and the simple module L_c(triv)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Tuple, Union

from .algebra import ONE_MINUS_T, LaurentPoly, RationalFunction
from .characters import coxeter_parameter, exterior_sum_series, lowest_h_eigenvalue
from .rootsystem import RootSystemData


@dataclass
class SeriesReport:
    label: str
    series: Union[RationalFunction, LaurentPoly]
    checks: List[Tuple[str, bool]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def add(self, name: str, ok: bool):
        self.checks.append((name, bool(ok)))

    def to_dict(self) -> Dict:
        if isinstance(self.series, RationalFunction):
            series = {
                "numerator": self.series.numerator.to_table(),
                "denominator": self.series.denominator.to_table(),
            }
        else:
            series = self.series.to_table()
        return {
            "label": self.label,
            "series": series,
            "checks": [{"name": name, "pass": ok} for name, ok in self.checks],
        }


def degree_product(rs: RootSystemData) -> LaurentPoly:
    """prod (1 - t^{d_i})."""
    out = LaurentPoly.constant(1)
    for d in rs.degrees:
        out = out * LaurentPoly({0: 1, d: -1})
    return out


def invariant_series_p(rs: RootSystemData) -> RationalFunction:
    return RationalFunction(1, degree_product(rs))


def sign_isotypic_standard_series(rs: RootSystemData, i: int, m: int = 1) -> RationalFunction:
    """Hilbert series of the sign-isotypic part of M_c(h_{n-i}) at c = (1+mh)/h."""
    if not 0 <= i <= rs.rank:
        raise ValueError(f"index {i} outside 0..{rs.rank}")
    if m < 1:
        raise ValueError("m must be a positive integer")
    start = -m * rs.N + (rs.rank - i) * (m * rs.h + 1)
    return invariant_series_p(rs) * exterior_sum_series(rs, i).shift(start)


def sign_isotypic_series_for_exterior(rs: RootSystemData, k: int, m: int = 1) -> RationalFunction:
    """The same series indexed by the exterior degree k of the standard module."""
    return sign_isotypic_standard_series(rs, rs.rank - k, m)


def alternating_sum(rs: RootSystemData, m: int = 1) -> RationalFunction:
    total = RationalFunction(0)
    for k in range(rs.rank + 1):
        term = sign_isotypic_series_for_exterior(rs, k, m)
        total = total + (term if k % 2 == 0 else -term)
    return total


def closed_form(rs: RootSystemData, m: int) -> RationalFunction:
    """t^{N - mN} p prod_k (1 - t^{mh + 1 - e_k})."""
    product = LaurentPoly.constant(1)
    for e in rs.exponents:
        product = product * LaurentPoly({0: 1, m * rs.h + 1 - e: -1})
    return invariant_series_p(rs) * product.shift(rs.N - m * rs.N)


def alternating_sum_check(rs: RootSystemData, m: int = 1) -> SeriesReport:
    total = alternating_sum(rs, m)
    report = SeriesReport(label=f"alternating sum {rs.label} m={m}", series=total)
    if m == 1:
        report.add("alternating sum equals 1", total == 1)
        report.add("exponents sum to N", sum(rs.exponents) == rs.N)
        dual = Counter(rs.h + 1 - e for e in rs.exponents)
        report.add("{h+1-e_k} equals the degrees", dual == Counter(rs.degrees))
    report.add("alternating sum matches the product form", total == closed_form(rs, m))
    return report


def lemma_shape_check(rs: RootSystemData, m: int) -> SeriesReport:
    """Each series starts at the lowest h-eigenvalue for c = (1+mh)/h."""
    report = alternating_sum_check(rs, m)
    c = coxeter_parameter(rs, m)
    for k in range(rs.rank + 1):
        start = -m * rs.N + k * (m * rs.h + 1)
        report.add(f"prefactor of h_{k} is the lowest eigenvalue", lowest_h_eigenvalue(rs, k, c) == start)
    return report


def hilbert_L(rs: RootSystemData) -> LaurentPoly:
    """t^{-N} (1 + t + ... + t^h)^n."""
    return (LaurentPoly.geometric(rs.h) ** rs.rank).shift(-rs.N)


def hilbert_L_from_standard_modules(rs: RootSystemData) -> RationalFunction:
    """sum_i (-1)^i C(n, i) t^{-N + (h+1) i} / (1 - t)^n."""
    numerator = LaurentPoly(
        {-rs.N + (rs.h + 1) * i: (-1) ** i * comb(rs.rank, i) for i in range(rs.rank + 1)}
    )
    return RationalFunction(numerator, ONE_MINUS_T ** rs.rank)


def hilbert_L_check(rs: RootSystemData) -> SeriesReport:
    series = hilbert_L(rs)
    report = SeriesReport(label=f"hilbert series of L {rs.label}", series=series)
    report.add("value at t=1 is (h+1)^n", series.value_at_one() == (rs.h + 1) ** rs.rank)
    report.add("symmetric under t -> 1/t", series.is_palindromic())
    report.add("highest exponent is N", series.max_degree() == rs.N)
    report.add("matches alternating sum of standard modules", hilbert_L_from_standard_modules(rs) == series)
    return report
