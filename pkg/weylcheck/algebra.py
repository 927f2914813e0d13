"""Exact polynomial arithmetic over the rationals.

Three value types cover every series and polynomial the verifier handles:

* ``LaurentPoly`` -- sparse Laurent polynomials in the series variable ``t``;
* ``RationalFunction`` -- quotients of Laurent polynomials, compared by
  cross-multiplication and never reduced to lowest terms;
* ``MultiPoly`` -- sparse polynomials in named commuting variables, used for
  C[h], C[h + h*] and the parameter ring of the Cherednik algebra.

All values are immutable once built and every coefficient is a
``fractions.Fraction``; no floating point is involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import ExactDivisionFailed

Rational = Fraction
Scalar = Union[int, Fraction]
Monomial = Tuple[int, ...]

_ZERO = Fraction(0)


def _is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction))


def _format_coeff(value: Fraction, body: str) -> str:
    if not body:
        return str(value)
    if value == 1:
        return body
    if value == -1:
        return "-" + body
    return f"{value}*{body}"


def _join_terms(parts: List[str]) -> str:
    if not parts:
        return "0"
    text = parts[0]
    for part in parts[1:]:
        text += " - " + part[1:] if part.startswith("-") else " + " + part
    return text


class LaurentPoly:
    """Sparse Laurent polynomial in ``t`` with rational coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Optional[Mapping[int, Scalar]] = None):
        clean: Dict[int, Fraction] = {}
        for exp, value in (coeffs or {}).items():
            value = Fraction(value)
            if value:
                clean[int(exp)] = value
        self._coeffs = clean

    @classmethod
    def _wrap(cls, coeffs: Dict[int, Fraction]) -> "LaurentPoly":
        poly = cls.__new__(cls)
        poly._coeffs = {exp: value for exp, value in coeffs.items() if value}
        return poly

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, value: Scalar) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def geometric(cls, top: int) -> "LaurentPoly":
        """Return 1 + t + ... + t^top."""
        return cls({k: 1 for k in range(top + 1)})

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[Scalar], start: int = 0) -> "LaurentPoly":
        return cls({start + i: value for i, value in enumerate(coeffs)})

    # -- inspection -------------------------------------------------------

    def coeff(self, exponent: int) -> Fraction:
        return self._coeffs.get(exponent, _ZERO)

    def items(self) -> List[Tuple[int, Fraction]]:
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def min_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("the zero polynomial has no degree")
        return min(self._coeffs)

    def max_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("the zero polynomial has no degree")
        return max(self._coeffs)

    def value_at_one(self) -> Fraction:
        return sum(self._coeffs.values(), _ZERO)

    def is_palindromic(self) -> bool:
        """True when the polynomial is invariant under t -> 1/t."""
        return self == self.invert()

    def to_table(self) -> List[List[int]]:
        """Sorted ``[exponent, numerator, denominator]`` triples."""
        return [[exp, value.numerator, value.denominator] for exp, value in self.items()]

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._coeffs)
        for exp, value in other._coeffs.items():
            out[exp] = out.get(exp, _ZERO) + value
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._wrap({exp: -value for exp, value in self._coeffs.items()})

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            return LaurentPoly._wrap({exp: value * other for exp, value in self._coeffs.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: Dict[int, Fraction] = {}
        for e1, v1 in self._coeffs.items():
            for e2, v2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, _ZERO) + v1 * v2
        return LaurentPoly._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "LaurentPoly":
        if power < 0:
            if len(self._coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (exp, value), = self._coeffs.items()
            return LaurentPoly({exp * power: value ** power})
        result = LaurentPoly.constant(1)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __call__(self, value: Scalar) -> Fraction:
        value = Fraction(value)
        return sum((coeff * value ** exp for exp, coeff in self._coeffs.items()), _ZERO)

    # -- transformations --------------------------------------------------

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly._wrap({exp + k: value for exp, value in self._coeffs.items()})

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Substitute t -> t^k."""
        if k == 0:
            return LaurentPoly.constant(self.value_at_one())
        return LaurentPoly._wrap({exp * k: value for exp, value in self._coeffs.items()})

    def invert(self) -> "LaurentPoly":
        return self.substitute_power(-1)

    def truncated(self, order: int) -> "LaurentPoly":
        return LaurentPoly._wrap({e: v for e, v in self._coeffs.items() if e <= order})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Divide exactly; raise ExactDivisionFailed on a nonzero remainder."""
        other = _as_laurent(other)
        if other is NotImplemented or other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        a_low, b_low = self.min_degree(), other.min_degree()
        rem = [self.coeff(a_low + i) for i in range(self.max_degree() - a_low + 1)]
        divisor = [other.coeff(b_low + i) for i in range(other.max_degree() - b_low + 1)]
        if len(rem) < len(divisor):
            raise ExactDivisionFailed(f"{other} does not divide {self}")
        lead = divisor[-1]
        quotient = [_ZERO] * (len(rem) - len(divisor) + 1)
        for i in range(len(quotient) - 1, -1, -1):
            coef = rem[i + len(divisor) - 1] / lead
            if not coef:
                continue
            quotient[i] = coef
            for j, value in enumerate(divisor):
                rem[i + j] -= coef * value
        if any(rem):
            raise ExactDivisionFailed(f"{other} does not divide {self}")
        return LaurentPoly.from_coefficients(quotient, start=a_low - b_low)

    def series_inverse(self, order: int) -> "LaurentPoly":
        """Power series of 1/self up to t^order (requires a nonzero constant term)."""
        if self.is_zero() or self.min_degree() < 0 or not self.coeff(0):
            raise ValueError("series inverse needs a power series with nonzero constant term")
        if order < 0:
            return LaurentPoly()
        head = self.coeff(0)
        tail = [(exp, value) for exp, value in self._coeffs.items() if exp > 0]
        inv = [_ZERO] * (order + 1)
        inv[0] = 1 / head
        for k in range(1, order + 1):
            acc = sum((value * inv[k - exp] for exp, value in tail if exp <= k), _ZERO)
            inv[k] = -acc / head
        return LaurentPoly.from_coefficients(inv)

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(self.items())!r})"

    def __str__(self) -> str:
        parts = []
        for exp, value in self.items():
            body = "" if exp == 0 else ("t" if exp == 1 else f"t^{exp}")
            parts.append(_format_coeff(value, body))
        return _join_terms(parts)


def _as_laurent(value):
    if isinstance(value, LaurentPoly):
        return value
    if _is_scalar(value):
        return LaurentPoly.constant(value)
    return NotImplemented


ONE_MINUS_T = LaurentPoly({0: 1, 1: -1})


class RationalFunction:
    """Quotient of two Laurent polynomials; equality by cross-multiplication."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator=0, denominator=1):
        num = _as_laurent(numerator)
        den = _as_laurent(denominator)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("rational functions are built from Laurent polynomials or rationals")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.numerator = num
        self.denominator = den

    def _coerce(self, value):
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, LaurentPoly) or _is_scalar(value):
            return RationalFunction(value)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.numerator * other.numerator, self.denominator * other.denominator
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.numerator * other.denominator, self.denominator * other.numerator
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, power: int) -> "RationalFunction":
        if power < 0:
            return RationalFunction(self.denominator ** -power, self.numerator ** -power)
        return RationalFunction(self.numerator ** power, self.denominator ** power)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    __hash__ = None

    def is_laurent(self) -> bool:
        try:
            self.to_laurent()
        except ExactDivisionFailed:
            return False
        return True

    def to_laurent(self) -> LaurentPoly:
        return self.numerator.exact_div(self.denominator)

    def invert_t(self) -> "RationalFunction":
        """Substitute t -> 1/t."""
        return RationalFunction(self.numerator.invert(), self.denominator.invert())

    def series(self, order: int) -> LaurentPoly:
        """Laurent expansion at t = 0, truncated after t^order."""
        if self.numerator.is_zero():
            return LaurentPoly()
        low = self.denominator.min_degree()
        unit = self.denominator.shift(-low)
        need = order + low - self.numerator.min_degree()
        if need < 0:
            return LaurentPoly()
        return (self.numerator * unit.series_inverse(need)).shift(-low).truncated(order)

    def limit_at_one(self) -> Fraction:
        """Exact value at t = 1 after cancelling common (1 - t) factors."""
        num, den = self.numerator, self.denominator
        while den.value_at_one() == 0:
            if num.value_at_one() != 0:
                raise ZeroDivisionError("rational function has a pole at t = 1")
            num = num.exact_div(ONE_MINUS_T)
            den = den.exact_div(ONE_MINUS_T)
        return num.value_at_one() / den.value_at_one()

    def __repr__(self) -> str:
        return f"RationalFunction({self.numerator!r}, {self.denominator!r})"

    def __str__(self) -> str:
        return f"({self.numerator}) / ({self.denominator})"


def monomials(nvars: int, degree: int) -> Iterator[Monomial]:
    """Exponent vectors of the given total degree, lexicographically descending."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            yield (first,) + rest


def monomial_count(nvars: int, degree: int) -> int:
    return comb(degree + nvars - 1, nvars - 1) if nvars else int(degree == 0)


def _mono_add(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class MultiPoly:
    """Sparse polynomial in an ordered tuple of named commuting variables."""

    __slots__ = ("variables", "_terms")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Optional[Mapping[Monomial, Scalar]] = None,
    ):
        self.variables = tuple(variables)
        width = len(self.variables)
        clean: Dict[Monomial, Fraction] = {}
        for mono, value in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != width or any(e < 0 for e in mono):
                raise ValueError(f"exponent vector {mono} does not fit {self.variables}")
            value = Fraction(value)
            if value:
                clean[mono] = value
        self._terms = clean

    @classmethod
    def _wrap(cls, variables: Tuple[str, ...], terms: Dict[Monomial, Fraction]) -> "MultiPoly":
        poly = cls.__new__(cls)
        poly.variables = variables
        poly._terms = {mono: value for mono, value in terms.items() if value}
        return poly

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], value: Scalar) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponents: Monomial, coeff: Scalar = 1) -> "MultiPoly":
        return cls(variables, {tuple(exponents): coeff})

    @classmethod
    def variable(cls, variables: Sequence[str], which: Union[str, int]) -> "MultiPoly":
        variables = tuple(variables)
        index = variables.index(which) if isinstance(which, str) else which
        exps = tuple(int(i == index) for i in range(len(variables)))
        return cls(variables, {exps: 1})

    @classmethod
    def linear_form(cls, variables: Sequence[str], coefficients: Sequence[Scalar]) -> "MultiPoly":
        width = len(variables)
        return cls(
            variables,
            {tuple(int(i == j) for j in range(width)): c for i, c in enumerate(coefficients)},
        )

    # -- inspection -------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), _ZERO)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, _ZERO)

    def is_constant(self) -> bool:
        zero = (0,) * self.nvars
        return all(mono == zero for mono in self._terms)

    def as_constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.constant_term()

    def degree(self) -> int:
        return max((sum(mono) for mono in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(mono) for mono in self._terms}) <= 1

    def homogeneous_component(self, degree: int) -> "MultiPoly":
        return MultiPoly._wrap(
            self.variables, {m: v for m, v in self._terms.items() if sum(m) == degree}
        )

    # -- arithmetic -------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        if _is_scalar(other):
            return MultiPoly.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for mono, value in other._terms.items():
            out[mono] = out.get(mono, _ZERO) + value
        return MultiPoly._wrap(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._wrap(self.variables, {m: -v for m, v in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            return MultiPoly._wrap(self.variables, {m: v * other for m, v in self._terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for m1, v1 in self._terms.items():
            for m2, v2 in other._terms.items():
                mono = _mono_add(m1, m2)
                out[mono] = out.get(mono, _ZERO) + v1 * v2
        return MultiPoly._wrap(self.variables, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        return self * (1 / Fraction(other))

    def __pow__(self, power: int) -> "MultiPoly":
        if power < 0:
            raise ValueError("negative powers of polynomials are not polynomials")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other) -> bool:
        if _is_scalar(other):
            other = MultiPoly.constant(self.variables, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self._terms.items())))

    # -- calculus and substitution ----------------------------------------

    def times_monomial(self, mono: Monomial, coeff: Scalar = 1) -> "MultiPoly":
        return MultiPoly._wrap(
            self.variables, {_mono_add(m, mono): v * coeff for m, v in self._terms.items()}
        )

    def derivative(self, index: int) -> "MultiPoly":
        out: Dict[Monomial, Fraction] = {}
        for mono, value in self._terms.items():
            exp = mono[index]
            if exp:
                lowered = mono[:index] + (exp - 1,) + mono[index + 1:]
                out[lowered] = out.get(lowered, _ZERO) + value * exp
        return MultiPoly._wrap(self.variables, out)

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable i by ``images[i]`` (all images share one variable set)."""
        if len(images) != self.nvars:
            raise ValueError("one image per variable is required")
        target = images[0].variables if images else self.variables
        powers: Dict[Tuple[int, int], MultiPoly] = {}

        def power(i: int, exp: int) -> MultiPoly:
            key = (i, exp)
            if key not in powers:
                powers[key] = images[i] if exp == 1 else power(i, exp - 1) * images[i]
            return powers[key]

        out: Dict[Monomial, Fraction] = {}
        for mono, value in self._terms.items():
            term = MultiPoly.constant(target, value)
            for i, exp in enumerate(mono):
                if exp:
                    term = term * power(i, exp)
            for m, v in term._terms.items():
                out[m] = out.get(m, _ZERO) + v
        return MultiPoly._wrap(target, out)

    def value_at(self, values: Mapping[str, Scalar]) -> Fraction:
        """Evaluate at a point given by variable name."""
        total = _ZERO
        for mono, coeff in self._terms.items():
            term = coeff
            for name, exp in zip(self.variables, mono):
                if exp:
                    if name not in values:
                        raise ValueError(f"no value given for {name}")
                    term *= Fraction(values[name]) ** exp
            total += term
        return total

    def map_coefficients(self, fn: Callable[[Fraction], Scalar]) -> "MultiPoly":
        return MultiPoly._wrap(
            self.variables, {m: Fraction(fn(v)) for m, v in self._terms.items()}
        )

    def divide_linear(self, form: "MultiPoly") -> "MultiPoly":
        """Exact quotient by a homogeneous linear form."""
        form = self._lift(form)
        lin = {m.index(1): v for m, v in form._terms.items() if sum(m) == 1}
        if not lin or len(lin) != len(form._terms):
            raise ValueError(f"{form} is not a nonzero linear form")
        pivot = min(lin)
        lead = lin[pivot]
        others = [(j, v) for j, v in lin.items() if j != pivot]
        levels: Dict[int, Dict[Monomial, Fraction]] = {}
        for mono, value in self._terms.items():
            levels.setdefault(mono[pivot], {})[mono] = value
        quotient: Dict[Monomial, Fraction] = {}
        for level in range(max(levels, default=0), 0, -1):
            below = levels.setdefault(level - 1, {})
            for mono, value in levels.get(level, {}).items():
                if not value:
                    continue
                q = mono[:pivot] + (level - 1,) + mono[pivot + 1:]
                coef = value / lead
                quotient[q] = quotient.get(q, _ZERO) + coef
                for j, v in others:
                    target = q[:j] + (q[j] + 1,) + q[j + 1:]
                    below[target] = below.get(target, _ZERO) - coef * v
        if any(levels.get(0, {}).values()):
            raise ExactDivisionFailed(f"{form} does not divide {self}")
        return MultiPoly._wrap(self.variables, quotient)

    def __repr__(self) -> str:
        return f"MultiPoly({self.variables!r}, {dict(self.items())!r})"

    def __str__(self) -> str:
        parts = []
        for mono, value in self.items():
            factors = []
            for name, exp in zip(self.variables, mono):
                if exp == 1:
                    factors.append(name)
                elif exp:
                    factors.append(f"{name}^{exp}")
            parts.append(_format_coeff(value, "*".join(factors)))
        return _join_terms(parts)
