"""The rational Cherednik algebra H_c in PBW normal form.

An element is a sum of terms ``q * w * p`` with ``q`` a monomial in the
x-variables (a basis of h*), ``w`` a group element and ``p`` a monomial in
the dual y-variables. Coefficients are ParamScalars: polynomials in the
parameters ``c`` (simply-laced) or ``c_s``/``c_l``.

Products are computed by moving letters leftwards with the relations

    w x w^-1 = w(x),     w y w^-1 = w(y),
    y_i x_j - x_j y_i = <y_i, x_j> - sum_{alpha > 0} c_alpha <y_i, alpha><alpha^vee, x_j> s_alpha,

which give ``y_i q = q y_i + d_i q - sum c_alpha alpha_i ((q - s_alpha q)/alpha) s_alpha``
for any polynomial q.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import Monomial, MultiPoly, Scalar
from .characters import ParamScalar, ParamSpec, coerce_parameters
from .errors import DegreeBudgetExceeded, UnsupportedParameter
from .matrices import ExactMatrix
from .rootsystem import GroupElement, RootSystemData, WeylGroup

Mat = Tuple[Tuple[int, ...], ...]
Key = Tuple[Monomial, Mat, Monomial]
Letter = Tuple[str, object]

DEFAULT_PBW_DEGREE = 4


def identity_mat(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Mat, b: Mat) -> Mat:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def _bump(mono: Monomial, i: int, delta: int = 1) -> Monomial:
    return mono[:i] + (mono[i] + delta,) + mono[i + 1:]


@dataclass(frozen=True, eq=False)
class CherednikFrame:
    """Roots, coroots and reflections written in a fixed basis x_1..x_n of h*."""

    label: str
    rank: int
    roots: Tuple[Tuple[Fraction, ...], ...]
    coroot_pairings: Tuple[Tuple[Fraction, ...], ...]
    root_parameters: Tuple[str, ...]
    reflections: Tuple[Mat, ...]
    generators: Tuple[Mat, ...]
    gram: ExactMatrix
    c: Dict[str, ParamScalar]
    coxeter_number: int
    _cache: Dict = field(default_factory=dict, repr=False)

    @property
    def parameter_names(self) -> Tuple[str, ...]:
        return tuple(self.c)

    @property
    def x_variables(self) -> Tuple[str, ...]:
        return tuple(f"x{i + 1}" for i in range(self.rank))

    @property
    def identity(self) -> Mat:
        return identity_mat(self.rank)

    @property
    def zero_monomial(self) -> Monomial:
        return (0,) * self.rank

    def param(self, value: Union[Scalar, ParamScalar]) -> ParamScalar:
        if isinstance(value, MultiPoly):
            return value
        return MultiPoly.constant(self.parameter_names, value)

    def with_parameters(self, c: ParamSpec) -> "CherednikFrame":
        names = self.parameter_names
        if isinstance(c, Mapping):
            missing = set(names) - set(c)
            if missing:
                raise UnsupportedParameter(f"no value for parameter(s) {sorted(missing)}")
            values = {name: self.param(c[name]) for name in names}
        else:
            values = {name: self.param(c) for name in names}
        return replace(self, c=values, _cache={})

    def parameter_values(self) -> Dict[str, Fraction]:
        if not all(value.is_constant() for value in self.c.values()):
            raise UnsupportedParameter("this computation needs numeric parameter values")
        return {name: value.as_constant() for name, value in self.c.items()}

    def root_form(self, r: int) -> MultiPoly:
        return MultiPoly.linear_form(self.x_variables, self.roots[r])

    def act_monomial(self, w: Mat, mono: Monomial) -> MultiPoly:
        """w . x^mono, with w(x_j) = sum_k w[k][j] x_k."""
        key = ("act", w, mono)
        if key not in self._cache:
            images = self._cache.get(("images", w))
            if images is None:
                images = [
                    MultiPoly.linear_form(self.x_variables, [w[k][j] for k in range(self.rank)])
                    for j in range(self.rank)
                ]
                self._cache[("images", w)] = images
            self._cache[key] = MultiPoly.monomial(self.x_variables, mono).substitute(images)
        return self._cache[key]

    def act(self, w: Mat, f: MultiPoly) -> MultiPoly:
        out = MultiPoly.zero(self.x_variables)
        for mono, value in f.terms().items():
            out = out + self.act_monomial(w, mono) * value
        return out

    def divided_difference(self, r: int, mono: Monomial) -> MultiPoly:
        """(x^mono - s_alpha x^mono) / alpha for the r-th positive root."""
        key = ("divdiff", r, mono)
        if key not in self._cache:
            f = MultiPoly.monomial(self.x_variables, mono)
            diff = f - self.act_monomial(self.reflections[r], mono)
            self._cache[key] = diff.divide_linear(self.root_form(r))
        return self._cache[key]


def frame_for_root_system(rs: RootSystemData, c: ParamSpec = None) -> CherednikFrame:
    """Frame with x_i the simple roots and y_i the dual basis of h."""
    roots = tuple(tuple(Fraction(v) for v in root) for root in rs.positive_roots)
    pairings = tuple(tuple(Fraction(v) for v in rs.coroot_pairing(root)) for root in rs.positive_roots)
    reflections = tuple(rs.reflection(root).rows() for root in rs.positive_roots)
    return CherednikFrame(
        label=rs.label,
        rank=rs.rank,
        roots=roots,
        coroot_pairings=pairings,
        root_parameters=tuple(rs.root_class(root) for root in rs.positive_roots),
        reflections=reflections,
        generators=tuple(s.rows() for s in rs.simple_reflections()),
        gram=rs.gram,
        c=coerce_parameters(rs, c),
        coxeter_number=rs.h,
    )


def type_b_frame(n: int, c: ParamSpec = None) -> CherednikFrame:
    """B_n in orthonormal coordinates: e_i +- e_j short, 2 e_i long (coroot e_i)."""
    if n < 2:
        raise ValueError("type B needs rank at least 2")
    roots: List[Tuple[int, ...]] = []
    params: List[str] = []
    for i in range(n):
        for j in range(i + 1, n):
            for sign in (-1, 1):
                roots.append(tuple(int(k == i) + sign * int(k == j) for k in range(n)))
                params.append("c_s")
    for i in range(n):
        roots.append(tuple(2 * int(k == i) for k in range(n)))
        params.append("c_l")

    def coroot(root):
        norm = sum(v * v for v in root)
        return tuple(Fraction(2 * v, norm) for v in root)

    def reflection(root) -> Mat:
        cv = coroot(root)
        return tuple(
            tuple(int(k == j) - int(root[k] * cv[j]) for j in range(n)) for k in range(n)
        )

    simple = [tuple(int(k == i) - int(k == i + 1) for k in range(n)) for i in range(n - 1)]
    simple.append(tuple(2 * int(k == n - 1) for k in range(n)))
    names = ("c_s", "c_l")
    frame = CherednikFrame(
        label=f"B{n} (orthonormal)",
        rank=n,
        roots=tuple(tuple(Fraction(v) for v in r) for r in roots),
        coroot_pairings=tuple(coroot(r) for r in roots),
        root_parameters=tuple(params),
        reflections=tuple(reflection(r) for r in roots),
        generators=tuple(reflection(r) for r in simple),
        gram=ExactMatrix.identity(n),
        c={name: MultiPoly.variable(names, name) for name in names},
        coxeter_number=2 * n,
    )
    return frame if c is None else frame.with_parameters(c)


def as_frame(source: Union[CherednikFrame, RootSystemData], c: ParamSpec = None) -> CherednikFrame:
    if isinstance(source, CherednikFrame):
        return source if c is None else source.with_parameters(c)
    return frame_for_root_system(source, c)


def _accumulate(out: Dict[Key, ParamScalar], key: Key, value: ParamScalar):
    current = out.get(key)
    out[key] = value if current is None else current + value


class HcElement:
    """Element of H_c as a dict (x-monomial, group matrix, y-monomial) -> ParamScalar."""

    __slots__ = ("frame", "_terms")

    def __init__(self, frame: CherednikFrame, terms: Optional[Mapping[Key, ParamScalar]] = None):
        self.frame = frame
        self._terms = {key: value for key, value in (terms or {}).items() if not value.is_zero()}

    @classmethod
    def scalar(cls, frame: CherednikFrame, value: Union[Scalar, ParamScalar]) -> "HcElement":
        zero = frame.zero_monomial
        return cls(frame, {(zero, frame.identity, zero): frame.param(value)})

    @classmethod
    def one(cls, frame: CherednikFrame) -> "HcElement":
        return cls.scalar(frame, 1)

    @classmethod
    def x(cls, frame: CherednikFrame, i: int) -> "HcElement":
        zero = frame.zero_monomial
        return cls(frame, {(_bump(zero, i), frame.identity, zero): frame.param(1)})

    @classmethod
    def y(cls, frame: CherednikFrame, i: int) -> "HcElement":
        zero = frame.zero_monomial
        return cls(frame, {(zero, frame.identity, _bump(zero, i)): frame.param(1)})

    @classmethod
    def group(cls, frame: CherednikFrame, w: Mat) -> "HcElement":
        zero = frame.zero_monomial
        return cls(frame, {(zero, tuple(tuple(r) for r in w), zero): frame.param(1)})

    def terms(self) -> List[Tuple[Key, ParamScalar]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def coefficient(self, key: Key) -> ParamScalar:
        return self._terms.get(key, self.frame.param(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(q) + sum(p) for q, _, p in self._terms), default=0)

    # -- linear structure -------------------------------------------------

    def _check(self, other: "HcElement"):
        if other.frame is not self.frame:
            raise ValueError("elements live in different Cherednik frames")

    def __add__(self, other: "HcElement") -> "HcElement":
        self._check(other)
        out = dict(self._terms)
        for key, value in other._terms.items():
            _accumulate(out, key, value)
        return HcElement(self.frame, out)

    def __neg__(self) -> "HcElement":
        return HcElement(self.frame, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "HcElement") -> "HcElement":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HcElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def scale(self, value: Union[Scalar, ParamScalar]) -> "HcElement":
        factor = self.frame.param(value)
        return HcElement(self.frame, {k: v * factor for k, v in self._terms.items()})

    # -- multiplication ---------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, HcElement):
            return self.scale(other)
        self._check(other)
        out: Dict[Key, ParamScalar] = {}
        for (q, w, p), coef in self._terms.items():
            part = other
            for i, exp in enumerate(p):
                for _ in range(exp):
                    part = part._left_y(i)
            part = part._left_group(w)._left_x(q)
            for key, value in part._terms.items():
                _accumulate(out, key, value * coef)
        return HcElement(self.frame, out)

    def __rmul__(self, other):
        return self.scale(other)

    def _left_x(self, q: Monomial) -> "HcElement":
        if not any(q):
            return self
        return HcElement(
            self.frame,
            {(tuple(a + b for a, b in zip(q, xq)), w, p): v for (xq, w, p), v in self._terms.items()},
        )

    def _left_group(self, g: Mat) -> "HcElement":
        if g == self.frame.identity:
            return self
        out: Dict[Key, ParamScalar] = {}
        for (q, w, p), coef in self._terms.items():
            gw = mat_mul(g, w)
            for mono, value in self.frame.act_monomial(g, q).terms().items():
                _accumulate(out, (mono, gw, p), coef * value)
        return HcElement(self.frame, out)

    def _left_y(self, i: int) -> "HcElement":
        frame = self.frame
        out: Dict[Key, ParamScalar] = {}
        for (q, w, p), coef in self._terms.items():
            # q w (w^-1 y_i) p
            for k, entry in enumerate(w[i]):
                if entry:
                    _accumulate(out, (q, w, _bump(p, k)), coef * entry)
            if q[i]:
                _accumulate(out, (_bump(q, i, -1), w, p), coef * q[i])
            for r, root in enumerate(frame.roots):
                weight = root[i]
                if not weight:
                    continue
                quotient = frame.divided_difference(r, q)
                if quotient.is_zero():
                    continue
                factor = coef * frame.c[frame.root_parameters[r]] * (-weight)
                sw = mat_mul(frame.reflections[r], w)
                for mono, value in quotient.terms().items():
                    _accumulate(out, (mono, sw, p), factor * value)
        return HcElement(frame, out)

    # -- group-algebra part -----------------------------------------------

    def group_part(self) -> Dict[Mat, ParamScalar]:
        zero = self.frame.zero_monomial
        out = {}
        for (q, w, p), value in self._terms.items():
            if q != zero or p != zero:
                raise ValueError("element has polynomial parts")
            out[w] = value
        return out

    def augmentation(self) -> ParamScalar:
        """Image under the one-dimensional character w -> 1 of the group algebra."""
        total = self.frame.param(0)
        for value in self.group_part().values():
            total = total + value
        return total

    def specialize(self, values: Mapping[str, Scalar]) -> "HcElement":
        return HcElement(
            self.frame, {k: self.frame.param(v.value_at(values)) for k, v in self._terms.items()}
        )

    def __repr__(self) -> str:
        return f"HcElement({self.frame.label}, {len(self._terms)} terms)"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = self.frame.x_variables
        parts = []
        for (q, w, p), coef in self.terms():
            factors = []
            for name, exp in zip(names, q):
                if exp:
                    factors.append(name if exp == 1 else f"{name}^{exp}")
            if w != self.frame.identity:
                factors.append("w" + str([list(row) for row in w]).replace(" ", ""))
            for i, exp in enumerate(p):
                if exp:
                    factors.append(f"y{i + 1}" if exp == 1 else f"y{i + 1}^{exp}")
            parts.append(f"({coef})" + ("*" + "*".join(factors) if factors else ""))
        return " + ".join(parts)


def commutator(a: HcElement, b: HcElement) -> HcElement:
    return a * b - b * a


def commutator_yx(
    source: Union[CherednikFrame, RootSystemData],
    i: int,
    j: int,
    c: ParamSpec = None,
    over_all_roots: bool = False,
) -> HcElement:
    """[y_i, x_j] = delta_ij - sum c_alpha <y_i, alpha><alpha^vee, x_j> s_alpha.

    ``over_all_roots`` sums over every root with weight 1/2 instead of the
    positive roots with weight 1.
    """
    frame = as_frame(source, c)
    zero = frame.zero_monomial
    terms: Dict[Key, ParamScalar] = {}
    if i == j:
        terms[(zero, frame.identity, zero)] = frame.param(1)
    signs = (1, -1) if over_all_roots else (1,)
    weight = Fraction(1, len(signs))
    for r, root in enumerate(frame.roots):
        for sign in signs:
            pairing = (sign * root[i]) * (sign * frame.coroot_pairings[r][j])
            if pairing:
                value = frame.c[frame.root_parameters[r]] * (-pairing * weight)
                _accumulate(terms, (zero, frame.reflections[r], zero), value)
    return HcElement(frame, terms)


def trivial_module_check(source: Union[CherednikFrame, RootSystemData], c: ParamSpec) -> bool:
    """True when x, y -> 0, w -> 1 defines a one-dimensional H_c-module."""
    frame = as_frame(source, c)
    return all(
        commutator_yx(frame, i, j).augmentation().is_zero()
        for i in range(frame.rank)
        for j in range(frame.rank)
    )


# -- words and the PBW normal form -----------------------------------------

_LETTER = re.compile(r"^([xys])(\d+)$")


def parse_word(frame: CherednikFrame, text: str) -> List[Letter]:
    """Parse words like ``"y1 x2 s1"``; ``s_i`` is the i-th simple reflection."""
    letters: List[Letter] = []
    for token in text.split():
        match = _LETTER.match(token)
        if not match:
            raise ValueError(f"bad letter {token!r}")
        kind, index = match.group(1), int(match.group(2)) - 1
        if kind == "s":
            if not 0 <= index < len(frame.generators):
                raise ValueError(f"no simple reflection {token}")
            letters.append(("w", frame.generators[index]))
        else:
            if not 0 <= index < frame.rank:
                raise ValueError(f"no variable {token}")
            letters.append((kind, index))
    return letters


def letter_element(frame: CherednikFrame, letter: Letter) -> HcElement:
    kind, value = letter
    if kind == "x":
        return HcElement.x(frame, value)
    if kind == "y":
        return HcElement.y(frame, value)
    if kind == "w":
        return HcElement.group(frame, value)
    raise ValueError(f"unknown letter kind {kind!r}")


def pbw_normal_form(
    frame: CherednikFrame,
    word: Union[str, Sequence[Letter]],
    degree_bound: int = DEFAULT_PBW_DEGREE,
) -> HcElement:
    """Rewrite a word in x's, y's and group elements into PBW order."""
    letters = parse_word(frame, word) if isinstance(word, str) else list(word)
    degree = sum(1 for kind, _ in letters if kind in ("x", "y"))
    if degree > degree_bound:
        raise DegreeBudgetExceeded("pbw_degree", degree, degree_bound)
    element = HcElement.one(frame)
    for letter in reversed(letters):
        element = letter_element(frame, letter) * element
    return element


# -- the sl2-triple ----------------------------------------------------------


@dataclass
class Sl2Report:
    closes: bool
    lam: Optional[ParamScalar]
    mu: Optional[ParamScalar]
    nu: Optional[ParamScalar]
    independent_of_c: bool
    consistent: bool

    @property
    def passed(self) -> bool:
        return self.closes and self.independent_of_c and self.consistent

    def to_dict(self) -> Dict:
        return {
            "closes": self.closes,
            "lambda": str(self.lam),
            "mu": str(self.mu),
            "nu": str(self.nu),
            "independent_of_c": self.independent_of_c,
            "consistent": self.consistent,
        }


def casimir_elements(frame: CherednikFrame) -> Tuple[HcElement, HcElement, HcElement]:
    """x^2, y^2 from the invariant form and h = 1/2 sum (x_i y_i + y_i x_i)."""
    n = frame.rank
    zero = frame.zero_monomial
    ident = frame.identity
    dual = frame.gram.inverse()
    x2: Dict[Key, ParamScalar] = {}
    y2: Dict[Key, ParamScalar] = {}
    for i in range(n):
        for j in range(n):
            both = _bump(_bump(zero, i), j)
            if dual[i, j]:
                _accumulate(x2, (both, ident, zero), frame.param(dual[i, j]))
            if frame.gram[i, j]:
                _accumulate(y2, (zero, ident, both), frame.param(frame.gram[i, j]))
    h = HcElement(frame)
    for i in range(n):
        xi, yi = HcElement.x(frame, i), HcElement.y(frame, i)
        h = h + xi * yi + yi * xi
    return HcElement(frame, x2), HcElement(frame, y2), h.scale(Fraction(1, 2))


def _ratio(a: HcElement, b: HcElement) -> Optional[ParamScalar]:
    """The scalar lambda with a = lambda b, if one exists."""
    for key, value in b.terms():
        if value.is_constant():
            lam = a.coefficient(key) * (1 / value.as_constant())
            return lam if a == b.scale(lam) else None
    return None


def sl2_closure_check(source: Union[CherednikFrame, RootSystemData], c: ParamSpec = None) -> Sl2Report:
    frame = as_frame(source, c)
    x2, y2, h = casimir_elements(frame)
    lam = _ratio(commutator(x2, y2), h)
    mu = _ratio(commutator(h, x2), x2)
    nu = _ratio(commutator(h, y2), y2)
    closes = lam is not None and mu is not None and nu is not None
    independent = closes and all(v.is_constant() for v in (lam, mu, nu))
    consistent = closes and not lam.is_zero() and not mu.is_zero() and (lam * (mu + nu)).is_zero()
    return Sl2Report(closes, lam, mu, nu, bool(independent), bool(consistent))


# -- the group algebra ---------------------------------------------------------


class GroupAlgebraElement:
    """Finite sum of group elements with rational or ParamScalar coefficients."""

    def __init__(self, terms: Optional[Mapping[GroupElement, Union[Scalar, ParamScalar]]] = None):
        self._terms = {g: v for g, v in (terms or {}).items() if v}

    def items(self) -> List[Tuple[GroupElement, Union[Fraction, ParamScalar]]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].key)

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        out = dict(self._terms)
        for g, v in other._terms.items():
            out[g] = out[g] + v if g in out else v
        return GroupAlgebraElement(out)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + GroupAlgebraElement({g: -v for g, v in other._terms.items()})

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        out: Dict[GroupElement, Union[Fraction, ParamScalar]] = {}
        for g, a in self._terms.items():
            for k, b in other._terms.items():
                prod = g @ k
                value = a * b
                out[prod] = out[prod] + value if prod in out else value
        return GroupAlgebraElement(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return not (self - other)._terms

    __hash__ = None

    def conjugate(self, g: GroupElement) -> "GroupAlgebraElement":
        inv = g.inverse()
        return GroupAlgebraElement({g @ k @ inv: v for k, v in self._terms.items()})

    def __len__(self) -> int:
        return len(self._terms)


def trivial_idempotent(group: WeylGroup) -> GroupAlgebraElement:
    weight = Fraction(1, group.order)
    return GroupAlgebraElement({g: weight for g in group})


def sign_idempotent(group: WeylGroup) -> GroupAlgebraElement:
    weight = Fraction(1, group.order)
    return GroupAlgebraElement({g: weight * g.det() for g in group})


def kappa_element(rs: RootSystemData, c: ParamSpec = None) -> GroupAlgebraElement:
    """sum over positive roots of c_alpha (1 - s_alpha)."""
    params = coerce_parameters(rs, c)
    identity = GroupElement([[int(i == j) for j in range(rs.rank)] for i in range(rs.rank)])
    total = GroupAlgebraElement()
    for root in rs.positive_roots:
        value = params[rs.root_class(root)]
        total = total + GroupAlgebraElement({identity: value, rs.reflection(root): -value})
    return total


def is_central(element: GroupAlgebraElement, generators: Iterable[GroupElement]) -> bool:
    return all(element.conjugate(g) == element for g in generators)
