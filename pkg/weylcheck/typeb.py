"""Type B and D witnesses: the quotient C[h]/(x_i^q) and the map theta onto (Z/q)^n.

Here h carries orthonormal coordinates x_1..x_n, W(B_n) acts by signed
permutations and W(D_n) by the signed permutations with an even number of
sign changes. The modulus q is h + 1: 2n + 1 for B_n and 2n - 1 for D_n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .algebra import LaurentPoly, Monomial
from .characters import char_L_at_1, graded_char_L, perm_char_Q_mod
from .errors import BudgetExceeded, EquivarianceFailed
from .matrices import EchelonBasis, ExactMatrix
from .rootsystem import GroupElement, build_root_system, enumerate_weyl_group

SignedPermutation = Tuple[Tuple[int, int], ...]
Point = Tuple[int, ...]

DEFAULT_KOSZUL_BUDGET = 10 ** 5


def modulus(n: int, type_label: str = "B") -> int:
    if type_label == "B":
        return 2 * n + 1
    if type_label == "D":
        return 2 * n - 1
    raise ValueError(f"type {type_label} has no signed-permutation model here")


# -- signed permutations -----------------------------------------------------


def signed_identity(n: int) -> SignedPermutation:
    return tuple((i, 1) for i in range(n))


def compose(g: SignedPermutation, k: SignedPermutation) -> SignedPermutation:
    """g after k: x_i -> sign_k x_{k(i)} -> sign_k sign_g x_{g(k(i))}."""
    return tuple((g[t][0], s * g[t][1]) for t, s in k)


def signed_generators(n: int, type_label: str = "B") -> Tuple[SignedPermutation, ...]:
    gens = []
    for i in range(n - 1):
        perm = list(signed_identity(n))
        perm[i], perm[i + 1] = (i + 1, 1), (i, 1)
        gens.append(tuple(perm))
    last = list(signed_identity(n))
    if type_label == "B":
        last[n - 1] = (n - 1, -1)
    elif type_label == "D":
        last[n - 2], last[n - 1] = (n - 1, -1), (n - 2, -1)
    else:
        raise ValueError(f"type {type_label} has no signed-permutation model here")
    gens.append(tuple(last))
    return tuple(gens)


def signed_group(n: int, type_label: str = "B") -> List[SignedPermutation]:
    gens = signed_generators(n, type_label)
    start = signed_identity(n)
    seen = {start}
    out = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                k = compose(g, s)
                if k not in seen:
                    seen.add(k)
                    out.append(k)
                    nxt.append(k)
        frontier = nxt
    return out


def signed_matrix(g: SignedPermutation) -> List[List[int]]:
    n = len(g)
    m = [[0] * n for _ in range(n)]
    for i, (target, sign) in enumerate(g):
        m[target][i] = sign
    return m


def signed_det(g: SignedPermutation) -> int:
    return int(ExactMatrix(signed_matrix(g)).det())


def act_on_point(g: SignedPermutation, point: Point, q: int) -> Point:
    out = [0] * len(point)
    for i, (target, sign) in enumerate(g):
        out[target] = (sign * point[i]) % q
    return tuple(out)


def act_on_monomial(g: SignedPermutation, mono: Monomial) -> Tuple[int, Monomial]:
    """g(x^mono) = sign * x^image."""
    out = [0] * len(mono)
    sign = 1
    for i, (target, s) in enumerate(g):
        out[target] = mono[i]
        if s < 0 and mono[i] % 2:
            sign = -sign
    return sign, tuple(out)


# -- the quotient C[h]/I -------------------------------------------------------


@dataclass
class KoszulModel:
    """C[x_1..x_n]/(x_i^q) with its signed-permutation action."""

    n: int
    q: int
    type_label: str = "B"

    @property
    def dimension(self) -> int:
        return self.q ** self.n

    def basis(self) -> Iterator[Monomial]:
        return itertools.product(range(self.q), repeat=self.n)

    def normal_form(self, mono: Monomial) -> Optional[Monomial]:
        """The basis monomial, or None when the monomial lies in I."""
        return None if any(e >= self.q for e in mono) else tuple(mono)

    def act(self, g: SignedPermutation, mono: Monomial) -> Tuple[int, Monomial]:
        return act_on_monomial(g, mono)

    def trace(self, g: SignedPermutation, twisted: bool = False) -> int:
        total = 0
        for mono in self.basis():
            sign, image = act_on_monomial(g, mono)
            if image == mono:
                total += sign
        return total * signed_det(g) if twisted else total

    def graded_trace(self, g: SignedPermutation) -> LaurentPoly:
        out: Dict[int, int] = {}
        for mono in self.basis():
            sign, image = act_on_monomial(g, mono)
            if image == mono:
                out[sum(mono)] = out.get(sum(mono), 0) + sign
        return LaurentPoly(out)

    def koszul_series(self, g: SignedPermutation) -> LaurentPoly:
        """sum_k (-1)^k t^{qk} tr(g | wedge^k V) / det(1 - t g) = det(1 - t^q g)/det(1 - t g)."""
        det = ExactMatrix(signed_matrix(g)).char_poly()
        return det.substitute_power(self.q).exact_div(det)

    def v_character(self, g: SignedPermutation) -> int:
        """Trace of g on V = span{x_i^q}."""
        total = 0
        for i in range(self.n):
            mono = tuple(self.q * int(k == i) for k in range(self.n))
            sign, image = act_on_monomial(g, mono)
            if image == mono:
                total += sign
        return total


def build_koszul_model(n: int, type_label: str = "B", budget: int = DEFAULT_KOSZUL_BUDGET) -> KoszulModel:
    if n < 2 or (type_label == "D" and n < 4):
        raise ValueError(f"no {type_label}{n} Koszul model")
    model = KoszulModel(n=n, q=modulus(n, type_label), type_label=type_label)
    if model.dimension > budget:
        raise BudgetExceeded("koszul_dimension", model.dimension, budget)
    return model


# -- theta -------------------------------------------------------------------


@dataclass
class ThetaMap:
    """x^m -> product (tensor) or sum of the one-coordinate vectors eps_{i, m_i}.

    eps_{i,0} = [0], eps_{i,2m} = [m] + [q-m], eps_{i,2m+1} = [m] - [q-m].
    ``indexing="shifted"`` sends an odd exponent e to eps_{i,e+2};
    ``indexing="literal"`` uses eps_{i,e}, which vanishes for e = 1.
    """

    n: int
    q: int
    reading: str = "tensor"
    indexing: str = "shifted"
    twisted: bool = False
    _cache: Dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.reading not in ("tensor", "sum"):
            raise ValueError(f"unknown theta reading {self.reading!r}")
        if self.indexing not in ("shifted", "literal"):
            raise ValueError(f"unknown theta indexing {self.indexing!r}")

    def epsilon(self, k: int) -> Dict[int, int]:
        q = self.q
        if k == 0:
            return {0: 1}
        m = k // 2
        out: Dict[int, int] = {}
        for point, value in ((m % q, 1), ((q - m) % q, 1 if k % 2 == 0 else -1)):
            out[point] = out.get(point, 0) + value
        return {p: v for p, v in out.items() if v}

    def factor(self, exponent: int) -> Dict[int, int]:
        if self.indexing == "shifted" and exponent % 2:
            return self.epsilon(exponent + 2)
        return self.epsilon(exponent)

    def image(self, mono: Monomial) -> Dict[Point, Fraction]:
        if mono in self._cache:
            return self._cache[mono]
        factors = [self.factor(e) for e in mono]
        out: Dict[Point, Fraction] = {}
        if self.reading == "tensor":
            for choice in itertools.product(*(f.items() for f in factors)):
                point = tuple(p for p, _ in choice)
                value = 1
                for _, v in choice:
                    value *= v
                out[point] = out.get(point, 0) + Fraction(value)
        else:
            for i, f in enumerate(factors):
                for p, v in f.items():
                    point = tuple(p if k == i else 0 for k in range(self.n))
                    out[point] = out.get(point, 0) + Fraction(v)
        out = {p: v for p, v in out.items() if v}
        self._cache[mono] = out
        return out

    def rank(self) -> int:
        basis = EchelonBasis()
        for mono in itertools.product(range(self.q), repeat=self.n):
            basis.add(self.image(mono))
        return basis.rank

    def is_bijective(self) -> bool:
        return self.rank() == self.q ** self.n

    def equivariance_failures(
        self,
        generators: Sequence[SignedPermutation],
        strict: bool = False,
    ) -> List[Tuple[int, Monomial]]:
        """Pairs (generator index, basis monomial) where theta(g m) != g theta(m)."""
        failures = []
        for index, g in enumerate(generators):
            twist = signed_det(g) if self.twisted else 1
            for mono in itertools.product(range(self.q), repeat=self.n):
                sign, target = act_on_monomial(g, mono)
                lhs = {p: v * sign * twist for p, v in self.image(target).items()}
                rhs = {act_on_point(g, p, self.q): v for p, v in self.image(mono).items()}
                if lhs != rhs:
                    if strict:
                        raise EquivarianceFailed(index, mono)
                    failures.append((index, mono))
        return failures


def build_theta(n: int, type_label: str = "B", **variant) -> ThetaMap:
    return ThetaMap(n=n, q=modulus(n, type_label), **variant)


def theta_variants(n: int, type_label: str = "B") -> List[Dict]:
    """Bijectivity and equivariance of every reading of theta."""
    gens = signed_generators(n, type_label)
    rows = []
    for reading in ("tensor", "sum"):
        for indexing in ("shifted", "literal"):
            for twisted in (False, True):
                theta = build_theta(n, type_label, reading=reading, indexing=indexing, twisted=twisted)
                failures = theta.equivariance_failures(gens)
                rows.append(
                    {
                        "reading": reading,
                        "indexing": indexing,
                        "twisted": twisted,
                        "bijective": theta.is_bijective(),
                        "equivariant": not failures,
                        "first_failure": [failures[0][0], list(failures[0][1])] if failures else None,
                    }
                )
    return rows


# -- fixed points ------------------------------------------------------------


def ambient_simple_roots(n: int, type_label: str = "B") -> ExactMatrix:
    """Columns are the simple roots in orthonormal coordinates, in Dynkin order."""
    columns = [[int(k == i) - int(k == i + 1) for k in range(n)] for i in range(n - 1)]
    if type_label == "B":
        columns.append([int(k == n - 1) for k in range(n)])
    elif type_label == "D":
        columns.append([int(k in (n - 2, n - 1)) for k in range(n)])
    else:
        raise ValueError(f"type {type_label} has no signed-permutation model here")
    return ExactMatrix.from_columns(columns)


def fixed_points(g: SignedPermutation, q: int) -> int:
    n = len(g)
    return sum(1 for point in itertools.product(range(q), repeat=n) if act_on_point(g, point, q) == point)


@dataclass
class FixedPointRow:
    element: SignedPermutation
    trace: int
    twisted_trace: int
    fixed_points: int
    perm_char: int
    char_L: int
    graded_ok: bool

    @property
    def ok(self) -> bool:
        return self.trace == self.fixed_points == self.perm_char == self.char_L and self.graded_ok

    def to_dict(self) -> Dict:
        return {
            "element": [list(p) for p in self.element],
            "trace": self.trace,
            "twisted_trace": self.twisted_trace,
            "fixed_points": self.fixed_points,
            "perm_char": self.perm_char,
            "char_L": self.char_L,
            "graded": self.graded_ok,
        }


@dataclass
class FixedPointReport:
    label: str
    q: int
    rows: List[FixedPointRow]
    koszul_ok: bool
    v_character_ok: bool

    @property
    def passed(self) -> bool:
        return self.koszul_ok and self.v_character_ok and all(r.ok for r in self.rows)

    def to_dict(self) -> Dict:
        return {
            "label": self.label,
            "q": self.q,
            "elements": len(self.rows),
            "koszul": self.koszul_ok,
            "v_character": self.v_character_ok,
            "mismatches": [r.to_dict() for r in self.rows if not r.ok],
        }


def fixed_point_cross_check(n: int, type_label: str = "B", budget: int = DEFAULT_KOSZUL_BUDGET) -> FixedPointReport:
    """Trace on C[h]/I, fixed points on S, fixed points on Q/qQ and L at t=1 agree elementwise."""
    rs = build_root_system(type_label, n)
    group = enumerate_weyl_group(rs)
    model = build_koszul_model(n, type_label, budget)
    basis = ambient_simple_roots(n, type_label)
    inverse = basis.inverse()
    shift = LaurentPoly.monomial(rs.N)
    rows = []
    koszul_ok = True
    v_ok = True
    for g in signed_group(n, type_label):
        matrix = ExactMatrix(signed_matrix(g))
        element = GroupElement((inverse @ matrix @ basis).to_int_rows())
        if element not in group:
            raise ValueError(f"{g} does not lie in W({rs.label})")
        graded = model.graded_trace(g)
        koszul_ok = koszul_ok and graded == model.koszul_series(g)
        v_ok = v_ok and model.v_character(g) == matrix.trace()
        rows.append(
            FixedPointRow(
                element=g,
                trace=model.trace(g),
                twisted_trace=model.trace(g, twisted=True),
                fixed_points=fixed_points(g, model.q),
                perm_char=perm_char_Q_mod(rs, element, model.q),
                char_L=char_L_at_1(rs, element),
                graded_ok=graded_char_L(rs, element) * shift == graded,
            )
        )
    return FixedPointReport(rs.label, model.q, rows, koszul_ok, v_ok)
