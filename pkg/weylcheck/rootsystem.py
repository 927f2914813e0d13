"""Root systems of the crystallographic types and their Weyl groups.

Every vector lives in the basis of simple roots, and the invariant form is the
symmetrised Cartan matrix. Weyl group elements are therefore integer
matrices: column j of an element is the image of the simple root alpha_j.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .algebra import LaurentPoly
from .errors import BudgetExceeded, DegreesUnresolved, InvalidRootSystem, WeylcheckError
from .matrices import ExactMatrix

Root = Tuple[int, ...]

DEFAULT_GROUP_BUDGET = 10 ** 6
MAX_GROUP_BUDGET = 10 ** 7

# Only consulted as a cross-check of the derived degrees.
_EXCEPTIONAL_DEGREES: Dict[Tuple[str, int], Tuple[int, ...]] = {
    ("E", 6): (2, 5, 6, 8, 9, 12),
    ("E", 7): (2, 6, 8, 10, 12, 14, 18),
    ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
    ("F", 4): (2, 6, 8, 12),
    ("G", 2): (2, 6),
}


def known_degrees(type_label: str, rank: int) -> Tuple[int, ...]:
    if type_label == "A":
        return tuple(range(2, rank + 2))
    if type_label in ("B", "C"):
        return tuple(range(2, 2 * rank + 1, 2))
    if type_label == "D":
        return tuple(sorted(list(range(2, 2 * rank - 1, 2)) + [rank]))
    return _EXCEPTIONAL_DEGREES[(type_label, rank)]


def _dynkin(type_label: str, rank: int) -> Tuple[List[int], List[Tuple[int, int, int]]]:
    """Squared root lengths and bonds (i, j, multiplicity) of the Dynkin diagram."""
    chain = [(i, i + 1, 1) for i in range(rank - 1)]
    if type_label == "A" and rank >= 1:
        return [2] * rank, chain
    if type_label == "B" and rank >= 2:
        return [4] * (rank - 1) + [2], chain[:-1] + [(rank - 2, rank - 1, 2)]
    if type_label == "C" and rank >= 2:
        return [2] * (rank - 1) + [4], chain[:-1] + [(rank - 2, rank - 1, 2)]
    if type_label == "D" and rank >= 4:
        return [2] * rank, chain[:-1] + [(rank - 3, rank - 1, 1)]
    if type_label == "E" and rank in (6, 7, 8):
        bonds = [(0, 2, 1), (1, 3, 1)] + [(i, i + 1, 1) for i in range(2, rank - 1)]
        return [2] * rank, bonds
    if type_label == "F" and rank == 4:
        return [4, 4, 2, 2], [(0, 1, 1), (1, 2, 2), (2, 3, 1)]
    if type_label == "G" and rank == 2:
        return [2, 6], [(0, 1, 3)]
    raise InvalidRootSystem(
        f"no Weyl group of type {type_label}{rank}; valid: A n>=1, B/C n>=2, "
        "D n>=4, E n in {6,7,8}, F4, G2"
    )


@dataclass(frozen=True, eq=False)
class RootSystemData:
    type_label: str
    rank: int
    cartan: ExactMatrix
    gram: ExactMatrix
    positive_roots: Tuple[Root, ...]
    coroots: Dict[Root, Tuple[Fraction, ...]]
    N: int
    h: int
    exponents: Tuple[int, ...]
    degrees: Tuple[int, ...]
    root_length_classes: Dict[str, Tuple[Root, ...]]
    _cache: Dict = field(default_factory=dict, repr=False)

    @property
    def label(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def order(self) -> int:
        return prod(self.degrees)

    @property
    def parameter_names(self) -> Tuple[str, ...]:
        return tuple(self.root_length_classes)

    def root_class(self, root: Root) -> str:
        root = _positive(root)
        for name, members in self.root_length_classes.items():
            if root in members:
                return name
        raise KeyError(f"{root} is not a root of {self.label}")

    def norm(self, root: Sequence[int]) -> Fraction:
        g = self.gram
        n = self.rank
        return sum((g[i, j] * root[i] * root[j] for i in range(n) for j in range(n)), Fraction(0))

    def coroot_pairing(self, root: Root) -> Tuple[int, ...]:
        """The integers <alpha^vee, alpha_j> for j = 1..n."""
        key = ("pairing", root)
        if key not in self._cache:
            norm = self.norm(root)
            values = []
            for j in range(self.rank):
                gj = sum((self.gram[i, j] * root[i] for i in range(self.rank)), Fraction(0))
                value = 2 * gj / norm
                if value.denominator != 1:
                    raise WeylcheckError(f"non-integral pairing for {root}")
                values.append(int(value))
            self._cache[key] = tuple(values)
        return self._cache[key]

    def reflection(self, root: Root) -> "GroupElement":
        key = ("reflection", root)
        if key not in self._cache:
            pairing = self.coroot_pairing(root)
            n = self.rank
            matrix = [[int(k == j) - root[k] * pairing[j] for j in range(n)] for k in range(n)]
            self._cache[key] = GroupElement(matrix)
        return self._cache[key]

    def simple_reflections(self) -> Tuple["GroupElement", ...]:
        key = "simple"
        if key not in self._cache:
            n = self.rank
            gens = []
            for i in range(n):
                unit = tuple(int(i == j) for j in range(n))
                gens.append(GroupElement(self.reflection(unit).matrix, word=(i,)))
            self._cache[key] = tuple(gens)
        return self._cache[key]


def _positive(root: Sequence[int]) -> Root:
    root = tuple(int(v) for v in root)
    return root if any(v > 0 for v in root) else tuple(-v for v in root)


def _close_roots(cartan: List[List[int]]) -> List[Root]:
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        v = queue.popleft()
        for i in range(n):
            pairing = sum(cartan[i][j] * v[j] for j in range(n))
            if not pairing:
                continue
            image = v[:i] + (v[i] - pairing,) + v[i + 1:]
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return list(seen)


def _orbits(roots: Iterable[Root], cartan: List[List[int]]) -> List[List[Root]]:
    remaining = set(roots)
    n = len(cartan)
    orbits = []
    while remaining:
        start = min(remaining)
        orbit = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for i in range(n):
                pairing = sum(cartan[i][j] * v[j] for j in range(n))
                image = v[:i] + (v[i] - pairing,) + v[i + 1:]
                if image not in orbit:
                    orbit.add(image)
                    queue.append(image)
        remaining -= orbit
        orbits.append(sorted(orbit))
    return orbits


def exponents_from_heights(positive_roots: Sequence[Root]) -> Tuple[int, ...]:
    """Exponents from the partition of positive roots by height."""
    heights = Counter(sum(root) for root in positive_roots)
    exps: List[int] = []
    for k in range(1, max(heights, default=0) + 1):
        exps.extend([k] * (heights.get(k, 0) - heights.get(k + 1, 0)))
    return tuple(exps)


def build_root_system(type_label: str, rank: int) -> RootSystemData:
    type_label = str(type_label).upper()
    rank = int(rank)
    lengths, bonds = _dynkin(type_label, rank)
    gram = [[0] * rank for _ in range(rank)]
    for i, length in enumerate(lengths):
        gram[i][i] = length
    for i, j, mult in bonds:
        value = -mult * min(lengths[i], lengths[j]) // 2
        gram[i][j] = gram[j][i] = value
    cartan = [[2 * gram[i][j] // gram[i][i] for j in range(rank)] for i in range(rank)]

    roots = _close_roots(cartan)
    positive = sorted((r for r in roots if all(v >= 0 for v in r)), key=lambda r: (sum(r), r))
    if 2 * len(positive) != len(roots):
        raise WeylcheckError(f"root closure for {type_label}{rank} is not symmetric")
    N = len(positive)
    if (2 * N) % rank:
        raise WeylcheckError(f"2N = {2 * N} is not divisible by the rank {rank}")
    h = 2 * N // rank
    if max(sum(r) for r in positive) != h - 1:
        raise WeylcheckError("highest root height does not match the Coxeter number")

    exps = exponents_from_heights(positive)
    degrees = tuple(e + 1 for e in exps)
    if len(exps) != rank or sum(exps) != N:
        raise DegreesUnresolved(f"root heights of {type_label}{rank} give exponents {exps}, not {rank} summing to {N}")

    def norm(root: Root) -> int:
        return sum(gram[i][j] * root[i] * root[j] for i in range(rank) for j in range(rank))

    coroots = {
        root: tuple(Fraction(root[i] * gram[i][i], norm(root)) for i in range(rank))
        for root in positive
    }
    orbits = _orbits(roots, cartan)
    if len(orbits) == 1:
        classes = {"c": tuple(positive)}
    else:
        orbits.sort(key=lambda orbit: norm(orbit[0]))
        short, long_ = ({r for r in orbit if r in coroots} for orbit in orbits)
        classes = {
            "c_s": tuple(r for r in positive if r in short),
            "c_l": tuple(r for r in positive if r in long_),
        }

    return RootSystemData(
        type_label=type_label,
        rank=rank,
        cartan=ExactMatrix(cartan),
        gram=ExactMatrix(gram),
        positive_roots=tuple(positive),
        coroots=coroots,
        N=N,
        h=h,
        exponents=exps,
        degrees=degrees,
        root_length_classes=classes,
    )


class GroupElement:
    """Integer matrix of a Weyl group element in the simple-root basis."""

    __slots__ = ("matrix", "word", "_key", "_charpoly")

    def __init__(self, matrix, word: Sequence[int] = ()):
        m = np.ascontiguousarray(np.array(matrix, dtype=np.int64))
        m.setflags(write=False)
        self.matrix = m
        self.word = tuple(word)
        self._key = m.tobytes()
        self._charpoly: Optional[Tuple[int, ...]] = None

    @property
    def key(self) -> bytes:
        return self._key

    @property
    def rank(self) -> int:
        return self.matrix.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.matrix @ other.matrix, self.word + other.word)

    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self.matrix)

    def as_exact(self) -> ExactMatrix:
        return ExactMatrix(self.rows())

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.matrix, np.identity(self.rank, dtype=np.int64)))

    def inverse(self) -> "GroupElement":
        inv = self.as_exact().inverse()
        return GroupElement(inv.to_int_rows(), tuple(reversed(self.word)))

    def det(self) -> int:
        return int(self.as_exact().det())

    def order(self, limit: int = 1000) -> int:
        power = self.matrix
        ident = np.identity(self.rank, dtype=np.int64)
        for k in range(1, limit + 1):
            if np.array_equal(power, ident):
                return k
            power = power @ self.matrix
        raise WeylcheckError(f"element order exceeds {limit}")

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.matrix @ np.array(vector, dtype=np.int64))

    def char_coefficients(self) -> Tuple[int, ...]:
        """Coefficients of det(1 - t w), constant term first."""
        if self._charpoly is None:
            self._charpoly = _leverrier(self.matrix)
        return self._charpoly

    def __repr__(self) -> str:
        return f"GroupElement({self.rows()!r}, word={self.word!r})"


def _leverrier(m: np.ndarray) -> Tuple[int, ...]:
    n = m.shape[0]
    ident = np.identity(n, dtype=np.int64)
    running = np.zeros((n, n), dtype=np.int64)
    coeffs = [1]
    for k in range(1, n + 1):
        running = m @ running + coeffs[-1] * ident
        coeffs.append(-(int(np.trace(m @ running)) // k))
    return tuple(coeffs)


@dataclass(frozen=True, eq=False)
class WeylGroup:
    root_system: RootSystemData
    elements: Tuple[GroupElement, ...]
    generators: Tuple[GroupElement, ...]
    _index: Dict[bytes, GroupElement] = field(default_factory=dict, repr=False)
    _memo: Dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index.update((g.key, g) for g in self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, element: GroupElement) -> bool:
        return element.key in self._index

    @property
    def identity(self) -> GroupElement:
        return self.elements[0]

    def lookup(self, element: GroupElement) -> GroupElement:
        """Return the stored element (with its word) equal to ``element``."""
        return self._index[element.key]

    def charpoly_census(self) -> List[Tuple[Tuple[int, ...], int]]:
        """Multiplicities of det(1 - t w) over the group, in sorted order."""
        if "census" not in self._memo:
            counts = Counter(g.char_coefficients() for g in self.elements)
            self._memo["census"] = sorted(counts.items())
        return self._memo["census"]


def enumerate_weyl_group(rs: RootSystemData, budget: Optional[int] = None) -> WeylGroup:
    limit = DEFAULT_GROUP_BUDGET if budget is None else int(budget)
    if limit <= 0:
        raise ValueError("group budget must be positive")
    if limit > MAX_GROUP_BUDGET:
        raise BudgetExceeded("group_budget", limit, MAX_GROUP_BUDGET)
    if rs.order > limit:
        raise BudgetExceeded("group_order", rs.order, limit)

    gens = rs.simple_reflections()
    ident = GroupElement(np.identity(rs.rank, dtype=np.int64))
    seen: Dict[bytes, GroupElement] = {ident.key: ident}
    elements = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            product = g @ s
            if product.key not in seen:
                seen[product.key] = product
                elements.append(product)
                queue.append(product)
    if len(elements) != rs.order:
        raise WeylcheckError(
            f"enumerated {len(elements)} elements but the degrees predict {rs.order}"
        )
    return WeylGroup(root_system=rs, elements=tuple(elements), generators=gens)


def coxeter_element(rs: RootSystemData) -> GroupElement:
    """Product s_1 s_2 ... s_n of the simple reflections."""
    element = GroupElement(np.identity(rs.rank, dtype=np.int64))
    for s in rs.simple_reflections():
        element = element @ s
    return element


def molien_series(
    group: Union[WeylGroup, Iterable[GroupElement]], truncation: Optional[int] = None
) -> LaurentPoly:
    """Group average of 1/det(1 - t w), truncated after t^truncation."""
    if isinstance(group, WeylGroup):
        census = group.charpoly_census()
        order = group.order
        if truncation is None:
            truncation = group.root_system.h
    else:
        elements = list(group)
        census = sorted(Counter(g.char_coefficients() for g in elements).items())
        order = len(elements)
        if truncation is None:
            raise ValueError("truncation is required for a bare element list")
    total = LaurentPoly()
    for coeffs, count in census:
        total = total + LaurentPoly.from_coefficients(coeffs).series_inverse(truncation) * count
    return total * Fraction(1, order)


def molien_degrees(series: LaurentPoly, rank: int, truncation: int) -> Tuple[int, ...]:
    """Strip factors 1/(1 - t^d) greedily and return the degrees d."""
    remaining = series.truncated(truncation)
    if remaining.coeff(0) != 1:
        raise DegreesUnresolved("series does not start with 1")
    degrees: List[int] = []
    for d in range(1, truncation + 1):
        mult = remaining.coeff(d)
        if mult < 0 or mult.denominator != 1:
            raise DegreesUnresolved(f"coefficient {mult} of t^{d} is not a multiplicity")
        factor = LaurentPoly({0: 1, d: -1})
        for _ in range(int(mult)):
            remaining = (remaining * factor).truncated(truncation)
            degrees.append(d)
    if len(degrees) != rank or remaining != 1:
        raise DegreesUnresolved(
            f"recovered degrees {tuple(degrees)} from a series truncated at t^{truncation}; "
            f"expected {rank}"
        )
    return tuple(degrees)
