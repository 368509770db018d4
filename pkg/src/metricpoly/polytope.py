"""The metric polytope m_n.

Points live in dimension C(n, 2) with coordinates indexed by node pairs
(i, j), 1 <= i < j <= n, in lexicographic order.  The polytope is cut out
by the triangle inequalities x_ij - x_ik - x_jk <= 0 (the node k is the
*apex*) and the perimeter inequalities x_ij + x_ik + x_jk <= 2.

Facet names use an ASCII form of the usual Delta notation:

==========================  =================  ====================
facet                       ASCII name         Delta notation
==========================  =================  ====================
x_23 - x_12 - x_13 <= 0     ``T 2 3 / 1``      Delta_{1bar,2,3}
x_26 + x_27 + x_67 <= 2     ``P 2 6 7``        Delta_{2,6,7}
==========================  =================  ====================

The barred index of the Delta notation is the apex, i.e. the node that
appears in both negative terms.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Iterable, Iterator, Sequence

from .exact import Number, as_fraction, format_fraction, integer_rank

__all__ = [
    "PairIndexer", "MetricVector", "FacetInequality", "CutSet",
    "InfeasiblePointError", "NotAVertexError", "DeltaNameError",
    "pair_index", "generate_facets", "facets", "cut_vector", "all_cuts",
    "evaluate_slack", "incidence", "tight_facets", "is_vertex", "are_adjacent",
    "is_integral", "parse_delta_name", "format_delta_name", "facet_id",
    "latex_delta_name", "parse_latex_delta_name",
]


class InfeasiblePointError(ValueError):
    """A point violates a facet of m_n."""

    def __init__(self, facet: "FacetInequality", slack: Fraction):
        self.facet = facet
        self.slack = slack
        super().__init__(f"point violates facet {facet.name} (slack {format_fraction(slack)})")


class NotAVertexError(ValueError):
    pass


class DeltaNameError(ValueError):
    pass


@dataclass(frozen=True)
class PairIndexer:
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"need n >= 3 nodes, got {self.n}")

    @property
    def dimension(self) -> int:
        return self.n * (self.n - 1) // 2

    def index(self, i: int, j: int) -> int:
        n = self.n
        if not (1 <= i < j <= n):
            raise ValueError(f"invalid pair ({i}, {j}) for n={n}")
        # pairs (1, *) .. (i-1, *) precede row i
        return (i - 1) * n - (i - 1) * i // 2 + (j - i - 1)

    def pairs(self) -> list[tuple[int, int]]:
        return _pairs(self.n)

    def pair(self, index: int) -> tuple[int, int]:
        return _pairs(self.n)[index]

    def __call__(self, i: int, j: int) -> int:
        """Index of the unordered pair {i, j}."""
        if i > j:
            i, j = j, i
        return self.index(i, j)


@lru_cache(maxsize=None)
def _pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, n + 1), 2))


def pair_index(indexer: PairIndexer, i: int, j: int) -> int:
    return indexer.index(i, j)


@dataclass(frozen=True, order=True)
class MetricVector:
    """A point of R^C(n,2) with exact rational coordinates."""

    n: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(as_fraction(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        dim = PairIndexer(self.n).dimension
        if len(coords) != dim:
            raise ValueError(f"expected {dim} coordinates for n={self.n}, got {len(coords)}")

    @classmethod
    def from_scaled(cls, n: int, denominator: int, numerators: Sequence[int]) -> "MetricVector":
        return cls(n, tuple(Fraction(v, denominator) for v in numerators))

    @classmethod
    def constant(cls, n: int, value: Number) -> "MetricVector":
        return cls(n, (as_fraction(value),) * PairIndexer(n).dimension)

    @classmethod
    def zero(cls, n: int) -> "MetricVector":
        return cls.constant(n, 0)

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def __getitem__(self, pair: tuple[int, int]) -> Fraction:
        return self.coords[PairIndexer(self.n)(*pair)]

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def scaled(self) -> tuple[int, tuple[int, ...]]:
        """(q, p) with coords == p / q and q the least common denominator."""
        q = lcm(*(c.denominator for c in self.coords))
        return q, tuple(int(c * q) for c in self.coords)

    def __add__(self, other: "MetricVector") -> "MetricVector":
        return MetricVector(self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "MetricVector") -> "MetricVector":
        return MetricVector(self.n, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __str__(self) -> str:
        return " ".join(format_fraction(c) for c in self.coords)


@dataclass(frozen=True)
class FacetInequality:
    """normal . x <= rhs.

    ``kind`` is ``"T"`` (triangle) or ``"P"`` (perimeter).  For a triangle
    ``nodes`` is (i, j, apex) with i < j; for a perimeter it is the sorted
    triple.
    """

    n: int
    kind: str
    nodes: tuple[int, int, int]
    id: int = field(default=-1, compare=False)

    @property
    def support(self) -> tuple[tuple[int, int], ...]:
        """(pair index, coefficient) for the three nonzero normal entries."""
        return _support(self.n, self.kind, self.nodes)

    @property
    def rhs(self) -> int:
        return 2 if self.kind == "P" else 0

    @property
    def normal(self) -> MetricVector:
        coords = [0] * PairIndexer(self.n).dimension
        for idx, c in self.support:
            coords[idx] = c
        return MetricVector(self.n, tuple(coords))

    def normal_row(self) -> list[int]:
        row = [0] * PairIndexer(self.n).dimension
        for idx, c in self.support:
            row[idx] = c
        return row

    @property
    def apex(self) -> int | None:
        return self.nodes[2] if self.kind == "T" else None

    @property
    def triple(self) -> tuple[int, int, int]:
        return tuple(sorted(self.nodes))

    @property
    def name(self) -> str:
        return format_delta_name(self)

    def __str__(self) -> str:
        return self.name


@lru_cache(maxsize=None)
def _support(n: int, kind: str, nodes: tuple[int, int, int]) -> tuple[tuple[int, int], ...]:
    ix = PairIndexer(n)
    if kind == "T":
        i, j, k = nodes
        return ((ix(i, j), 1), (ix(i, k), -1), (ix(j, k), -1))
    i, j, k = nodes
    return ((ix(i, j), 1), (ix(i, k), 1), (ix(j, k), 1))


@dataclass(frozen=True)
class CutSet:
    """A cut delta(S), stored canonically with node 1 on the unlisted side."""

    n: int
    members: frozenset[int]

    def __post_init__(self):
        members = frozenset(self.members)
        if not all(1 <= v <= self.n for v in members):
            raise ValueError(f"cut members {sorted(members)} out of range for n={self.n}")
        if 1 in members:
            members = frozenset(range(1, self.n + 1)) - members
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, n: int, members: Iterable[int] = ()) -> "CutSet":
        return cls(n, frozenset(members))

    def separates(self, i: int, j: int) -> bool:
        return (i in self.members) != (j in self.members)

    def symmetric_difference(self, other: "CutSet") -> "CutSet":
        return CutSet(self.n, self.members ^ other.members)

    def sort_key(self) -> tuple:
        return (len(self.members), sorted(self.members))

    def __str__(self) -> str:
        return "{" + ",".join(str(v) for v in sorted(self.members)) + "}"


def all_cuts(n: int) -> list[CutSet]:
    """The 2^(n-1) canonical cut sets, by size then lexicographically."""
    nodes = range(2, n + 1)
    return [CutSet(n, frozenset(s)) for k in range(n) for s in combinations(nodes, k)]


def cut_vector(s: CutSet) -> MetricVector:
    return MetricVector(s.n, tuple(int(s.separates(i, j)) for i, j in _pairs(s.n)))


def generate_facets(n: int) -> list[FacetInequality]:
    """All 4 C(n,3) facets of m_n.

    Order: by triple, then the three triangles with apex i, j, k of the
    triple (i, j, k), then its perimeter.  A facet's ``id`` is its position.
    """
    return list(facets(n))


@lru_cache(maxsize=None)
def facets(n: int) -> tuple[FacetInequality, ...]:
    if n < 3:
        raise ValueError(f"metric polytope needs n >= 3, got {n}")
    out = []
    for i, j, k in combinations(range(1, n + 1), 3):
        for pair, apex in (((j, k), i), ((i, k), j), ((i, j), k)):
            out.append(FacetInequality(n, "T", (pair[0], pair[1], apex), len(out)))
        out.append(FacetInequality(n, "P", (i, j, k), len(out)))
    return tuple(out)


@lru_cache(maxsize=None)
def _facet_index(n: int) -> dict[tuple[str, tuple[int, int, int]], int]:
    return {(f.kind, f.nodes): f.id for f in facets(n)}


def facet_id(n: int, kind: str, nodes: tuple[int, int, int]) -> int:
    try:
        return _facet_index(n)[(kind, tuple(nodes))]
    except KeyError:
        raise DeltaNameError(f"no facet {kind} {nodes} for n={n}") from None


@lru_cache(maxsize=None)
def normal_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """Facet normals as integer rows, indexed by facet id."""
    return tuple(tuple(f.normal_row()) for f in facets(n))


def evaluate_slack(f: FacetInequality, x: MetricVector) -> Fraction:
    """rhs - normal . x"""
    if x.n != f.n:
        raise ValueError(f"facet is for n={f.n}, point has n={x.n}")
    c = x.coords
    return f.rhs - sum(coef * c[idx] for idx, coef in f.support)


def _scaled_slacks(x: MetricVector) -> tuple[int, list[int]]:
    # q * slack for every facet, in integers
    q, p = x.scaled()
    out = []
    for f in facets(x.n):
        (a, ca), (b, cb), (c, cc) = f.support
        out.append(f.rhs * q - (ca * p[a] + cb * p[b] + cc * p[c]))
    return q, out


def slacks(x: MetricVector) -> list[Fraction]:
    q, s = _scaled_slacks(x)
    return [Fraction(v, q) for v in s]


def is_feasible(x: MetricVector) -> bool:
    return all(v >= 0 for v in _scaled_slacks(x)[1])


def incidence(x: MetricVector) -> frozenset[int]:
    """Ids of the facets tight at x.

    Raises InfeasiblePointError naming the first violated facet.
    """
    q, s = _scaled_slacks(x)
    fs = facets(x.n)
    for fid, v in enumerate(s):
        if v < 0:
            raise InfeasiblePointError(fs[fid], Fraction(v, q))
    return frozenset(fid for fid, v in enumerate(s) if v == 0)


def tight_facets(x: MetricVector) -> list[FacetInequality]:
    fs = facets(x.n)
    return [fs[i] for i in sorted(incidence(x))]


def incidence_names(x: MetricVector) -> list[str]:
    return [f.name for f in tight_facets(x)]


def _normals_rank(n: int, ids: Iterable[int], expected: int | None = None) -> int:
    rows = normal_matrix(n)
    return integer_rank([rows[i] for i in ids], PairIndexer(n).dimension, expected)


def is_vertex(x: MetricVector) -> bool:
    try:
        tight = incidence(x)
    except InfeasiblePointError:
        return False
    dim = x.dimension
    if len(tight) < dim:
        return False
    return _normals_rank(x.n, tight, expected=dim) == dim


def are_adjacent(u: MetricVector, v: MetricVector, *, check: bool = True) -> bool:
    """True iff u and v span an edge of m_n.

    The normals tight at both points must have rank dimension - 1.  With
    ``check=False`` the caller vouches that both inputs are vertices.
    """
    if u.n != v.n:
        raise ValueError("points from different dimensions")
    if check:
        for w in (u, v):
            if not is_vertex(w):
                raise NotAVertexError(f"not a vertex of m_{w.n}: {w}")
    if u == v:
        return False
    common = incidence(u) & incidence(v)
    dim = u.dimension
    if len(common) < dim - 1:
        return False
    # distinct vertices bound the rank of their common normals by dim - 1
    return _normals_rank(u.n, common, expected=dim - 1) == dim - 1


def is_integral(x: MetricVector) -> bool:
    return all(c == 0 or c == 1 for c in x.coords)


_ASCII_T = re.compile(r"^\s*T\s+(\d+)\s+(\d+)\s*/\s*(\d+)\s*$")
_ASCII_P = re.compile(r"^\s*P\s+(\d+)\s+(\d+)\s+(\d+)\s*$")


def parse_delta_name(text: str, n: int) -> FacetInequality:
    """Parse ``"T i j / apex"`` or ``"P i j k"`` into the facet of m_n."""
    m = _ASCII_T.match(text)
    if m:
        i, j, apex = map(int, m.groups())
        if i > j:
            i, j = j, i
        if len({i, j, apex}) != 3:
            raise DeltaNameError(f"repeated node in {text!r}")
        return facets(n)[facet_id(n, "T", (i, j, apex))]
    m = _ASCII_P.match(text)
    if m:
        triple = tuple(sorted(map(int, m.groups())))
        if len(set(triple)) != 3:
            raise DeltaNameError(f"repeated node in {text!r}")
        return facets(n)[facet_id(n, "P", triple)]
    raise DeltaNameError(f"malformed facet name {text!r}")


def format_delta_name(f: FacetInequality) -> str:
    if f.kind == "T":
        i, j, apex = f.nodes
        return f"T {i} {j} / {apex}"
    return "P {} {} {}".format(*f.nodes)


def latex_delta_name(f: FacetInequality) -> str:
    r"""Delta notation in LaTeX, e.g. ``\Delta_{{\bar 1},2,3}``."""
    parts = []
    for v in f.triple:
        parts.append(f"{{\\bar {v}}}" if v == f.apex else str(v))
    return "\\Delta_{" + ",".join(parts) + "}"


_LATEX = re.compile(r"^\s*\$?\\Delta_\{(.*)\}\$?,?\s*$")
_LATEX_BAR = re.compile(r"^\{?\\bar\s*\{?\s*(\d+)\s*\}?\}?$")


def parse_latex_delta_name(text: str, n: int) -> FacetInequality:
    r"""Parse ``\Delta_{5,{\bar 8},9}`` style names (barred index = apex)."""
    m = _LATEX.match(text)
    if not m:
        raise DeltaNameError(f"malformed Delta name {text!r}")
    tokens = [t.strip() for t in m.group(1).split(",")]
    if len(tokens) != 3:
        raise DeltaNameError(f"expected three indices in {text!r}")
    nodes, apex = [], None
    for t in tokens:
        b = _LATEX_BAR.match(t)
        if b:
            if apex is not None:
                raise DeltaNameError(f"two barred indices in {text!r}")
            apex = int(b.group(1))
            nodes.append(apex)
        elif t.isdigit():
            nodes.append(int(t))
        else:
            raise DeltaNameError(f"bad index {t!r} in {text!r}")
    if apex is None:
        return parse_delta_name("P {} {} {}".format(*nodes), n)
    i, j = sorted(v for v in nodes if v != apex)
    return parse_delta_name(f"T {i} {j} / {apex}", n)
