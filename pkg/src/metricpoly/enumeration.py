"""Vertex enumeration of m_n for small n, the vertex graph, and the checks
built on it (diameter, cut domination, connectivity of fractional vertices,
orbit structure).
"""
from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .cone import adjacent_to_some_cut
from .dd import double_description
from .exact import integer_rank
from .polytope import (
    MetricVector, PairIndexer, facets, incidence, is_integral, normal_matrix,
)
from .symmetry import CapabilityError, canonical_form, group_order

__all__ = [
    "VertexSet", "VertexGraph", "DisconnectedGraphError",
    "enumerate_vertices", "build_graph", "diameter", "check_domination",
    "check_fractional_connectivity", "orbit_summary",
    "DominationReport", "ConnectivityReport", "OrbitReport",
]

log = logging.getLogger(__name__)

MAX_DEFAULT_N = 6
MAX_LONG_N = 7


class DisconnectedGraphError(ValueError):
    def __init__(self, u: int, v: int):
        self.pair = (u, v)
        super().__init__(f"vertex graph is disconnected: no path from vertex {u} to vertex {v}")


@dataclass(frozen=True)
class VertexSet:
    n: int
    vertices: tuple[MetricVector, ...]

    def __post_init__(self):
        vs = tuple(sorted(set(self.vertices)))
        if any(v.n != self.n for v in vs):
            raise ValueError("vertex of the wrong dimension in vertex set")
        object.__setattr__(self, "vertices", vs)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, k: int) -> MetricVector:
        return self.vertices[k]

    @property
    def cuts(self) -> list[int]:
        return [k for k, v in enumerate(self.vertices) if is_integral(v)]

    @property
    def fractional(self) -> list[int]:
        return [k for k, v in enumerate(self.vertices) if not is_integral(v)]


@dataclass
class VertexGraph:
    vertex_set: VertexSet
    edges: list[list[int]]

    @property
    def edge_count(self) -> int:
        return sum(map(len, self.edges)) // 2

    def degree(self, k: int) -> int:
        return len(self.edges[k])


def _homogenised_system(n: int) -> tuple[list[list[int]], list[int]]:
    """Rows (-rhs, normal) of m_n, preceded by a bounding simplex.

    The simplex {x >= 0, sum x <= d} contains the unit box and hence m_n; its
    d + 1 rows seed the double description.
    """
    d = PairIndexer(n).dimension
    rows = []
    for i in range(d):
        row = [0] * (d + 1)
        row[i + 1] = -1
        rows.append(row)
    rows.append([-d] + [1] * d)
    seed = list(range(d + 1))
    for f in facets(n):
        rows.append([-f.rhs] + f.normal_row())
    return rows, seed


def enumerate_vertices(n: int, *, allow_long: bool = False, adjacency: str = "certified",
                       stats: dict | None = None) -> VertexSet:
    """All vertices of m_n by incremental double description.

    Supported for 3 <= n <= 6; n = 7 needs ``allow_long=True`` and runs for
    hours.
    """
    limit = MAX_LONG_N if allow_long else MAX_DEFAULT_N
    if not 3 <= n <= limit:
        hint = "" if allow_long or n != MAX_LONG_N else " (pass allow_long=True for n=7)"
        raise CapabilityError(f"vertex enumeration supports 3 <= n <= {limit}, got {n}{hint}")
    rows, seed = _homogenised_system(n)
    rays = double_description(rows, initial=seed, adjacency=adjacency, stats=stats)
    vertices = []
    for r in rays:
        t = r[0]
        if t <= 0:
            raise AssertionError(f"ray with t={t} in the homogenised cone of a polytope")
        vertices.append(MetricVector(n, tuple(Fraction(c, t) for c in r[1:])))
    return VertexSet(n, tuple(vertices))


def _incidence_matrix(vs: VertexSet) -> np.ndarray:
    m = np.zeros((len(vs), len(facets(vs.n))), dtype=np.float32)
    for k, v in enumerate(vs):
        m[k, list(incidence(v))] = 1
    return m


def _adjacent_chunk(args) -> list[tuple[int, int]]:
    n, tights, pairs = args
    normals = normal_matrix(n)
    dim = PairIndexer(n).dimension
    out = []
    for i, j in pairs:
        common = sorted(tights[i] & tights[j])
        if integer_rank([normals[f] for f in common], dim, expected=dim - 1) == dim - 1:
            out.append((i, j))
    return out


def build_graph(vs: VertexSet, *, workers: int = 1) -> VertexGraph:
    """Vertex graph of m_n restricted to ``vs``, by the pairwise rank test.

    Pairs sharing fewer than dimension - 1 tight facets are skipped before
    the rank test.  With ``workers > 1`` the rank tests run in a process
    pool; the result does not depend on the worker count.
    """
    n = vs.n
    dim = PairIndexer(n).dimension
    tights = [incidence(v) for v in vs]
    inc = _incidence_matrix(vs)
    shared = inc @ inc.T
    cand = [(int(i), int(j)) for i, j in np.argwhere(np.triu(shared >= dim - 1, k=1))]
    if workers > 1 and len(cand) > 1000:
        chunks = [cand[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            found = [p for part in pool.map(_adjacent_chunk, [(n, tights, c) for c in chunks])
                     for p in part]
    else:
        found = _adjacent_chunk((n, tights, cand))
    edges: list[list[int]] = [[] for _ in vs]
    for i, j in sorted(found):
        edges[i].append(j)
        edges[j].append(i)
    for adj in edges:
        adj.sort()
    return VertexGraph(vs, edges)


def _bfs(edges: Sequence[Sequence[int]], start: int, allowed: set[int] | None = None) -> dict[int, int]:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in edges[u]:
            if w not in dist and (allowed is None or w in allowed):
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def diameter(g: VertexGraph) -> int:
    """Largest BFS eccentricity.  Raises DisconnectedGraphError."""
    size = len(g.edges)
    best = 0
    for s in range(size):
        dist = _bfs(g.edges, s)
        if len(dist) < size:
            missing = next(v for v in range(size) if v not in dist)
            raise DisconnectedGraphError(s, missing)
        best = max(best, max(dist.values()))
    return best


def _components(edges: Sequence[Sequence[int]], nodes: Iterable[int]) -> list[list[int]]:
    allowed = set(nodes)
    seen: set[int] = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        comp = sorted(_bfs(edges, s, allowed))
        seen.update(comp)
        comps.append(comp)
    return comps


@dataclass
class DominationReport:
    n: int
    checked: int
    violators: list[MetricVector] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violators

    def as_dict(self) -> dict:
        return {"n": self.n, "fractional_checked": self.checked,
                "violators": [str(v) for v in self.violators], "holds": self.holds}

    def summary(self) -> str:
        if self.holds:
            return f"domination holds: all {self.checked} fractional vertices are adjacent to a cut"
        return f"domination fails: {len(self.violators)} of {self.checked} fractional vertices have no cut neighbour"


def _domination_chunk(vertices: list[MetricVector]) -> list[bool]:
    return [adjacent_to_some_cut(v) for v in vertices]


def check_domination(vs: VertexSet | Iterable[MetricVector], *, workers: int = 1) -> DominationReport:
    """Check that every fractional vertex has a cut among its neighbours."""
    vertices = list(vs)
    n = vertices[0].n if vertices else getattr(vs, "n", 0)
    frac = [v for v in vertices if not is_integral(v)]
    if workers > 1 and len(frac) > 1:
        chunks = [frac[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_domination_chunk, chunks))
        ok = {}
        for chunk, res in zip(chunks, results):
            ok.update(zip(chunk, res))
        flags = [ok[v] for v in frac]
    else:
        flags = _domination_chunk(frac)
    return DominationReport(n, len(frac), sorted(v for v, f in zip(frac, flags) if not f))


@dataclass
class ConnectivityReport:
    n: int
    fractional: int
    components: list[list[int]]

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @property
    def verdict(self) -> str:
        if not self.fractional:
            return "empty"
        return "connected" if self.connected else "disconnected"

    def as_dict(self) -> dict:
        return {"n": self.n, "fractional_vertices": self.fractional,
                "components": len(self.components),
                "component_sizes": [len(c) for c in self.components],
                "verdict": self.verdict}

    def summary(self) -> str:
        if not self.fractional:
            return "fractional subgraph: empty (no fractional vertices)"
        sizes = ", ".join(str(len(c)) for c in self.components)
        return (f"fractional subgraph: {self.verdict}, {len(self.components)} component(s) "
                f"of sizes {sizes}")


def check_fractional_connectivity(g: VertexGraph) -> ConnectivityReport:
    """Components of the graph left after deleting every cut vertex."""
    frac = g.vertex_set.fractional
    return ConnectivityReport(g.vertex_set.n, len(frac), _components(g.edges, frac))


@dataclass
class OrbitReport:
    n: int
    representatives: list[MetricVector]
    sizes: list[int]

    @property
    def count(self) -> int:
        return len(self.representatives)

    def as_dict(self) -> dict:
        return {"n": self.n, "orbits": self.count,
                "orbit_sizes": self.sizes,
                "representatives": [str(r) for r in self.representatives]}

    def summary(self) -> str:
        return f"{self.count} orbit(s) of sizes {', '.join(map(str, self.sizes))}"


def orbit_summary(vs: VertexSet) -> OrbitReport:
    """Partition a vertex set into orbits of the symmetry group."""
    if vs.n > 6:
        raise CapabilityError(f"orbit summaries are limited to n <= 6, got n={vs.n}")
    by_canon: dict[MetricVector, int] = {}
    for v in vs:
        c = canonical_form(v)
        by_canon[c] = by_canon.get(c, 0) + 1
    reps = sorted(by_canon)
    sizes = [by_canon[r] for r in reps]
    order = group_order(vs.n)
    for r, s in zip(reps, sizes):
        if order % s:
            raise AssertionError(f"orbit size {s} does not divide the group order {order}")
    return OrbitReport(vs.n, reps, sizes)
