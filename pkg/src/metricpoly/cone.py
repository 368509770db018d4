"""Neighbours of a vertex of m_n by tangent cone and ray shooting.

For a vertex v the tangent cone is {y : a_f . y <= 0 for the facets f tight
at v}.  Its extreme rays are the edge directions at v; walking from v along
one until the first non-tight facet is reached gives the neighbour on that
edge.  For a quasi-simple vertex (dimension + 1 tight facets) the cone has
dimension + 1 rays and the computation is a single double description step.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dd import double_description
from .polytope import (
    MetricVector, NotAVertexError, all_cuts, are_adjacent, cut_vector, facets,
    incidence, is_vertex, normal_matrix,
)

__all__ = [
    "TangentCone", "UnboundedRayError", "tangent_cone", "ray_shoot",
    "neighbors", "adjacent_to_some_cut", "cut_neighbors",
]


class UnboundedRayError(RuntimeError):
    """A ray leaves m_n without crossing a facet.  Cannot happen for a polytope."""


@dataclass(frozen=True)
class TangentCone:
    vertex: MetricVector
    tight: tuple[int, ...]
    rays: tuple[tuple[int, ...], ...]

    @property
    def is_quasi_simple(self) -> bool:
        return len(self.tight) == self.vertex.dimension + 1

    def __len__(self) -> int:
        return len(self.rays)


def _require_vertex(v: MetricVector) -> None:
    if not is_vertex(v):
        raise NotAVertexError(f"not a vertex of m_{v.n}: {v}")


def tangent_cone(v: MetricVector, *, adjacency: str = "certified") -> TangentCone:
    """Extreme rays of the cone of feasible directions at a vertex.

    Rays are primitive integer vectors (positive scaling only; a ray's
    direction is meaningful, so no sign normalisation is applied), sorted.
    """
    _require_vertex(v)
    tight = tuple(sorted(incidence(v)))
    normals = normal_matrix(v.n)
    rays = double_description([normals[i] for i in tight], adjacency=adjacency)
    return TangentCone(v, tight, tuple(rays))


def ray_shoot(v: MetricVector, r: Sequence[int | Fraction]) -> MetricVector:
    """First point of m_n's boundary hit moving from v along r.

    Only facets with a_f . r > 0 can block the ray; the step length is the
    smallest slack_f(v) / (a_f . r) among them.
    """
    if len(r) != v.dimension:
        raise ValueError(f"direction has {len(r)} entries, expected {v.dimension}")
    x = v.coords
    best: Fraction | None = None
    for f in facets(v.n):
        rate = sum(c * r[i] for i, c in f.support)
        if rate > 0:
            slack = f.rhs - sum(c * x[i] for i, c in f.support)
            t = Fraction(slack) / rate
            if best is None or t < best:
                best = t
    if best is None:
        raise UnboundedRayError(f"ray {tuple(r)} from {v} is not blocked by any facet")
    return MetricVector(v.n, tuple(xi + best * ri for xi, ri in zip(x, r)))


def neighbors(v: MetricVector, *, cone: TangentCone | None = None) -> list[MetricVector]:
    """All vertices adjacent to v, sorted by coordinates."""
    if cone is None:
        cone = tangent_cone(v)
    return sorted({ray_shoot(v, r) for r in cone.rays})


def cut_neighbors(v: MetricVector) -> list[MetricVector]:
    """The cut vertices adjacent to v, by the pairwise rank test."""
    _require_vertex(v)
    return [c for c in (cut_vector(s) for s in all_cuts(v.n))
            if c != v and are_adjacent(v, c, check=False)]


def adjacent_to_some_cut(v: MetricVector) -> bool:
    """Whether v has a cut among its neighbours.

    Tests v against every cut with the rank criterion, so degenerate
    vertices need no cone computation.
    """
    _require_vertex(v)
    for s in all_cuts(v.n):
        c = cut_vector(s)
        if c != v and are_adjacent(v, c, check=False):
            return True
    return False
