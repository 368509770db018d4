"""Built-in vertices.

``laurent-poljak-counterexample`` is a quasi-simple fractional vertex of
m_9 (37 tight facets in dimension 36) none of whose 37 neighbours is a
cut.  Its tight facets and neighbours ship as reference data files: Delta
names in LaTeX and scaled integer vectors.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .polytope import FacetInequality, MetricVector, parse_latex_delta_name

COUNTEREXAMPLE = "laurent-poljak-counterexample"

_COUNTEREXAMPLE_NUMERATORS = (
    2, 2, 3, 3, 4, 4, 5, 5, 4, 3, 5, 6, 6, 3, 3, 5, 5, 2,
    4, 3, 5, 6, 3, 3, 6, 6, 5, 3, 2, 6, 6, 3, 3, 5, 3, 4,
)


@dataclass(frozen=True)
class EmbeddedFixture:
    name: str
    vertex: MetricVector
    expected_incidence: tuple[FacetInequality, ...]
    expected_neighbors: tuple[MetricVector, ...]


def _read(name: str) -> str:
    return resources.files("metricpoly").joinpath("data", name).read_text(encoding="utf-8")


_SCALED = re.compile(r"^1/(\d+)\s*\((.*)\)$")


def parse_scaled_vector(line: str, n: int) -> MetricVector:
    """``1/q (a, b, ...)`` -> the vector (a/q, b/q, ...)."""
    m = _SCALED.match(line.strip())
    if not m:
        raise ValueError(f"not a scaled vector: {line!r}")
    q = int(m.group(1))
    return MetricVector(n, tuple(Fraction(int(t), q) for t in m.group(2).split(",")))


@lru_cache(maxsize=None)
def counterexample() -> EmbeddedFixture:
    n = 9
    vertex = MetricVector.from_scaled(n, 9, _COUNTEREXAMPLE_NUMERATORS)
    tight = tuple(parse_latex_delta_name(ln, n)
                  for ln in _read("counterexample_incidence.txt").splitlines() if ln.strip())
    nbrs = tuple(parse_scaled_vector(ln, n)
                 for ln in _read("counterexample_neighbors.txt").splitlines() if ln.strip())
    return EmbeddedFixture(COUNTEREXAMPLE, vertex, tight, nbrs)


FIXTURES = {COUNTEREXAMPLE: counterexample}


def get_fixture(name: str) -> EmbeddedFixture:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}") from None
