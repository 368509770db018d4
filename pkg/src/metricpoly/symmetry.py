"""Symmetries of m_n: node permutations and switching reflections.

A permutation ``perm`` is a tuple with ``perm[i - 1]`` the image of node i.
It moves the coordinate at pair {i, j} to pair {perm(i), perm(j)}.  The
switching reflection by a cut delta(S) replaces x_ij by 1 - x_ij on the
pairs of the cut.  A :class:`SymmetryElement` applies its permutation
first, then its switching.

For n >= 5 these generate the whole symmetry group of m_n, of order
n! 2^(n-1).  For n = 3, 4 this module works with the same subgroup and does
not claim it is the full isometry group.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Iterator, Sequence

from .polytope import CutSet, MetricVector, PairIndexer, _pairs, all_cuts

__all__ = [
    "SymmetryElement", "CapabilityError", "apply_permutation", "apply_switching",
    "canonical_form", "orbit", "group_order", "random_element", "group_elements",
    "MAX_ORBIT_N",
]

MAX_ORBIT_N = 6


class CapabilityError(ValueError):
    """The request is too large for this implementation."""


def _check_perm(perm: Sequence[int], n: int) -> tuple[int, ...]:
    perm = tuple(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{n}")
    return perm


def apply_permutation(perm: Sequence[int], x: MetricVector) -> MetricVector:
    n = x.n
    perm = _check_perm(perm, n)
    ix = PairIndexer(n)
    out = [Fraction(0)] * len(x.coords)
    for (i, j), value in zip(_pairs(n), x.coords):
        out[ix(perm[i - 1], perm[j - 1])] = value
    return MetricVector(n, tuple(out))


def apply_switching(s: CutSet, x: MetricVector) -> MetricVector:
    if s.n != x.n:
        raise ValueError(f"cut is for n={s.n}, point has n={x.n}")
    return MetricVector(x.n, tuple(1 - c if s.separates(i, j) else c
                                   for (i, j), c in zip(_pairs(x.n), x.coords)))


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """p o q: apply q first."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def invert(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, pi in enumerate(p, start=1):
        inv[pi - 1] = i
    return tuple(inv)


@dataclass(frozen=True)
class SymmetryElement:
    perm: tuple[int, ...]
    switch: CutSet

    def __post_init__(self):
        object.__setattr__(self, "perm", _check_perm(self.perm, self.switch.n))

    @classmethod
    def identity(cls, n: int) -> "SymmetryElement":
        return cls(tuple(range(1, n + 1)), CutSet.of(n))

    @property
    def n(self) -> int:
        return self.switch.n

    def __call__(self, x: MetricVector) -> MetricVector:
        return apply_switching(self.switch, apply_permutation(self.perm, x))

    def __matmul__(self, other: "SymmetryElement") -> "SymmetryElement":
        """self @ other applies other first.

        Uses sigma_S o pi = pi o sigma_{pi^-1(S)} to move switchings left.
        """
        perm = compose(self.perm, other.perm)
        moved = CutSet.of(self.n, (self.perm[v - 1] for v in other.switch.members))
        return SymmetryElement(perm, moved.symmetric_difference(self.switch))


def group_order(n: int) -> int:
    return factorial(n) * 2 ** (n - 1)


def group_elements(n: int) -> Iterator[SymmetryElement]:
    cuts = all_cuts(n)
    for perm in permutations(range(1, n + 1)):
        for s in cuts:
            yield SymmetryElement(perm, s)


def random_element(n: int, rng: random.Random) -> SymmetryElement:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    members = [v for v in range(2, n + 1) if rng.random() < 0.5]
    return SymmetryElement(tuple(perm), CutSet.of(n, members))


def orbit(x: MetricVector, *, max_n: int = MAX_ORBIT_N) -> set[MetricVector]:
    """Every image of x under the group, by closure under generators."""
    n = x.n
    if n > max_n:
        raise CapabilityError(f"exhaustive orbits are limited to n <= {max_n}, got n={n}")
    gens: list = []
    for i in range(1, n):
        p = list(range(1, n + 1))
        p[i - 1], p[i] = p[i], p[i - 1]
        gens.append(("perm", tuple(p)))
    gens.extend(("switch", CutSet.of(n, [v])) for v in range(2, n + 1))
    seen = {x}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for kind, g in gens:
            z = apply_permutation(g, y) if kind == "perm" else apply_switching(g, y)
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return seen


def _switch_choices(x: MetricVector, first: int) -> list[tuple[int, ...]]:
    """Switchings that make every x[first, u] as small as possible.

    Returns the distinct switched coordinate tuples.  A node u goes to the
    far side of the cut when x[first, u] > 1/2; entries equal to 1/2 may go
    either way.
    """
    n = x.n
    ix = PairIndexer(n)
    half = Fraction(1, 2)
    forced, free = [], []
    for u in range(1, n + 1):
        if u == first:
            continue
        value = x.coords[ix(first, u)]
        if value > half:
            forced.append(u)
        elif value == half:
            free.append(u)
    seen = {}
    for bits in product((False, True), repeat=len(free)):
        side = set(forced) | {u for u, b in zip(free, bits) if b}
        y = tuple(1 - c if ((i in side) != (j in side)) else c
                  for (i, j), c in zip(_pairs(n), x.coords))
        seen.setdefault(y, None)
    return list(seen)


def _best_relabelling(y: tuple, n: int, first: int, best: list | None) -> list | None:
    """Lexicographically least relabelling of y with ``first`` sent to node 1.

    Backtracking over the order in which old nodes are placed.  The node
    placed at position k must minimise its key (y[pos1, u], ..., y[pos_{k-1}, u])
    among the unplaced nodes, since placing anything larger is beaten by a
    swap.  Ties branch, except between twins (nodes whose rows agree off
    their mutual entry), which give identical images.
    """
    val = [[None] * (n + 1) for _ in range(n + 1)]
    for (i, j), c in zip(_pairs(n), y):
        val[i][j] = val[j][i] = c
    pairs = _pairs(n)

    def image(order: list[int]) -> list:
        return [val[order[i - 1]][order[j - 1]] for i, j in pairs]

    def twins(u: int, w: int) -> bool:
        return all(val[u][t] == val[w][t] for t in range(1, n + 1) if t != u and t != w)

    result = best

    def recurse(order: list[int], rest: list[int]) -> None:
        nonlocal result
        if not rest:
            img = image(order)
            if result is None or img < result:
                result = img
            return
        keys = {u: tuple(val[p][u] for p in order) for u in rest}
        low = min(keys.values())
        cands = [u for u in rest if keys[u] == low]
        reps: list[int] = []
        for u in cands:
            if not any(twins(u, w) for w in reps):
                reps.append(u)
        for u in reps:
            nxt = order + [u]
            if result is not None:
                # entries fixed so far: rows 1..k-1 restricted to placed nodes
                # are a lex prefix only within row 1; compare that prefix
                k = len(nxt)
                row1 = [val[nxt[0]][nxt[t]] for t in range(1, k)]
                if row1 > result[:k - 1]:
                    continue
            recurse(nxt, [w for w in rest if w != u])

    recurse([first], [u for u in range(1, n + 1) if u != first])
    return result


def canonical_form(x: MetricVector) -> MetricVector:
    """The lexicographically least point in the orbit of x."""
    n = x.n
    ix = PairIndexer(n)
    # row 1 of the result is the sorted vector of min(x, 1 - x) from its node
    rows = {}
    for first in range(1, n + 1):
        rows[first] = sorted(min(x.coords[ix(*sorted((first, u)))],
                                 1 - x.coords[ix(*sorted((first, u)))])
                             for u in range(1, n + 1) if u != first)
    low = min(rows.values())
    best = None
    for first in range(1, n + 1):
        if rows[first] != low:
            continue
        for y in _switch_choices(x, first):
            best = _best_relabelling(y, n, first, best)
    assert best is not None
    return MetricVector(n, tuple(best))
