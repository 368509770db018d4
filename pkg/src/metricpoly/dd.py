"""Double description method for pointed polyhedral cones.

Computes the extreme rays of ``{y : A y <= 0}`` for an integer matrix A of
full column rank.  The cone is seeded with a simplicial cone from a
rank-revealing row basis; remaining rows are inserted one at a time,
choosing the row that cuts off the most current rays.

Rays are kept as primitive integer tuples (Python ints, so no overflow).
numpy is used only to evaluate signs and count common zeros; evaluations
fall back to Python integers whenever int64 could overflow.

Two rays are adjacent when their common zero rows have rank D - 2, where D
is the ambient dimension.  Adjacency modes:

``"certified"`` (default)
    cardinality filter; then pairs for which some third ray vanishes on the
    whole common zero set are rejected (three independent kernel vectors
    bound the rank by D - 3); survivors get the exact rank test.
``"rank"``
    cardinality filter, then the exact rank test on every candidate.
``"combinatorial"``
    cardinality filter, then only the third-ray containment test.

The pure modes exist so the three can be cross-checked.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import integer_rank, primitive, rank_mod_p

log = logging.getLogger(__name__)

_INT64_SAFE = 1 << 62


class DoubleDescriptionError(ValueError):
    pass


def _row_basis(rows: Sequence[Sequence[int]], dim: int) -> list[int]:
    """Greedy first-fit basis of the row space, as row indices."""
    chosen: list[int] = []
    reduced: list[tuple[int, list[Fraction]]] = []   # (pivot column, row)
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for pc, prow in reduced:
            if v[pc]:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, prow)]
        pc = next((c for c in range(dim) if v[c]), None)
        if pc is None:
            continue
        pv = v[pc]
        reduced.append((pc, [a / pv for a in v]))
        chosen.append(idx)
        if len(chosen) == dim:
            break
    return chosen


def _inverse(m: list[list[int]]) -> list[list[Fraction]]:
    size = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(size)]
         for i, row in enumerate(m)]
    for c in range(size):
        piv = next(i for i in range(c, size) if a[i][c])
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for i in range(size):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[size:] for row in a]


def simplicial_rays(basis_rows: list[list[int]]) -> list[tuple[int, ...]]:
    """Extreme rays of {y : B y <= 0} for an invertible B.

    Ray k is tight on every row but k: it is column k of -B^-1.
    """
    inv = _inverse(basis_rows)
    size = len(basis_rows)
    return [primitive([-inv[i][k] for i in range(size)]) for k in range(size)]


def _evaluate(a_rows: np.ndarray, a_py: list[list[int]], rays: list[tuple[int, ...]],
              a_bound: int) -> np.ndarray:
    if not rays:
        return np.zeros((len(a_py), 0), dtype=object)
    r_bound = max(max(abs(v) for v in r) for r in rays)
    if a_bound * r_bound < _INT64_SAFE:
        return a_rows @ np.array(rays, dtype=np.int64).T
    # exact fallback
    return np.array([[sum(x * y for x, y in zip(a, r)) for r in rays] for a in a_py], dtype=object)


_MODES = ("certified", "rank", "combinatorial")
_CHUNK = 2048


class _Adjacency:
    def __init__(self, rows: list[list[int]], dim: int, mode: str):
        if mode not in _MODES:
            raise ValueError(f"unknown adjacency test {mode!r}; expected one of {_MODES}")
        self.rows = rows
        self.dim = dim
        self.mode = mode
        self.rank_tests = 0

    def rank_ok(self, common_rows: Sequence[int]) -> bool:
        self.rank_tests += 1
        sub = [self.rows[i] for i in common_rows]
        need = self.dim - 2
        # two independent rays lie in the kernel, so the rank is at most D - 2
        # and a modular rank reaching D - 2 is already exact
        if rank_mod_p(sub, self.dim) >= need:
            return True
        return integer_rank(sub, self.dim) == need

    def adjacent_pairs(self, zero: np.ndarray, pos: np.ndarray, neg: np.ndarray,
                       inserted: np.ndarray) -> list[tuple[int, int]]:
        """Adjacent (positive, negative) ray pairs; ``zero`` is rays x inserted rows."""
        zf = zero.astype(np.float32)
        counts = zf[pos] @ zf[neg].T
        cand = np.argwhere(counts >= self.dim - 2)
        if not len(cand):
            return []
        p_idx = pos[cand[:, 0]]
        q_idx = neg[cand[:, 1]]
        if self.mode == "rank":
            keep = np.ones(len(cand), dtype=bool)
        else:
            keep = ~self._third_ray(zero, zf, p_idx, q_idx)
        out = []
        for p, q in zip(p_idx[keep], q_idx[keep]):
            p, q = int(p), int(q)
            if self.mode != "combinatorial":
                common = inserted[np.flatnonzero(zero[p] & zero[q])]
                if not self.rank_ok(common):
                    continue
            out.append((p, q))
        return out

    @staticmethod
    def _third_ray(zero: np.ndarray, zf: np.ndarray, p_idx: np.ndarray,
                   q_idx: np.ndarray) -> np.ndarray:
        # True where some other ray vanishes on the whole common zero set
        found = np.zeros(len(p_idx), dtype=bool)
        for lo in range(0, len(p_idx), _CHUNK):
            p = p_idx[lo:lo + _CHUNK]
            q = q_idx[lo:lo + _CHUNK]
            common = zero[p] & zero[q]
            size = common.sum(axis=1)
            covered = (common.astype(np.float32) @ zf.T) == size[:, None]
            rows = np.arange(len(p))
            covered[rows, p] = False
            covered[rows, q] = False
            found[lo:lo + _CHUNK] = covered.any(axis=1)
        return found


def double_description(rows: Sequence[Sequence[int]], *,
                       initial: Sequence[int] | None = None,
                       adjacency: str = "certified",
                       stats: dict | None = None) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {y : row . y <= 0 for every row}.

    Parameters
    ----------
    rows : integer matrix with full column rank
    initial : optional indices of a row basis to seed the simplicial cone
    adjacency : ``"certified"``, ``"rank"`` or ``"combinatorial"``
    stats : if given, filled with iteration counts and peak ray count

    Returns
    -------
    Sorted list of primitive integer rays.
    """
    a_py = [list(map(int, r)) for r in rows]
    if not a_py:
        raise DoubleDescriptionError("empty constraint system")
    dim = len(a_py[0])
    adj = _Adjacency(a_py, dim, adjacency)
    if initial is None:
        initial = _row_basis(a_py, dim)
    initial = list(initial)
    if len(initial) != dim or integer_rank([a_py[i] for i in initial], dim) != dim:
        raise DoubleDescriptionError("constraint system does not define a pointed cone")

    a_bound = max(1, dim * max(abs(v) for r in a_py for v in r))
    a_np = np.array(a_py, dtype=np.int64)

    rays = simplicial_rays([a_py[i] for i in initial])
    inserted = list(initial)
    seeded = set(initial)
    remaining = [i for i in range(len(a_py)) if i not in seeded]
    peak = len(rays)
    steps = 0

    while remaining:
        values = _evaluate(a_np, a_py, rays, a_bound)
        rem = np.array(remaining)
        # max cutoff: insert the row violated by the most rays
        cutoff = (values[rem] > 0).sum(axis=1)
        pick = int(rem[int(np.argmax(cutoff))])
        v = values[pick]
        pos = np.flatnonzero(v > 0)
        neg = np.flatnonzero(v < 0)
        new_rays: list[tuple[int, ...]] = []
        if len(pos) and len(neg):
            ins = np.array(inserted)
            zero = (values[ins] == 0).T
            for p, q in adj.adjacent_pairs(zero, pos, neg, ins):
                vp, vq = int(v[p]), int(v[q])
                new_rays.append(primitive([vp * b - vq * a for a, b in zip(rays[p], rays[q])]))
        rays = [rays[k] for k in range(len(rays)) if v[k] <= 0] + new_rays
        inserted.append(pick)
        remaining.remove(pick)
        peak = max(peak, len(rays))
        steps += 1
        log.debug("dd step %d: row %d, -%d +%d rays -> %d", steps, pick, len(pos),
                  len(new_rays), len(rays))

    if stats is not None:
        stats.update(steps=steps, peak_rays=peak, rays=len(rays), rank_tests=adj.rank_tests)
    out = sorted(set(rays))
    if len(out) != len(rays):
        raise DoubleDescriptionError("duplicate rays produced; adjacency test inconsistent")
    return out
