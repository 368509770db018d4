"""Independent reference computations used by several test modules."""
from itertools import combinations
from math import comb

from metricpoly.exact import rank, solve
from metricpoly.polytope import MetricVector, facets, is_feasible


def brute_force_vertices(n):
    """Every feasible basic solution: solve each C(n,2)-subset of facets."""
    fs = facets(n)
    d = comb(n, 2)
    found = set()
    for subset in combinations(fs, d):
        rows = [f.normal_row() for f in subset]
        if rank(rows, d) < d:
            continue
        x = solve(rows, [f.rhs for f in subset], d)
        point = MetricVector(n, tuple(x))
        if is_feasible(point):
            found.add(point)
    return found
