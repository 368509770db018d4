"""
Vertices and graphs of m_3 .. m_6
=================================
"""

# %%
import time

import numpy as np

from metricpoly.enumeration import (
    build_graph, check_domination, check_fractional_connectivity, diameter, enumerate_vertices,
)

# %%
results = {}
for n in range(3, 7):
    start = time.perf_counter()
    vs = enumerate_vertices(n)
    g = build_graph(vs)
    results[n] = (vs, g)
    print(f"m_{n}: {len(vs)} vertices, {len(vs.cuts)} cuts, {g.edge_count} edges, "
          f"diameter {diameter(g)}  [{time.perf_counter() - start:.1f} s]")

# %% [markdown]
# Degree distribution, split by vertex type.

# %%
for n, (vs, g) in results.items():
    deg = np.array([g.degree(k) for k in range(len(vs))])
    cut_deg = np.unique(deg[vs.cuts]).tolist()
    frac_deg = np.unique(deg[vs.fractional]).tolist() if vs.fractional else []
    print(f"m_{n}: cut degrees {cut_deg}, fractional degrees {frac_deg}")

# %% [markdown]
# Every fractional vertex of m_5 and m_6 touches a cut.  Removing the cuts
# leaves m_6's fractional vertices connected, while m_5 falls apart.

# %%
for n in (5, 6):
    vs, g = results[n]
    print(f"m_{n}:", check_domination(vs).summary())
    print(f"m_{n}:", check_fractional_connectivity(g).summary())
