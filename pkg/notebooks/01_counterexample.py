"""
A fractional vertex of m_9 with no cut neighbour
================================================

Walk through the three checks: tight facets, tangent cone, ray shooting.
Run with ``python3 notebooks/01_counterexample.py`` or open as a percent
notebook.
"""

# %%
from metricpoly.cone import adjacent_to_some_cut, neighbors, tangent_cone
from metricpoly.fixtures import counterexample
from metricpoly.polytope import incidence_names, is_integral, is_vertex

fx = counterexample()
v = fx.vertex
print(v)
print("vertex:", is_vertex(v), " dimension:", v.dimension)

# %% [markdown]
# Incidence.  37 facets are tight, one more than the dimension.

# %%
names = incidence_names(v)
print(len(names), "tight facets")
print(", ".join(names[:8]), "...")
assert {f.name for f in fx.expected_incidence} == set(names)

# %% [markdown]
# The tangent cone is quasi-simplicial: 37 extreme rays.

# %%
cone = tangent_cone(v)
print(len(cone.rays), "rays; quasi-simple:", cone.is_quasi_simple)

# %% [markdown]
# Shoot along each ray to the next vertex.  None of them is a cut.

# %%
nb = neighbors(v, cone=cone)
for w in nb[:5]:
    q, nums = w.scaled()
    print(f"1/{q}", nums)
print("...")
print("integral neighbours:", sum(is_integral(w) for w in nb))
assert set(nb) == set(fx.expected_neighbors)

# %% [markdown]
# Independent of the cone: test every one of the 256 cuts with the rank
# criterion.

# %%
print("adjacent to some cut:", adjacent_to_some_cut(v))
