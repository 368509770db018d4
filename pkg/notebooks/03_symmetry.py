"""
Orbits under permutations and switchings
========================================
"""

# %%
import random
from collections import Counter

from metricpoly.enumeration import enumerate_vertices, orbit_summary
from metricpoly.fixtures import counterexample
from metricpoly.polytope import CutSet, MetricVector, cut_vector, incidence
from metricpoly.symmetry import apply_switching, canonical_form, group_order, random_element

# %% [markdown]
# Switching by a cut maps the zero vector onto that cut, so all cuts share
# one orbit and canonicalise to zero.

# %%
s = CutSet.of(6, [2, 5])
print(apply_switching(s, MetricVector.zero(6)) == cut_vector(s))
print(canonical_form(cut_vector(s)))

# %%
for n in (5, 6):
    report = orbit_summary(enumerate_vertices(n))
    print(f"m_{n} (group order {group_order(n)}):", report.summary())
    for rep, size in zip(report.representatives, report.sizes):
        print(f"  {size:>4}  tight={len(incidence(rep)):>3}  {rep}")

# %% [markdown]
# Canonical forms work for n = 9 too, where orbits are too big to list.

# %%
v = counterexample().vertex
c = canonical_form(v)
rng = random.Random(0)
images = Counter(canonical_form(random_element(9, rng)(v)) == c for _ in range(20))
print(c)
print(images)
