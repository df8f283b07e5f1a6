# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Translations of a power of S3
#
# On `H^n` with `H = S3`, left and right translations generate the maps
# `x -> a x b`.  Because `S3` has trivial center, each coordinate fibre
# `{x : x_alpha = h}` is an intersection of sets `{x : a x != x b}`, so the
# generated topology is discrete.

# %%
from __future__ import annotations

import numpy as np

from gtopology import build_scenario, generate_topology, verify_projection_identity
from gtopology.groups import named_group

s3 = named_group("S3")
print("center:", s3.center())
print(np.array(s3.table))

# %%
print(all(verify_projection_identity(s3, 2, a, h) for a in range(2) for h in range(6)))

# %%
sc = build_scenario("group-power", n=2)
print(len(sc.generators), "generators,", len(sc.closure), "closure maps,", len(sc.subbase), "subbasic sets")
top = generate_topology(sc.subbase)
print("discrete:", top.is_discrete)

# %% [markdown]
# The same holds when inversion or pointwise products are added, checked
# here on `n = 1`.

# %%
for monoid in ("s", "q", "p"):
    other = build_scenario("group-power", n=1, monoid=monoid, max_elements=500)
    print(monoid, len(other.closure), generate_topology(other.subbase).is_discrete)
