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
# # Topologies from a tail filter
#
# The tails `{x_0} | {x_b : b > a}` of a special sequence generate a
# filter.  A set `U` is open when every map sending `x_0` into `U` pulls
# `U` back onto a set containing some tail.  Everything below is computed
# on a 24-point prefix and a 20-map closure.

# %%
from __future__ import annotations

from gtopology import KSet, build_scenario
from gtopology import filtertop as ft

sc = build_scenario("int-shifts")
seq = sc.special_sequence()
cl = sc.closure
fb = ft.tail_filter(seq)
Z = sc.carrier
print(len(fb.base), "tails; core", fb.core())

# %% [markdown]
# ## Openness
#
# A tail padded with everything off the support is open; the singleton
# `{x_0}` is not, because the identity pulls it back to itself.

# %%
outside = ~fb.support
print(ft.is_open(fb.base[3] | outside, fb, cl).to_json())
print(ft.is_open(KSet.singleton(Z, seq.x0), fb, cl).to_json())

# %% [markdown]
# ## Neighbourhood chains and separation

# %%
chain = ft.neighborhood_chain(fb.base[0], fb, cl, depth=4)
print("chain sizes:", [len(u) for u in chain])
res = ft.separate(KSet.singleton(Z, seq.points[3]), KSet.finite(Z, seq.points[5:7]), fb, cl, depth=6)
print("disjoint at each depth:", res.disjoint_at)

# %% [markdown]
# ## T1 cutoffs
#
# For a point `x`, each map that does not send `x_0` to `x` avoids `x`
# from some index on.

# %%
cuts = ft.t1_witness(seq.points[5], fb, cl)
print([(c.map_index, c.cutoff) for c in cuts[:8]])
