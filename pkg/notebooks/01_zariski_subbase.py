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
# # Difference sets and isolated points
#
# A monoid of self-maps of a set determines a family of difference sets
# `{x : f(x) != g(x)}` and `{x : f(x) != c}`.  The topology they generate
# is discrete exactly when every point is cut out by finitely many of them.
# Here we compare three monoids on the naturals and the integers.

# %%
from __future__ import annotations

import numpy as np

from gtopology import build_scenario, discreteness_report, isolation, pseudocharacter

# %% [markdown]
# ## Finitely supported permutations
#
# Adjacent transpositions of `0..8` generate a large closure.  Each moved
# point needs two difference sets: a transposition's support and one
# excluded constant.

# %%
perms = build_scenario("finitary-perms")
sb = perms.subbase
print(f"closure: {len(perms.closure)} maps, complete={perms.closure.complete}")
print(f"subbase: {len(sb)} distinct sets out of {sb.candidates} candidates")
for x in (0, 4, 8):
    print(x, [str(t) for t in isolation(sb, x).members], "psi =", pseudocharacter(sb, x).value)

# %% [markdown]
# Sizes of the difference sets through a point, as a quick histogram.

# %%
sizes = np.array([len(s.set) if s.set.is_finite else -1 for s in sb.members(0)])
finite = sizes[sizes >= 0]
print("finite members through 0:", finite.size, "cofinite:", int((sizes < 0).sum()))
print("size counts:", dict(zip(*np.unique(finite, return_counts=True))))

# %% [markdown]
# ## Shifts of the integers
#
# Two distinct shifts never agree, and `x + b != c` fails at one point, so
# every nonempty difference set is cofinite and nothing is isolated.

# %%
shifts = build_scenario("int-shifts-left")
rep = discreteness_report(shifts.subbase, range(-3, 4))
print(rep["summary"])
print({r["point"]: r["psi"]["value"] for r in rep["points"]})

# %% [markdown]
# ## Max-shifts of the naturals
#
# `{x : max(x, n+1) != x}` is `{0, ..., n}`; one constant set then removes
# everything below `n`.  The shift bound itself stays unisolated at this
# truncation.

# %%
natmax = build_scenario("nat-max")
for n in range(0, 9, 2):
    cert = isolation(natmax.subbase, n)
    print(n, None if cert is None else [str(t) for t in cert.members])
