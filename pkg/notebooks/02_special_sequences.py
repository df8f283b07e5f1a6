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
# # Greedy special sequences
#
# A special sequence keeps the values of the enumerated maps apart: maps
# that differ at `x_0` must differ at every later point, and later points
# must avoid the finitely many values already taken.  The greedy builder
# picks the least admissible point at each step.

# %%
from __future__ import annotations

import numpy as np

from gtopology import Affine, IntLine, SpecialSequence, build_special, closure, verify_special

Z = IntLine()

# %%
shifts = closure([Affine(Z, 1, b) for b in range(-4, 5) if b], max_word_len=8, max_elements=20)
seq = build_special(shifts, 0, 24, (0, 4096))
print(seq.points)
print(verify_special(seq).to_json())

# %% [markdown]
# Gaps between consecutive points grow with the number of constraints.

# %%
gaps = np.diff(seq.points)
print("gaps:", gaps.tolist())
print("mean gap in the second half:", gaps[len(gaps) // 2 :].mean())

# %% [markdown]
# ## A broken sequence
#
# Choosing `x_2 = 4` after `0, 5` lets the shift `x - 4` send `x_2` onto
# `x_0`, although it moves `x_0` itself elsewhere.

# %%
print(verify_special(SpecialSequence(shifts, (0, 5, 4))).to_json())

# %% [markdown]
# ## Doubling and successor
#
# With `x -> 2x` in the monoid the constraints still exclude only finitely
# many points, so the greedy search keeps going.

# %%
dbl = closure([Affine(Z, 2, 0), Affine(Z, 1, 1)], max_word_len=3, max_elements=12)
print(build_special(dbl, 1, 12, (0, 10_000)).points)
