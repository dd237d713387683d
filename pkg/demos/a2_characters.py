# coding: utf-8
# # Weight multiplicities of sl3 from a string cone
#
# For A2 with the reduced word (1, 2, 1) the string cone is cut out by
# t1 >= 0, t2 >= t3 >= 0.  Chopping by the highest weight lam and slicing
# by the weight lam - beta counts the basis vectors of V(lam) of that
# weight.  Truncating the word gives Demazure modules instead.

# %%
from chopcone import cartan
from chopcone.liealg import demazure_character, freudenthal, weyl_dimension
from chopcone.littelmann import (build_csc, builtin_string_cone, demazure_multiplicity,
                                 multiplicity_table)

A2 = cartan("A2")
spec = builtin_string_cone(A2, (1, 2, 1))
print(spec.rows)
print(build_csc(spec))

# %% [markdown]
# The adjoint representation lam = (1, 1): eight weights, the zero weight
# twice.  Weights are written in fundamental-weight coordinates.

# %%
table = multiplicity_table(spec, (1, 1))
for mu, m in sorted(table.items(), reverse=True):
    print(mu, m)
assert table == freudenthal(A2, (1, 1))
print("dimension", sum(table.values()), weyl_dimension(A2, (1, 1)))

# %% [markdown]
# A larger example, checked against Freudenthal's formula.

# %%
lam = (3, 2)
big = multiplicity_table(spec, lam)
print(lam, "dim", sum(big.values()), "max multiplicity", max(big.values()))
assert big == freudenthal(A2, lam)

# %% [markdown]
# Demazure characters: prefixes of the word give the Demazure modules
# V_w(lam) for w = e, s1, s1 s2, s1 s2 s1.

# %%
for m in range(4):
    word = spec.word[:m]
    chars = multiplicity_table(spec, (1, 1), m)
    assert chars == demazure_character(A2, word, (1, 1))
    print(word, sum(chars.values()), sorted(chars.items(), reverse=True))
print(demazure_multiplicity(spec, 3, (1, 1), (1, 1)))

# %% [markdown]
# The same machinery works for B2 (alpha_1 long), with either reduced word.

# %%
B2 = cartan("B2")
for word in ((1, 2, 1, 2), (2, 1, 2, 1)):
    s = builtin_string_cone(B2, word)
    print(word, multiplicity_table(s, (0, 2)) == freudenthal(B2, (0, 2)))
