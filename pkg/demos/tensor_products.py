# coding: utf-8
# # Tensor product multiplicities from trails
#
# Berenstein and Zelevinsky describe the multiplicity of V(lam + nu - beta)
# in V(lam) x V(nu) as the number of lattice points in a polytope whose
# inequalities come from i-trails in fundamental representations of the
# Langlands dual.  Here we build that cone for A2 and compare it with a
# Racah-Speiser computation.

# %%
from chopcone import bz, cartan
from chopcone.liealg import tensor_decompose, weyl_dimension

A2 = cartan("A2")
system = bz.build_bz_csc(A2)
print("word", system.word)
print(system.csc)

# %% [markdown]
# 8 x 8 = 27 + 10 + 10bar + 8 + 8 + 1.  The lr table is keyed by beta in
# simple-root coordinates: V(lam + nu - beta) appears table[beta] times.

# %%
table = bz.lr_table(system, (1, 1), (1, 1))
for beta, m in sorted(table.items()):
    print(beta, m)
print(tensor_decompose(A2, (1, 1), (1, 1)))
assert table == bz.lr_table_oracle(A2, (1, 1), (1, 1))

# %% [markdown]
# Dimensions add up, and the table is symmetric in lam and nu.

# %%
lam, nu = (2, 1), (1, 3)
dec = tensor_decompose(A2, lam, nu)
print(sum(m * weyl_dimension(A2, mu) for mu, m in dec.items()),
      weyl_dimension(A2, lam) * weyl_dimension(A2, nu))
assert bz.lr_table(system, lam, nu) == bz.lr_table(system, nu, lam)

# %% [markdown]
# The cone depends on the reduced word, the counts do not.

# %%
other = bz.build_bz_csc(A2, (2, 1, 2))
print(bz.lr_table(other, lam, nu) == bz.lr_table(system, lam, nu))
