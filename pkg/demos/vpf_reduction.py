# coding: utf-8
# # From a cone to a vector partition function
#
# Any chopped and sliced cone whose cone {r x >= 0} is pointed can be
# rewritten so that its slice counts are values of a vector partition
# function Phi_E(y) = #{x >= 0 integral : E x = y}, with y depending linearly
# on (lam, beta).  Here we build that pair for a skewed cone and check it.

# %%
from chopcone import ChoppedSlicedCone, reduce_to_vpf, slice_count
from chopcone.exact import cone_generators, matvec, positive_orthant_embedding
from chopcone.vpf import fit_quasipolynomial, ray_counter, ray_scan

# %% [markdown]
# The cone spanned by (1, 1) and (1, -1) is not the quadrant.  A unimodular
# matrix moves it inside the quadrant without changing the lattice.

# %%
normals = [[1, -1], [1, 1]]
A = positive_orthant_embedding(normals)
print("A =", A)
for g in cone_generators(normals):
    print(g, "->", matvec(A, g))

# %%
wedge = ChoppedSlicedCone(2, 1, 1, 1, 2, p_map=[[1, 0]], q_map=[[0, 1]], r_map=normals,
                          s_map=[[1]])
pair = reduce_to_vpf(wedge)
print("E =", pair.problem.E)
print("B =", pair.B)
for lam in range(4):
    row = [slice_count(wedge, (lam,), (b,)) for b in range(-lam, lam + 1)]
    assert row == [pair.count((lam,), (b,)) for b in range(-lam, lam + 1)]
    print(lam, row)

# %% [markdown]
# Along the ray (lam, beta) = t (1, 0) the counts are t + 1, an honest
# polynomial.  Chopping a half-line by 2 x <= t instead gives floor(t/2) + 1,
# and the fit comes out as a quasi-polynomial with period 2.

# %%
qp = ray_scan(wedge, (0,), (0,), (1,), (0,), t_max=20, period_max=4, degree_bound=1)
print(qp.to_json())
half = ChoppedSlicedCone(1, 1, 1, 1, 1, p_map=[[2]], q_map=[[0]], r_map=[[1]], s_map=[[1]])
qp = fit_quasipolynomial(ray_counter(half, (0,), (0,), (1,), (0,)), 20, 4, 1)
print(qp.period, qp.to_json())
assert [qp(t) for t in range(6)] == [1, 1, 2, 2, 3, 3]
