# coding: utf-8
# # Counting measures on a chopped box
#
# The simplest chopped and sliced cone: the positive quadrant, chopped by
# x <= lam and y <= lam, and sliced along x + y = beta.  Every slice count is
# a number we can check by hand, which makes it a good place to see the
# pieces fit together.

# %%
from fractions import Fraction

from chopcone import ChoppedSlicedCone, chop_count, measure, scaled_measure, slice_count
from chopcone.csc import convergence_report, report_csv

box = ChoppedSlicedCone(2, 1, 2, 1, 2,
                        p_map=[[1, 0], [0, 1]], q_map=[[1, 1]], r_map=[[1, 0], [0, 1]],
                        s_map=[[1], [1]])

# %% [markdown]
# For lam = 2 the chop is the 3 x 3 grid, and the slice counts along the
# anti-diagonals read 1, 2, 3, 2, 1.

# %%
print("points in the chop:", chop_count(box, (2,)))
table = measure(box, (2,))
for beta, count in sorted(table.entries.items()):
    print(beta, count, slice_count(box, (2,), beta))

# %% [markdown]
# Rescaling: the n-th measure puts mass count / n^2 at beta / n.  Its total
# mass is (n + 1)^2 / n^2, which tends to the area of the unit square.

# %%
for n in (1, 2, 4, 8):
    m = scaled_measure(box, (1,), n)
    print(n, m.total, float(m.total))

# %% [markdown]
# The convergence report pairs each scaled measure with a test function and
# compares it to a Monte Carlo estimate of the limit.  The error decays like
# 1/n, so at n = 16 it is still about 2/16.

# %%
rows = convergence_report(box, (1,), "sq1", [1, 2, 4, 8, 16], n_samples=50_000, seed=0)
print(report_csv(rows))
assert rows[-1].abs_deviation < rows[0].abs_deviation
