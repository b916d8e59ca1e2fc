# %% [markdown]
# Ideal generation for a genus-3 curve in degree 6 and 8
#
# A smooth plane quartic is re-embedded by forms of degree k vanishing on a
# set D of its points: O(3H - D) with six points of D gives degree 6 in P^3,
# O(2H) gives the bicanonical curve of degree 8 in P^5.  (O(2H - p - q) would
# also have degree 6, but it is K + r + s with r, s the residual points of the
# line through p and q, and it glues r to s.)

# %%
from mrclab import curves, mrc

base = curves.random_plane_curve(4, 101, seed=2).sample(101)
for k, nd in ((3, 6), (2, 0)):
    R = mrc.with_regularity(curves.reembedded_curve(base, k, nd, seed=0))
    H = R.hilbert
    r = R.regularity + 1
    print(f"degree {R.degree} in P^{R.n}, regularity {R.regularity}, window [{H(r - 1)}, {H(r)})")
    for gamma in range(H(r - 1), H(r)):
        rep, _, _ = mrc.check_gamma(R, gamma, samples=5, seed=1)
        b2, b1 = rep.observed[1]
        note = "" if rep.mrc else f"   other diagonals nonzero: {rep.failing}"
        print(f"  γ={gamma}: b_2,r-1 * b_1,r = {b2}*{b1}{note}")

# %% [markdown]
# The first diagonal always has a zero factor.  In degree 8 two other
# diagonals do not: γ=25 at i=3 and γ=27 at i=2.
