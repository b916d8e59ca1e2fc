# %% [markdown]
# Points on canonical curves of genus 4 and 5
#
# Random canonical models (a quadric and a cubic in P^3, three quadrics in P^4)
# are drawn over small primes.  For each γ in the window [P(4), P(5)) the
# generic diagram is the minimum over seeded samples of γ rational points.

# %%
from mrclab import curves, mrc

for g, p in ((4, 53), (5, 31)):
    C = curves.random_canonical_curve(g, p, seed=3, min_points=36).sample(p)
    H = C.hilbert
    print(f"genus {g} over GF({p}): {len(C.points)} points, P(T) = {2 * g - 2}T + {1 - g}")
    for gamma in range(H(4), H(5)):
        rep, D, _ = mrc.check_gamma(C, gamma, samples=5, seed=0)
        print(f"  γ={gamma}: diagonals {rep.observed}, Q={rep.predicted}, MRC {'holds' if rep.mrc else 'fails'}")

# %% The tail prediction alone, without sampling
pred = mrc.predicted_tail(30, C)
print("genus 5, γ=30, r =", pred.r)
print("row r-1:", pred.row(pred.r - 1))
print("row r:  ", pred.row(pred.r))
