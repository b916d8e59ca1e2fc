# %% [markdown]
# A failing diagonal in degree 24
#
# A genus-4 canonical curve over GF(173) is re-embedded by quartics, giving
# degree 24 in P^20.  Full diagrams are out of reach there, so only the two
# cells b_{3,r-1} and b_{2,r} are computed, through the module I_Γ / I_X.

# %%
from mrclab import class_calculus, curves, mrc

print("numerical gate at (g, d) = (4, 24):", class_calculus.mrc_failure_gate(4, 24))
C = curves.random_canonical_curve(4, 173, seed=0, min_points=145).sample(173, min_points=145)
R = mrc.with_regularity(curves.reembedded_curve(C, 4, 0, seed=0))
print(f"{len(R.points)} points, degree {R.degree} in P^{R.n}, regularity {R.regularity}")

# %% Scan the top of the window [P(3), P(4)) = [69, 93)
for cells in mrc.failure_scan(R, i=2, r=4, samples=3, seed=0, stop_at_first=False)[-8:]:
    flag = "  <- both nonzero" if cells.product else ""
    print(f"γ={cells.gamma}: {cells.top} * {cells.bottom}  (Q={cells.q}){flag}")
