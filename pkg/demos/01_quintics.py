# %% [markdown]
# Two rational quintics in P^3 and 28 points on each
#
# X = (u^5 : u^4 v : u v^4 : v^5) sits on the quadric X0 X3 = X1 X2, while the
# deformation Y sits on no quadric.  Both have the same Hilbert polynomial
# 5T + 1, yet 28 general points on them resolve differently.

# %%
from mrclab import golden, koszul, mrc
from mrclab.curves import ParametricRational

p = 101
X = ParametricRational(golden.QUINTIC_FORMS["quintic_X"], name="X", regularity=4).sample(p)
Y = ParametricRational(golden.QUINTIC_FORMS["quintic_Y"], name="Y", regularity=4).sample(p)
print(len(X.points), "rational points on each curve")

# %% The curves themselves, computed from all their rational points
for C in (X, Y):
    print(C.name)
    print(koszul.curve_betti_diagram(C, 3).to_text(4))

# %% 28 points: r = 6, since P(5) = 26 <= 28 < 31 = P(6)
for C in (X, Y):
    D = mrc.generic_diagram(C, 28, samples=5, seed=0, rows=6)
    print(f"28 general points on {C.name}")
    print(D.to_text(4))
    print(mrc.mrc_verdict(D, 28, C).to_text(), "\n")

# %% [markdown]
# On X the second diagonal carries 1 in row 5 and 2 in row 6, where the
# prediction from the Hilbert polynomial (Q = -1) leaves room only for 0 and 1.
