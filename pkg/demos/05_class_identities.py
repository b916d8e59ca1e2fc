# %% [markdown]
# Divisor class bookkeeping
#
# Exact coefficients of the pencil divisors, their sums, the class assembled
# from pushforwards, and Chern class identities via formal roots.

# %%
from mrclab import class_calculus as cc

for g, i in ((4, 1), (5, 2), (9, 4)):
    A, B1, B2 = cc.summed_coefficients(g, i)
    Z = cc.grr_class_check(g, i, g + 3)
    print(f"g={g} i={i}: (A, B1, B2) = ({A}, {B1}, {B2}); assembled class {Z}")

# %% Coefficients for g = 5, i = 2
T = cc.coefficient_table(5, 2)
for name in ("a", "b1", "b2", "c"):
    print(name, {j: str(v) for j, v in getattr(T, name).items()})
print("\n".join(T.discrepancies))

# %% Chern classes of exterior powers, checked as polynomials in the roots
print(all(cc.chern_wedge_identity(r, i, w) for r in range(2, 9) for i in range(1, r + 1) for w in ("c1", "c2")))
