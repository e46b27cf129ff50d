# %% [markdown]
# # Solving standard-form LPs
# A small dense revised simplex solver.  Every result carries a primal point,
# a dual, the final basis, and a Farkas vector when the LP has no solution.

# %%
import numpy as np

from lpsketch import StandardFormLp, brute_force_optimum, solve

lp = StandardFormLp(c=[1, 1, 3], A=[[1, 0, 1], [0, 1, 1]], b=[1, 1])
res = solve(lp)
print(res.status.value, res.objective, res.x, res.y, res.basis)

# %% [markdown]
# Strong duality and reduced costs can be checked by hand.

# %%
print("c.x - b.y =", lp.c @ res.x - lp.b @ res.y)
print("reduced costs", lp.c - res.y @ lp.A)

# %% [markdown]
# Infeasible systems return a certificate `f` with `f A >= 0` and `f b < 0`.

# %%
bad = StandardFormLp([1, 1], [[1, 1]], [-1])
r = solve(bad)
print(r.status.value, r.farkas, r.farkas @ bad.A, r.farkas @ bad.b)

# %% [markdown]
# On tiny instances the solver can be checked against full basis enumeration.

# %%
rng = np.random.default_rng(0)
agree = 0
for _ in range(50):
    lp = StandardFormLp(rng.standard_normal(6), rng.standard_normal((3, 6)), rng.standard_normal(3))
    a, b = solve(lp), brute_force_optimum(lp)
    agree += a.status is b.status and (not a.optimal or abs(a.objective - b.objective) < 1e-8)
print(f"{agree}/50 agree with enumeration")
