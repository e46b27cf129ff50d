# %% [markdown]
# # Getting back to the original LP
# The projected optimum generally violates `Ax = b`.  Two repairs:
# a basis guess from the lifted dual `T'y_T`, and a least-squares solve on the
# columns basic in the projected solve.

# %%
import numpy as np

from lpsketch import GenConfig, Method, gen_feasible, run_pipeline

lp, _ = gen_feasible(GenConfig(200, 300, 0.3, seed=4))
run = run_pipeline(lp, epsilon=0.3, master_seed=0)
print("k =", run.k)
print("raw |Ax' - b|_1 / |b|_1 =", np.abs(lp.A @ run.projected_x - lp.b).sum() / np.abs(lp.b).sum())

# %%
for method in Method:
    q = run.reports[method].metrics
    print(f"{method.value:5s} feas={q.feas:.4f} neg={q.neg:.4f} obj={q.obj:.4f}")

# %% [markdown]
# The lifted dual is always feasible for the original dual.

# %%
print("dual lift feasible:", run.reports[Method.BASIS_ALG2].dual_lift_feasible)
