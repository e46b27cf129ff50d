# %% [markdown]
# # Does projection preserve (in)feasibility?
# A feasible system `Ax = b, x >= 0` stays feasible under any linear map.
# An infeasible one stays infeasible with high probability once `k` is
# large enough.

# %%
from lpsketch import GenConfig, gen_infeasible, preservation_trial, project_lp, sample_projector, solve

lp, y = gen_infeasible(GenConfig(60, 90, 0.3, seed=1, feasible=False))
print("planted certificate: min yA =", (y @ lp.A).min(), " yb =", y @ lp.b)
for k in (2, 5, 10, 40):
    T = sample_projector("sparse", k, lp.m, seed=0)
    print(k, solve(project_lp(lp, T).projected).status.value)

# %% [markdown]
# Agreement rate of the membership answer over repeated trials.

# %%
for kind in ("cone", "hull", "infeasibility"):
    rate = preservation_trial(kind, {"m": 40, "n": 60, "density": 0.5}, 0.3, 20, master_seed=0, k=10)
    print(f"{kind:14s} {rate:.2f}")
