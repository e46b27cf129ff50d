# %% [markdown]
# # Original vs projected solve times
# A small sweep; the ratio `prj_time / org_time` should fall as `m` grows.

# %%
from lpsketch.genbench import GenConfig, cell_means, run_bench, timing_ratios

grid = [GenConfig(m, int(1.4 * m), 0.7) for m in (100, 200, 300)]
grid += [GenConfig(100, 150, 0.3, feasible=False)]
recs = run_bench(grid, epsilon=0.2, instances_per_cell=2, master_seed=0)

# %%
for r in cell_means(recs):
    print(r.m, r.n, r.k, f"org={r.org_time:.3f}s prj={r.prj_time:.3f}s",
          "match" if r.status_match else "mismatch", r.neg2, r.obj2)
print(timing_ratios(recs))
