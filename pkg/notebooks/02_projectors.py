# %% [markdown]
# # Random projectors and distance preservation
# `k = ceil(1.8 / eps^2 * ln n) + 1` rows are enough to keep the pairwise
# distances of `n` points within a factor `1 +- eps`, with high probability.

# %%
import numpy as np

from lpsketch import distortion_stats, projected_dimension, sample_projector

for n in (600, 1200, 2400):
    print(n, projected_dimension(n, 0.2))

# %% [markdown]
# The four projector families, all scaled so that `E|Ty|^2 = |y|^2`.

# %%
y = np.random.default_rng(1).standard_normal(500)
for kind in ("gaussian", "rademacher", "sparse", "gaussian-orthogonal"):
    norms = [np.linalg.norm(sample_projector(kind, 100, 500, s).entries @ y) ** 2 for s in range(200)]
    print(f"{kind:20s} mean |Ty|^2 / |y|^2 = {np.mean(norms) / (y @ y):.3f}")

# %% [markdown]
# Distortion over 50 points in 1000 dimensions.

# %%
pts = np.random.default_rng(2).standard_normal((50, 1000))
T = sample_projector("sparse", projected_dimension(50, 0.2), 1000, seed=3)
st = distortion_stats(T, pts, 0.2)
print(f"k={T.k}: {st.fraction_within:.3f} of pairs within 1+-0.2, "
      f"inner-product violations {st.inner_product_violation_fraction:.3f}")
