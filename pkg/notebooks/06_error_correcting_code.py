# %% [markdown]
# # Decoding a noisy real codeword by l1 minimization
# A 233-bit message is encoded into 256 reals, about a tenth of them are
# perturbed, and the error is recovered as the minimum-l1 solution of
# `A x = A z_bar` with `AQ = 0`.

# %%
from lpsketch.ecc import NoiseModel, run_ecc_demo

rep = run_ecc_demo("Ibis redibis non morieris in bello", NoiseModel(delta=0.5, rate=0.1, seed=0))
print(rep.m, rep.n, rep.k, "corrupted:", rep.corrupted)
print(repr(rep.recovered_text))
print(repr(rep.recovered_text_projected))
print("parity rank:", rep.diagnostics["parity_rank"])

# %% [markdown]
# Solve times with and without projecting the parity rows.

# %%
for side in ("original", "projected"):
    d = rep.diagnostics[side]
    print(f"{side:9s} rows={d['rows']:3d} l1={d['l1_norm']:.3f} time={d['solve_time']:.4f}s")
