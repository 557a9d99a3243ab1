# %% [markdown]
# # Regret curves on uniform random bandits
#
# `run_experiment` plays every policy on the same trials: trial i draws the
# same arm probabilities and the same reward sequence for every policy, so
# differences between curves are not masked by environment noise.

# %%
from gwabandit.presets import get_preset
from gwabandit.sim import run_experiment

cfg = get_preset("exp1-k8").config().with_overrides(trials=300)
curves = run_experiment(cfg)
print(f"k={cfg.k}, horizon={cfg.horizon}, trials={cfg.trials}")
print("step      " + "".join(f"{c.policy[:14]:>16}" for c in curves))
for i, step in enumerate(curves[0].checkpoints):
    print(f"{step:<10}" + "".join(f"{c.mean[i]:>16.2f}" for c in curves))

# %% [markdown]
# Final regret with standard errors.

# %%
for c in sorted(curves, key=lambda c: c.final_mean):
    print(f"{c.policy:<30} {c.final_mean:8.2f} ± {c.final_stderr:.2f}")

# %% [markdown]
# The same run from the command line writes CSVs and a manifest:
#
#     gwabandit experiment --preset exp1-k8 --trials 300 --out-dir results
