# %% [markdown]
# # Tuning by grid sweep
#
# A sweep evaluates every grid cell on the same paired trials and reports
# the mean final regret per cell. Here: a coarse sweep of G-UCB1's c and a
# small (alpha, m) grid for GWA-UCB1 on two-armed bandits.

# %%
import numpy as np

from gwabandit.presets import get_preset
from gwabandit.sim import SweepConfig, inclusive_range, run_sweep

c_sweep = get_preset("prelim-c-coarse").config()
res = run_sweep(c_sweep)
for c, r in zip(res.params[:, 0], res.mean_final_regret):
    print(f"c={c:.2f}  {r:7.3f}")
print("argmin", res.best_params)

# %% [markdown]
# A reduced GWA grid (the full coarse grid takes several minutes).

# %%
base = c_sweep.base.with_overrides(trials=200)
grid = SweepConfig(base, alpha_values=inclusive_range(0.05, 0.45, 0.08), m_values=inclusive_range(-1.0, 3.0, 0.5))
res = run_sweep(grid)
np.set_printoptions(precision=2, suppress=True, linewidth=120)
print("m:", np.array(grid.m_values))
for a, row in zip(grid.alpha_values, res.as_grid()):
    print(f"alpha={a:.2f}", row)
print("argmin", res.best_params)

# %% [markdown]
# Grids that would exceed the step budget are refused up front; raise
# `max_trial_steps` (or `--max-trial-steps` on the command line) to run them.
