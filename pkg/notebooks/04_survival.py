# %% [markdown]
# # Survival with a budget
#
# Rewards are +1/-1 and feed a budget that starts at b0; a trial ends when
# the budget hits 0. One arm pays off with probability 0.55, the rest with
# 0.45, and the good arm's position is shuffled per trial.

# %%
from gwabandit.presets import get_preset
from gwabandit.sim import run_experiment

cfg = get_preset("exp3-k8").config().with_overrides(trials=200, horizon=20_000)
curves = run_experiment(cfg)
rate = {c.policy: c for c in curves if c.metric == "survival_rate"}
budget = {c.policy: c for c in curves if c.metric == "mean_budget"}
for p in rate:
    print(f"{p:<30} survival {rate[p].final_mean:.3f}   budget {budget[p].final_mean:8.1f} ± {budget[p].final_stderr:.1f}")

# %% [markdown]
# Survival curves never increase: ruin is absorbing.

# %%
gwa = next(p for p in rate if p.startswith("GWA"))
for step, r in zip(rate[gwa].checkpoints, rate[gwa].mean):
    print(step, round(float(r), 3))
