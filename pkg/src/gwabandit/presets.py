"""Built-in experiment and sweep setups.

Each preset carries a desk-scale trial count (the default) and the
original trial count, selected with ``paper_scale=True``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .envs import RewardScheme
from .errors import ConfigError
from .means import GwaParams
from .policies import PolicyKind, PolicySpec
from .sim.config import EnvKind, ExperimentConfig, SweepConfig, inclusive_range

TUNED_C = 0.30
TUNED_GWA = GwaParams(0.21, 1.30)
K10_GWA = GwaParams(0.11, 1.47)

DEFAULT_SEED = 42


def standard_policies() -> tuple[PolicySpec, ...]:
    """The five compared policies with their tuned parameters."""
    return (
        PolicySpec(PolicyKind.UCB1),
        PolicySpec(PolicyKind.UCB1_TUNED),
        PolicySpec(PolicyKind.G_UCB1, c=TUNED_C),
        PolicySpec(PolicyKind.GWA_UCB1, gwa=TUNED_GWA),
        PolicySpec(PolicyKind.THOMPSON),
    )


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    desk_trials: int
    paper_trials: int
    build: object  # callable(trials) -> ExperimentConfig | SweepConfig

    @property
    def is_sweep(self) -> bool:
        return self.name.startswith("prelim-")

    def config(self, paper_scale: bool = False, max_trial_steps: int | None = None):
        """Build the config; ``max_trial_steps`` only applies to sweeps."""
        trials = self.paper_trials if paper_scale else self.desk_trials
        if self.is_sweep:
            return self.build(trials, max_trial_steps)
        return self.build(trials)


def _experiment(name, k, horizon, env_kind, policies=None, budget=None):
    def build(trials):
        return ExperimentConfig(
            experiment_id=name,
            k=k,
            horizon=horizon,
            trials=trials,
            env_kind=env_kind,
            policies=policies or standard_policies(),
            master_seed=DEFAULT_SEED,
            reward_scheme=RewardScheme.PLUS_MINUS_ONE if budget else RewardScheme.ZERO_ONE,
            initial_budget=budget,
        )

    return build


def _sweep(name, horizon, coarse, kind):
    def build(trials, max_trial_steps=None):
        limit = {} if max_trial_steps is None else {"max_trial_steps": max_trial_steps}
        base = ExperimentConfig(name, 2, horizon, trials, EnvKind.UNIFORM,
                                (PolicySpec(PolicyKind.UCB1),), master_seed=DEFAULT_SEED)
        step = 0.05 if coarse else 0.01
        if kind == "c":
            return SweepConfig(base, c_values=inclusive_range(0.05, 0.95, step), **limit)
        return SweepConfig(
            base,
            alpha_values=inclusive_range(0.05, 0.95, 0.04 if coarse else 0.01),
            m_values=inclusive_range(-2.0, 4.0, 0.20 if coarse else 0.01),
            **limit,
        )

    return build


def _presets():
    out = []
    for k in (2, 8, 32):
        out.append(Preset(f"exp1-k{k}", f"stochastic, k={k}, uniform[0,1] arms, 10,000 steps",
                          2000, 100_000, _experiment(f"exp1-k{k}", k, 10_000, EnvKind.UNIFORM)))
    for k in (32, 128, 512):
        out.append(Preset(f"exp2-k{k}", f"stochastic, k={k}, Normal(0.5, 0.1) arms, 50,000 steps",
                          500, 10_000, _experiment(f"exp2-k{k}", k, 50_000, EnvKind.NORMAL)))
    for k, b0 in ((8, 80), (32, 320), (128, 1280)):
        out.append(Preset(f"exp3-k{k}", f"survival, k={k}, one 0.55 arm among 0.45 arms, b0={b0}, 50,000 steps",
                          500, 10_000, _experiment(f"exp3-k{k}", k, 50_000, EnvKind.SURVIVAL_FIXED, budget=b0)))
    fig8 = standard_policies() + (PolicySpec(PolicyKind.GWA_UCB1, gwa=K10_GWA),)
    out.append(Preset("fig8-k10", "stochastic, k=10, uniform arms, 1,000 steps, includes GWA-UCB1(0.11, 1.47)",
                      2000, 2000, _experiment("fig8-k10", 10, 1000, EnvKind.UNIFORM, policies=fig8)))
    out.append(Preset("prelim-c-coarse", "G-UCB1 c in 0.05..0.95 step 0.05, k=2, 5,000 steps",
                      500, 1000, _sweep("prelim-c-coarse", 5000, True, "c")))
    out.append(Preset("prelim-gwa-coarse", "GWA-UCB1 alpha step 0.04 x m step 0.2, k=2, 5,000 steps",
                      500, 1000, _sweep("prelim-gwa-coarse", 5000, True, "gwa")))
    out.append(Preset("prelim-c", "G-UCB1 c in 0.05..0.95 step 0.01, k=2, 10,000 steps",
                      500, 1000, _sweep("prelim-c", 10_000, False, "c")))
    out.append(Preset("prelim-gwa", "GWA-UCB1 alpha, m step 0.01, k=2, 10,000 steps (needs a raised work limit)",
                      500, 1000, _sweep("prelim-gwa", 10_000, False, "gwa")))
    return {p.name: p for p in out}


PRESETS = _presets()


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}") from None
