"""Single trials and multi-trial experiments."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..envs import BanditEnv, fixed_survival_arms, sample_normal_arms, sample_uniform_arms
from ..errors import ConfigError, DomainError
from ..policies import PolicySpec
from .config import EnvKind, ExperimentConfig
from .kernel import simulate
from .seeding import TrialStreams

_NO_ACTIONS = np.empty(0, np.int64)


def pseudo_regret(env: BanditEnv, actions) -> float:
    """Sum over steps of the gap between the best arm's probability and the chosen one's."""
    actions = np.asarray(actions, dtype=np.int64)
    if actions.size and (actions.min() < 0 or actions.max() >= env.k):
        raise DomainError(f"actions must index arms 0..{env.k - 1}")
    return float(np.sum(env.best_prob - env.probs[actions]))


def make_env(config: ExperimentConfig, streams: TrialStreams) -> BanditEnv:
    rng = streams.env_rng()
    kind = config.env_kind
    if kind is EnvKind.UNIFORM:
        probs = sample_uniform_arms(config.k, rng)
    elif kind is EnvKind.NORMAL:
        probs = sample_normal_arms(config.k, rng)
    elif kind is EnvKind.SURVIVAL_FIXED:
        probs = fixed_survival_arms(config.k, best_index=int(rng.integers(0, config.k)))
    else:
        probs = np.array(config.probs)
    return BanditEnv(probs, config.reward_scheme)


@dataclass
class TrialRecord:
    """Metrics of one trial at the experiment's checkpoints.

    ``survived`` and ``budget`` are None for stochastic runs.
    """

    policy: str
    trial_index: int
    regret: np.ndarray
    survived: np.ndarray | None = None
    budget: np.ndarray | None = None
    actions: np.ndarray | None = None
    steps_played: int = 0


def _check_policy(config: ExperimentConfig, policy: PolicySpec) -> None:
    if not isinstance(policy, PolicySpec):
        raise ConfigError(f"expected a PolicySpec, got {type(policy).__name__}")


def _simulate_into(config, policy, env, streams, regret, survived, budget, actions=_NO_ACTIONS):
    kind, c, alpha, m = policy.kernel_args()
    return simulate(
        kind, c, alpha, m, env.probs, config.survival, config.initial_budget or 0,
        config.horizon, np.asarray(config.checkpoints, np.int64), np.uint64(streams.tape_key),
        streams.policy_rng(), actions, regret, survived, budget,
    )


def run_trial(config: ExperimentConfig, policy: PolicySpec, trial_index: int,
              record_actions: bool = False) -> TrialRecord:
    """Play one trial of ``policy`` and return its checkpointed metrics.

    The result depends only on ``(config, policy, trial_index)``.
    """
    _check_policy(config, policy)
    if not 0 <= trial_index < config.trials:
        raise ConfigError(f"trial_index {trial_index} out of range for {config.trials} trials")
    streams = TrialStreams.derive(config.master_seed, config.experiment_id, trial_index)
    env = make_env(config, streams)
    n_cp = len(config.checkpoints)
    regret = np.zeros(n_cp)
    survived = np.zeros(n_cp, np.bool_)
    budget = np.zeros(n_cp, np.int64)
    actions = np.full(config.horizon, -1, np.int64) if record_actions else _NO_ACTIONS
    played = _simulate_into(config, policy, env, streams, regret, survived, budget, actions)
    return TrialRecord(
        policy=policy.id,
        trial_index=trial_index,
        regret=regret,
        survived=survived if config.survival else None,
        budget=budget if config.survival else None,
        actions=actions[:played] if record_actions else None,
        steps_played=int(played),
    )


@dataclass
class AggregateCurve:
    """Mean and standard error of one metric across trials, per checkpoint."""

    experiment_id: str
    policy: str
    k: int
    metric: str
    checkpoints: np.ndarray
    mean: np.ndarray
    stderr: np.ndarray
    trials: int

    @property
    def final_mean(self) -> float:
        return float(self.mean[-1])

    @property
    def final_stderr(self) -> float:
        return float(self.stderr[-1])


def aggregate(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Column means and standard errors of a (trials, checkpoints) array.

    Rows must already be in ascending trial order. Each column is reduced
    as its own contiguous vector, so a column's statistics depend neither
    on how trials were scheduled nor on which other checkpoints are kept.
    """
    columns = np.ascontiguousarray(np.asarray(values, dtype=np.float64).T)
    n = columns.shape[1]
    mean = columns.mean(axis=1)
    if n < 2:
        return mean, np.zeros_like(mean)
    return mean, columns.std(axis=1, ddof=1) / np.sqrt(n)


@dataclass
class _TrialMaterial:
    streams: TrialStreams
    env: BanditEnv


def prepare_trials(config: ExperimentConfig) -> list[_TrialMaterial]:
    """Streams and environments of every trial, shared by all policies."""
    out = []
    for i in range(config.trials):
        streams = TrialStreams.derive(config.master_seed, config.experiment_id, i)
        out.append(_TrialMaterial(streams, make_env(config, streams)))
    return out


class _Results:
    def __init__(self, config: ExperimentConfig):
        shape = (config.trials, len(config.checkpoints))
        self.regret = np.zeros(shape)
        self.survived = np.zeros(shape, np.bool_)
        self.budget = np.zeros(shape, np.int64)


def _run_block(config, policy, materials, results, lo, hi):
    for i in range(lo, hi):
        mat = materials[i]
        _simulate_into(config, policy, mat.env, mat.streams,
                       results.regret[i], results.survived[i], results.budget[i])


def _blocks(n: int, size: int):
    return [(lo, min(lo + size, n)) for lo in range(0, n, size)]


def run_policies(config: ExperimentConfig, policies, threads: int = 1,
                 materials: list[_TrialMaterial] | None = None, block: int = 64) -> list[_Results]:
    """Raw per-trial metric arrays for each policy, rows in trial order.

    Work is split into (policy, block of trials) items. Each item writes
    only its own rows, so the arrays are identical for any thread count.
    """
    if threads < 1:
        raise ConfigError(f"threads must be >= 1, got {threads}")
    for p in policies:
        _check_policy(config, p)
    if materials is None:
        materials = prepare_trials(config)
    results = [_Results(config) for _ in policies]
    items = [(p, res, lo, hi) for p, res in zip(policies, results) for lo, hi in _blocks(config.trials, block)]
    if threads == 1:
        for p, res, lo, hi in items:
            _run_block(config, p, materials, res, lo, hi)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_run_block, config, p, materials, res, lo, hi) for p, res, lo, hi in items]
            for f in futures:
                f.result()
    return results


def run_experiment(config: ExperimentConfig, threads: int = 1) -> list[AggregateCurve]:
    """All trials of every policy, reduced to per-checkpoint mean curves.

    Stochastic runs yield one ``regret`` curve per policy; survival runs
    yield ``survival_rate`` and ``mean_budget`` curves.
    """
    results = run_policies(config, config.policies, threads=threads)
    cps = np.asarray(config.checkpoints, np.int64)
    curves = []
    for policy, res in zip(config.policies, results):
        if config.survival:
            metrics = [("survival_rate", res.survived), ("mean_budget", res.budget)]
        else:
            metrics = [("regret", res.regret)]
        for name, values in metrics:
            mean, stderr = aggregate(values)
            curves.append(AggregateCurve(config.experiment_id, policy.id, config.k, name,
                                         cps, mean, stderr, config.trials))
    return curves
