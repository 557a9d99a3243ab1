"""Bernoulli bandit environments and the survival budget.

Arm probabilities are drawn per trial by one of three samplers. Rewards
are Bernoulli: 0/1 in the stochastic game, -1/+1 in the survival game.
Policies always observe the 0/1 version; the signed reward only moves the
survival budget.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import ConfigError, DomainError


class RewardScheme(enum.Enum):
    ZERO_ONE = "zero_one"
    PLUS_MINUS_ONE = "plus_minus_one"


@dataclass(frozen=True)
class BanditEnv:
    probs: np.ndarray
    reward_scheme: RewardScheme = RewardScheme.ZERO_ONE
    best_prob: float = field(init=False)

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.ndim != 1 or probs.size < 2:
            raise DomainError(f"need a 1-D vector of at least 2 probabilities, got shape {probs.shape}")
        if not np.all((probs >= 0.0) & (probs <= 1.0)):
            raise DomainError("arm probabilities must lie in [0, 1]")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "reward_scheme", RewardScheme(self.reward_scheme))
        object.__setattr__(self, "best_prob", float(probs.max()))

    @property
    def k(self) -> int:
        return self.probs.size


def _check_k(k: int) -> int:
    if int(k) != k or k < 2:
        raise ConfigError(f"need an integer k >= 2, got {k!r}")
    return int(k)


def sample_uniform_arms(k: int, rng: np.random.Generator) -> np.ndarray:
    return rng.random(_check_k(k))


def sample_normal_arms(k: int, rng: np.random.Generator, mean: float = 0.5, sd: float = 0.1) -> np.ndarray:
    """Normal(mean, sd) draws, each redrawn until it falls inside [0, 1]."""
    k = _check_k(k)
    out = rng.normal(mean, sd, k)
    bad = (out < 0.0) | (out > 1.0)
    while bad.any():
        out[bad] = rng.normal(mean, sd, int(bad.sum()))
        bad = (out < 0.0) | (out > 1.0)
    return out


def fixed_survival_arms(k: int, best_index: int = 0, best: float = 0.55, rest: float = 0.45) -> np.ndarray:
    """One arm at ``best``, all others at ``rest``."""
    k = _check_k(k)
    if not 0 <= best_index < k:
        raise ConfigError(f"best_index {best_index} out of range for k={k}")
    out = np.full(k, rest)
    out[best_index] = best
    return out


def pull(env: BanditEnv, arm: int, rng: np.random.Generator) -> tuple[float, float]:
    """Play ``arm`` once; returns ``(raw_reward, policy_reward)``."""
    if not 0 <= arm < env.k:
        raise DomainError(f"arm {arm} out of range for k={env.k}")
    return map_reward(env, rng.random() < env.probs[arm])


def map_reward(env: BanditEnv, success: bool) -> tuple[float, float]:
    if env.reward_scheme is RewardScheme.ZERO_ONE:
        r = 1.0 if success else 0.0
        return r, r
    raw = 1.0 if success else -1.0
    return raw, (raw + 1.0) / 2.0


@dataclass
class SurvivalState:
    initial_budget: int
    budget: int = None
    ruined: bool = False

    def __post_init__(self):
        if int(self.initial_budget) != self.initial_budget or self.initial_budget <= 0:
            raise ConfigError(f"initial budget must be a positive integer, got {self.initial_budget!r}")
        if self.budget is None:
            self.budget = int(self.initial_budget)


def step_survival(state: SurvivalState, raw_reward: float) -> SurvivalState:
    """Apply a +1/-1 reward to the budget; reaching 0 ruins the agent for good."""
    if state.ruined:
        raise DomainError("cannot step a ruined survival state")
    if raw_reward not in (1, -1):
        raise DomainError(f"survival rewards are +1 or -1, got {raw_reward!r}")
    state.budget += int(raw_reward)
    if state.budget <= 0:
        state.budget = 0
        state.ruined = True
    return state


# Reward tape: the j-th pull of arm i in a trial succeeds iff
# tape_uniform(key, i, j) < p_i. Every policy run on the same trial key
# therefore sees the same outcome sequence on each arm.

@njit(nogil=True, cache=True)
def _splitmix64(z):
    z = z + np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@njit(nogil=True, cache=True)
def tape_uniform(key, arm, j):
    """Uniform [0, 1) value for the ``j``-th pull (0-based) of ``arm``."""
    h = _splitmix64(np.uint64(key) ^ (np.uint64(arm + 1) * np.uint64(0xD1B54A32D192ED03)))
    h = _splitmix64(h + np.uint64(j) * np.uint64(0x9E3779B97F4A7C15))
    return float(h >> np.uint64(11)) * (1.0 / 9007199254740992.0)
