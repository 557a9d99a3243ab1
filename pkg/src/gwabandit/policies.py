"""Arm-selection policies over shared per-arm sufficient statistics.

Five policies from the UCB family and Thompson sampling, plus a uniform
random baseline used only as a sanity oracle. All UCB scores use the
natural logarithm.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import DomainError
from .means import GwaParams, gwa, gwa_kernel


class PolicyKind(enum.IntEnum):
    UCB1 = 0
    UCB1_TUNED = 1
    G_UCB1 = 2
    GWA_UCB1 = 3
    THOMPSON = 4
    RANDOM = 5


_DISPLAY = {
    PolicyKind.UCB1: "UCB1",
    PolicyKind.UCB1_TUNED: "UCB1-Tuned",
    PolicyKind.G_UCB1: "G-UCB1",
    PolicyKind.GWA_UCB1: "GWA-UCB1",
    PolicyKind.THOMPSON: "Thompson",
    PolicyKind.RANDOM: "Random",
}
_BY_NAME = {name.lower(): kind for kind, name in _DISPLAY.items()}


@dataclass(frozen=True)
class PolicySpec:
    """A policy kind together with its parameters.

    ``c`` is required for G-UCB1 and ``gwa`` for GWA-UCB1; both must be
    absent for the other kinds.
    """

    kind: PolicyKind
    c: float | None = None
    gwa: GwaParams | None = None

    def __post_init__(self):
        kind = PolicyKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is PolicyKind.G_UCB1:
            if self.c is None or not math.isfinite(self.c) or self.c < 0:
                raise DomainError(f"G-UCB1 needs a finite c >= 0, got {self.c!r}")
            object.__setattr__(self, "c", float(self.c))
        elif self.c is not None:
            raise DomainError(f"{_DISPLAY[kind]} takes no c parameter")
        if kind is PolicyKind.GWA_UCB1:
            if not isinstance(self.gwa, GwaParams):
                raise DomainError("GWA-UCB1 needs GwaParams")
        elif self.gwa is not None:
            raise DomainError(f"{_DISPLAY[kind]} takes no (alpha, m) parameters")

    @property
    def id(self) -> str:
        """Stable display name, also used as the CSV policy column."""
        name = _DISPLAY[self.kind]
        if self.kind is PolicyKind.G_UCB1:
            return f"{name}(c={self.c:g})"
        if self.kind is PolicyKind.GWA_UCB1:
            return f"{name}(alpha={self.gwa.alpha:g} m={self.gwa.m:g})"
        return name

    def kernel_args(self) -> tuple[int, float, float, float]:
        c = self.c if self.c is not None else 1.0
        alpha, m = (self.gwa.alpha, self.gwa.m) if self.gwa else (0.5, 1.0)
        return int(self.kind), c, alpha, m

    @classmethod
    def parse(cls, name: str, **params) -> "PolicySpec":
        """Build from a display name such as ``"GWA-UCB1"`` plus keyword params."""
        try:
            kind = _BY_NAME[name.strip().lower()]
        except KeyError:
            raise DomainError(f"unknown policy {name!r}; choose from {sorted(_DISPLAY.values())}") from None
        if kind is PolicyKind.GWA_UCB1 and ("alpha" in params or "m" in params):
            gwa = GwaParams(params.pop("alpha", None), params.pop("m", None))
            return cls(kind, gwa=gwa, **params)
        return cls(kind, **params)


@dataclass
class ArmStats:
    pulls: int = 0
    reward_sum: float = 0.0
    reward_sq_sum: float = 0.0

    @property
    def mean(self) -> float:
        if self.pulls == 0:
            raise DomainError("empirical mean of an unpulled arm is undefined")
        return self.reward_sum / self.pulls


@dataclass
class PolicyState:
    spec: PolicySpec
    arms: list[ArmStats]
    total_pulls: int = 0

    @classmethod
    def fresh(cls, spec: PolicySpec, k: int) -> "PolicyState":
        if k < 2:
            raise DomainError(f"need at least 2 arms, got {k}")
        return cls(spec, [ArmStats() for _ in range(k)])

    @property
    def k(self) -> int:
        return len(self.arms)


# Score formulas as plain functions of the sufficient statistics. Each is
# compiled once for the simulation kernel and also called directly.

def _ucb1(total, sq_total, pulls, log_n):
    return total / pulls + math.sqrt(2.0 * log_n / pulls)


def _ucb1_tuned(total, sq_total, pulls, log_n):
    mean = total / pulls
    v = sq_total / pulls - mean * mean + math.sqrt(2.0 * log_n / pulls)
    return mean + math.sqrt(log_n / pulls * min(0.25, max(v, 0.0)))


def _g_ucb1(total, sq_total, pulls, log_n, c):
    return total / pulls + c * math.sqrt(2.0 * log_n / pulls)


_ucb1_nb = njit(nogil=True, cache=True)(_ucb1)
_ucb1_tuned_nb = njit(nogil=True, cache=True)(_ucb1_tuned)
_g_ucb1_nb = njit(nogil=True, cache=True)(_g_ucb1)


@njit(nogil=True, cache=True)
def _gwa_ucb1_nb(total, sq_total, pulls, log_n, alpha, m):
    return gwa_kernel(total / pulls, math.sqrt(2.0 * log_n / pulls), alpha, m)


def _check(stats: ArmStats, n: int) -> float:
    if stats.pulls < 1:
        raise DomainError("cannot score an arm that was never pulled")
    if n < 1:
        raise DomainError(f"total pulls must be >= 1, got {n}")
    return math.log(n)


def ucb1_score(stats: ArmStats, n: int) -> float:
    return _ucb1(stats.reward_sum, stats.reward_sq_sum, stats.pulls, _check(stats, n))


def ucb1_tuned_score(stats: ArmStats, n: int) -> float:
    """UCB1-Tuned: the bonus is scaled by a capped variance estimate."""
    return _ucb1_tuned(stats.reward_sum, stats.reward_sq_sum, stats.pulls, _check(stats, n))


def g_ucb1_score(stats: ArmStats, n: int, c: float) -> float:
    if not c >= 0:
        raise DomainError(f"c must be >= 0, got {c!r}")
    return _g_ucb1(stats.reward_sum, stats.reward_sq_sum, stats.pulls, _check(stats, n), c)


def gwa_ucb1_score(stats: ArmStats, n: int, params: GwaParams) -> float:
    """Generalized weighted average of the empirical mean and the UCB1 bonus.

    The mean carries weight ``1 - alpha`` and the bonus ``sqrt(2 ln n / T)``
    weight ``alpha``; both are raised to ``m``. At ``alpha=0.5, m=1`` this
    is half the UCB1 score, so the argmax coincides with UCB1's.
    """
    log_n = _check(stats, n)
    return gwa(stats.mean, math.sqrt(2.0 * log_n / stats.pulls), params)


def thompson_sample(stats: ArmStats, rng: np.random.Generator) -> float:
    """One draw from the Beta(successes + 1, failures + 1) posterior."""
    successes = stats.reward_sum
    return rng.beta(successes + 1.0, stats.pulls - successes + 1.0)


def scores(state: PolicyState, rng: np.random.Generator | None = None) -> np.ndarray:
    """Per-arm index values; Thompson draws consume ``rng`` in arm order."""
    spec, n = state.spec, state.total_pulls
    kind = spec.kind
    if kind is PolicyKind.THOMPSON:
        return np.array([thompson_sample(a, rng) for a in state.arms])
    if kind is PolicyKind.UCB1:
        return np.array([ucb1_score(a, n) for a in state.arms])
    if kind is PolicyKind.UCB1_TUNED:
        return np.array([ucb1_tuned_score(a, n) for a in state.arms])
    if kind is PolicyKind.G_UCB1:
        return np.array([g_ucb1_score(a, n, spec.c) for a in state.arms])
    if kind is PolicyKind.GWA_UCB1:
        return np.array([gwa_ucb1_score(a, n, spec.gwa) for a in state.arms])
    raise DomainError(f"{kind!r} has no index")


def argmax_random_tie(values: np.ndarray, rng: np.random.Generator) -> int:
    """Index of the maximum; exact ties are broken uniformly using ``rng``.

    ``rng`` is only consumed when there is more than one maximizer.
    """
    top = np.flatnonzero(values == values.max())
    if top.size == 1:
        return int(top[0])
    return int(top[rng.integers(0, top.size)])


def select_arm(state: PolicyState, rng: np.random.Generator) -> int:
    """Choose the next arm.

    Unpulled arms are played first in ascending index order (the random
    baseline skips this phase). Afterwards the arm with the highest index
    value is chosen, ties broken uniformly at random.
    """
    if state.spec.kind is PolicyKind.RANDOM:
        return int(rng.integers(0, state.k))
    for i, arm in enumerate(state.arms):
        if arm.pulls == 0:
            return i
    return argmax_random_tie(scores(state, rng), rng)


def update(state: PolicyState, arm: int, observed_reward: float) -> PolicyState:
    """Record a reward in ``[0, 1]`` for ``arm``; mutates and returns ``state``."""
    if not 0 <= arm < state.k:
        raise DomainError(f"arm {arm} out of range for k={state.k}")
    r = float(observed_reward)
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"policy rewards must lie in [0, 1], got {observed_reward!r}")
    stats = state.arms[arm]
    stats.pulls += 1
    stats.reward_sum += r
    stats.reward_sq_sum += r * r
    state.total_pulls += 1
    return state
