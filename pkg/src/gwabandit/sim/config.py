"""Declarative descriptions of experiments and parameter sweeps."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

from ..envs import RewardScheme
from ..errors import ConfigError
from ..means import GwaParams
from ..policies import PolicyKind, PolicySpec


class EnvKind(enum.Enum):
    UNIFORM = "uniform"
    NORMAL = "normal"
    SURVIVAL_FIXED = "survival_fixed"
    FIXED = "fixed"


def default_checkpoints(horizon: int) -> tuple[int, ...]:
    """1, 2, 5, 10, 20, 50, ... up to ``horizon``, always ending at ``horizon``."""
    out = []
    decade = 1
    while decade <= horizon:
        for mult in (1, 2, 5):
            step = mult * decade
            if step < horizon:
                out.append(step)
        decade *= 10
    out.append(horizon)
    return tuple(out)


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: an environment family run for every listed policy.

    ``probs`` is only used (and required) when ``env_kind`` is FIXED.
    Survival bookkeeping is active iff ``reward_scheme`` is PLUS_MINUS_ONE,
    in which case ``initial_budget`` is required.
    """

    experiment_id: str
    k: int
    horizon: int
    trials: int
    env_kind: EnvKind
    policies: tuple[PolicySpec, ...]
    master_seed: int = 0
    reward_scheme: RewardScheme = RewardScheme.ZERO_ONE
    initial_budget: int | None = None
    checkpoints: tuple[int, ...] | None = None
    probs: tuple[float, ...] | None = None

    def __post_init__(self):
        set_ = lambda name, value: object.__setattr__(self, name, value)
        set_("env_kind", EnvKind(self.env_kind))
        set_("reward_scheme", RewardScheme(self.reward_scheme))
        set_("policies", tuple(self.policies))
        if not self.experiment_id:
            raise ConfigError("experiment_id must be a nonempty string")
        for name in ("k", "horizon", "trials", "master_seed"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise ConfigError(f"{name} must be an integer, got {value!r}")
            set_(name, int(value))
        if self.k < 2:
            raise ConfigError(f"k must be >= 2, got {self.k}")
        if self.horizon < self.k:
            raise ConfigError(f"horizon ({self.horizon}) must be >= k ({self.k})")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError(f"master_seed must fit in 64 unsigned bits, got {self.master_seed}")
        if not self.policies:
            raise ConfigError("at least one policy is required")
        if not all(isinstance(p, PolicySpec) for p in self.policies):
            raise ConfigError("policies must be PolicySpec instances")
        ids = [p.id for p in self.policies]
        if len(set(ids)) != len(ids):
            raise ConfigError(f"duplicate policies: {ids}")

        if self.env_kind is EnvKind.FIXED:
            if self.probs is None or len(self.probs) != self.k:
                raise ConfigError(f"env_kind 'fixed' needs exactly k={self.k} probs")
            probs = tuple(float(p) for p in self.probs)
            if not all(0.0 <= p <= 1.0 for p in probs):
                raise ConfigError("probs must lie in [0, 1]")
            set_("probs", probs)
        elif self.probs is not None:
            raise ConfigError("probs is only allowed with env_kind 'fixed'")
        if self.env_kind is EnvKind.SURVIVAL_FIXED and self.reward_scheme is not RewardScheme.PLUS_MINUS_ONE:
            raise ConfigError("env_kind 'survival_fixed' requires the plus_minus_one reward scheme")
        if self.survival:
            b0 = self.initial_budget
            if b0 is None or isinstance(b0, bool) or int(b0) != b0 or b0 <= 0:
                raise ConfigError(f"survival runs need a positive integer initial_budget, got {b0!r}")
            set_("initial_budget", int(b0))
        elif self.initial_budget is not None:
            raise ConfigError("initial_budget is only allowed with the plus_minus_one reward scheme")

        cps = default_checkpoints(self.horizon) if self.checkpoints is None else tuple(int(c) for c in self.checkpoints)
        if not cps or cps[-1] != self.horizon or cps[0] < 1 or any(b <= a for a, b in zip(cps, cps[1:])):
            raise ConfigError(f"checkpoints must be strictly ascending in [1, horizon] and end at horizon, got {cps}")
        set_("checkpoints", cps)

    @property
    def survival(self) -> bool:
        return self.reward_scheme is RewardScheme.PLUS_MINUS_ONE

    def with_overrides(self, **changes) -> "ExperimentConfig":
        """Copy with fields replaced; ``None`` values are ignored."""
        changes = {k: v for k, v in changes.items() if v is not None}
        if "horizon" in changes and "checkpoints" not in changes:
            changes["checkpoints"] = None
        return replace(self, **changes)


def inclusive_range(lo: float, hi: float, step: float) -> tuple[float, ...]:
    """``lo, lo + step, ...`` up to ``hi`` inclusive, rounded to 10 decimals."""
    if not (math.isfinite(lo) and math.isfinite(hi) and math.isfinite(step)):
        raise ConfigError("grid bounds and step must be finite")
    if step <= 0:
        raise ConfigError(f"grid step must be > 0, got {step}")
    if hi < lo:
        raise ConfigError(f"empty grid range [{lo}, {hi}]")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return tuple(round(lo + i * step, 10) + 0.0 for i in range(count))


@dataclass(frozen=True)
class SweepConfig:
    """Grid over G-UCB1's ``c`` or over GWA-UCB1's ``(alpha, m)``.

    Exactly one of ``c_values`` or (``alpha_values``, ``m_values``) is given.
    The policies of ``base`` are ignored; each grid cell runs one policy.
    ``max_trial_steps`` caps cells * trials * horizon.
    """

    base: ExperimentConfig
    c_values: tuple[float, ...] | None = None
    alpha_values: tuple[float, ...] | None = None
    m_values: tuple[float, ...] | None = None
    max_trial_steps: int = 4 * 10**9

    def __post_init__(self):
        has_c = self.c_values is not None
        has_gwa = self.alpha_values is not None or self.m_values is not None
        if has_c == has_gwa:
            raise ConfigError("give either c_values or both alpha_values and m_values")
        if has_gwa and (self.alpha_values is None or self.m_values is None):
            raise ConfigError("a GWA sweep needs both alpha_values and m_values")
        for name in ("c_values", "alpha_values", "m_values"):
            values = getattr(self, name)
            if values is not None:
                if len(values) == 0:
                    raise ConfigError(f"{name} must be nonempty")
                object.__setattr__(self, name, tuple(float(v) for v in values))
        if self.base.survival:
            raise ConfigError("sweeps rank by regret and need a stochastic (zero_one) base experiment")
        # Builds every cell's PolicySpec once so bad parameters fail here.
        object.__setattr__(self, "_cells", tuple(self._build_cells()))
        work = len(self._cells) * self.base.trials * self.base.horizon
        if work > self.max_trial_steps:
            raise ConfigError(
                f"sweep needs {len(self._cells)} cells x {self.base.trials} trials x "
                f"{self.base.horizon} steps = {work} trial-steps, over the limit of {self.max_trial_steps}"
            )

    @property
    def kind(self) -> str:
        return "c" if self.c_values is not None else "gwa"

    def _build_cells(self):
        if self.c_values is not None:
            for c in self.c_values:
                yield (c,), PolicySpec(PolicyKind.G_UCB1, c=c)
        else:
            for a in self.alpha_values:
                for m in self.m_values:
                    yield (a, m), PolicySpec(PolicyKind.GWA_UCB1, gwa=GwaParams(a, m))

    @property
    def cells(self) -> tuple[tuple[tuple[float, ...], PolicySpec], ...]:
        return self._cells

    @property
    def param_names(self) -> tuple[str, ...]:
        return ("c",) if self.kind == "c" else ("alpha", "m")
