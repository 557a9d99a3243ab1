"""GWA-UCB1 and baseline bandit policies with a reproducible simulation harness."""
from .envs import BanditEnv, RewardScheme, SurvivalState
from .errors import ConfigError, DomainError
from .means import GwaParams, gwa
from .policies import ArmStats, PolicyKind, PolicySpec, PolicyState, select_arm, update

__version__ = "0.1.0"

__all__ = [
    "ArmStats",
    "BanditEnv",
    "ConfigError",
    "DomainError",
    "GwaParams",
    "PolicyKind",
    "PolicySpec",
    "PolicyState",
    "RewardScheme",
    "SurvivalState",
    "gwa",
    "select_arm",
    "update",
]
