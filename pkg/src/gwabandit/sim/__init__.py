"""Deterministic bandit experiment runner."""
from .config import EnvKind, ExperimentConfig, SweepConfig, default_checkpoints, inclusive_range
from .runner import AggregateCurve, TrialRecord, pseudo_regret, run_experiment, run_trial
from .seeding import TrialStreams
from .sweep import SweepResult, run_sweep

__all__ = [
    "AggregateCurve",
    "EnvKind",
    "ExperimentConfig",
    "SweepConfig",
    "SweepResult",
    "TrialRecord",
    "TrialStreams",
    "default_checkpoints",
    "inclusive_range",
    "pseudo_regret",
    "run_experiment",
    "run_sweep",
    "run_trial",
]
