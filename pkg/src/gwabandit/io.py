"""JSON configs in, CSV curves and sweep grids out.

Config files are strict: unknown keys are errors. An experiment file
looks like::

    {"type": "experiment", "experiment_id": "demo", "k": 2, "horizon": 1000,
     "trials": 100, "env": "uniform", "master_seed": 1,
     "policies": [{"name": "UCB1"}, {"name": "G-UCB1", "c": 0.3},
                  {"name": "GWA-UCB1", "alpha": 0.21, "m": 1.3}]}

and a sweep file wraps a base experiment (without policies) and a grid::

    {"type": "sweep", "base": {...},
     "grid": {"alpha": {"start": 0.05, "stop": 0.95, "step": 0.04},
              "m": {"start": -2, "stop": 4, "step": 0.2}}}
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .envs import RewardScheme
from .errors import ConfigError, DomainError
from .policies import PolicyKind, PolicySpec
from .sim.config import EnvKind, ExperimentConfig, SweepConfig, inclusive_range
from .sim.runner import AggregateCurve
from .sim.sweep import SweepResult

CURVE_COLUMNS = ("experiment_id", "policy", "k", "checkpoint_step", "metric", "mean", "stderr", "trials")

_EXPERIMENT_KEYS = {"type", "experiment_id", "k", "horizon", "trials", "env", "probs", "reward_scheme",
                    "initial_budget", "master_seed", "checkpoints", "policies"}
_REQUIRED = {"experiment_id", "k", "horizon", "trials", "env"}
_SWEEP_KEYS = {"type", "base", "grid", "max_trial_steps"}
_RANGE_KEYS = {"start", "stop", "step"}


def _strict(obj, allowed, where):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {', '.join(map(repr, unknown))}")


def _policy_from_dict(d, where) -> PolicySpec:
    _strict(d, {"name", "c", "alpha", "m"}, where)
    if "name" not in d:
        raise ConfigError(f"{where}: missing key 'name'")
    params = {key: d[key] for key in ("c", "alpha", "m") if key in d}
    try:
        return PolicySpec.parse(d["name"], **params)
    except (DomainError, TypeError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def experiment_from_dict(d, where="$", need_policies=True) -> ExperimentConfig:
    _strict(d, _EXPERIMENT_KEYS, where)
    missing = sorted(_REQUIRED - set(d))
    if need_policies and "policies" not in d:
        missing.append("policies")
    if missing:
        raise ConfigError(f"{where}: missing key(s) {', '.join(map(repr, missing))}")
    policies = d.get("policies", [{"name": "UCB1"}])
    if not isinstance(policies, list):
        raise ConfigError(f"{where}.policies: expected a list")
    specs = tuple(_policy_from_dict(p, f"{where}.policies[{i}]") for i, p in enumerate(policies))
    try:
        return ExperimentConfig(
            experiment_id=d["experiment_id"],
            k=d["k"],
            horizon=d["horizon"],
            trials=d["trials"],
            env_kind=EnvKind(d["env"]),
            policies=specs,
            master_seed=d.get("master_seed", 0),
            reward_scheme=RewardScheme(d.get("reward_scheme", "zero_one")),
            initial_budget=d.get("initial_budget"),
            checkpoints=d.get("checkpoints"),
            probs=d.get("probs"),
        )
    except (ConfigError, DomainError, ValueError, TypeError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _range_from_dict(d, where):
    if isinstance(d, list):
        return tuple(float(v) for v in d)
    _strict(d, _RANGE_KEYS, where)
    if set(d) != _RANGE_KEYS:
        raise ConfigError(f"{where}: a range needs start, stop, and step (or give a list of values)")
    try:
        return inclusive_range(float(d["start"]), float(d["stop"]), float(d["step"]))
    except ConfigError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def sweep_from_dict(d, where="$") -> SweepConfig:
    _strict(d, _SWEEP_KEYS, where)
    for key in ("base", "grid"):
        if key not in d:
            raise ConfigError(f"{where}: missing key {key!r}")
    base = experiment_from_dict(d["base"], f"{where}.base", need_policies=False)
    grid = d["grid"]
    _strict(grid, {"c", "alpha", "m"}, f"{where}.grid")
    kwargs = {name: _range_from_dict(grid[name], f"{where}.grid.{name}") for name in grid}
    extra = {"max_trial_steps": int(d["max_trial_steps"])} if "max_trial_steps" in d else {}
    try:
        return SweepConfig(
            base,
            c_values=kwargs.get("c"),
            alpha_values=kwargs.get("alpha"),
            m_values=kwargs.get("m"),
            **extra,
        )
    except (ConfigError, DomainError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def parse_config(path) -> ExperimentConfig | SweepConfig:
    """Load and validate an experiment or sweep JSON file."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"{path}: no such config file")
    try:
        d = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    if not isinstance(d, dict):
        raise ConfigError(f"{path}: top level must be an object")
    kind = d.get("type", "experiment")
    try:
        if kind == "experiment":
            return experiment_from_dict(d)
        if kind == "sweep":
            return sweep_from_dict(d)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    raise ConfigError(f"{path}: $.type must be 'experiment' or 'sweep', got {kind!r}")


def policy_to_dict(p: PolicySpec) -> dict:
    out = {"name": p.id.split("(")[0]}
    if p.kind is PolicyKind.G_UCB1:
        out["c"] = p.c
    elif p.kind is PolicyKind.GWA_UCB1:
        out.update(alpha=p.gwa.alpha, m=p.gwa.m)
    return out


def experiment_to_dict(cfg: ExperimentConfig) -> dict:
    """Inverse of :func:`experiment_from_dict`."""
    out = {
        "type": "experiment",
        "experiment_id": cfg.experiment_id,
        "k": cfg.k,
        "horizon": cfg.horizon,
        "trials": cfg.trials,
        "env": cfg.env_kind.value,
        "reward_scheme": cfg.reward_scheme.value,
        "master_seed": cfg.master_seed,
        "checkpoints": list(cfg.checkpoints),
        "policies": [policy_to_dict(p) for p in cfg.policies],
    }
    if cfg.initial_budget is not None:
        out["initial_budget"] = cfg.initial_budget
    if cfg.probs is not None:
        out["probs"] = list(cfg.probs)
    return out


def sweep_to_dict(sweep: SweepConfig) -> dict:
    base = experiment_to_dict(sweep.base)
    del base["type"]
    if sweep.kind == "c":
        grid = {"c": list(sweep.c_values)}
    else:
        grid = {"alpha": list(sweep.alpha_values), "m": list(sweep.m_values)}
    return {"type": "sweep", "base": base, "grid": grid, "max_trial_steps": sweep.max_trial_steps}


def _num(x) -> str:
    # repr of a Python float round-trips exactly.
    return repr(float(x))


def emit_curves_csv(curves: list[AggregateCurve], path) -> Path:
    """Write curves sorted by (policy, checkpoint, metric)."""
    if not curves:
        raise ValueError("no curves to write")
    rows = []
    for c in curves:
        for step, mean, err in zip(c.checkpoints, c.mean, c.stderr):
            rows.append((c.policy, int(step), c.metric, c.experiment_id, c.k, mean, err, c.trials))
    rows.sort(key=lambda r: r[:3])
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CURVE_COLUMNS)
        for policy, step, metric, exp_id, k, mean, err, trials in rows:
            w.writerow((exp_id, policy, k, step, metric, _num(mean), _num(err), trials))
    return path


def read_curves_csv(path) -> list[AggregateCurve]:
    """Parse a file written by :func:`emit_curves_csv` back into curves."""
    groups: dict[tuple, list] = {}
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CURVE_COLUMNS:
            raise ValueError(f"unexpected header {reader.fieldnames}")
        for row in reader:
            key = (row["experiment_id"], row["policy"], int(row["k"]), row["metric"], int(row["trials"]))
            groups.setdefault(key, []).append((int(row["checkpoint_step"]), float(row["mean"]), float(row["stderr"])))
    out = []
    for (exp_id, policy, k, metric, trials), pts in groups.items():
        steps, means, errs = zip(*pts)
        out.append(AggregateCurve(exp_id, policy, k, metric, np.array(steps, np.int64),
                                  np.array(means), np.array(errs), trials))
    return out


def emit_grid_csv(result: SweepResult, path) -> Path:
    """Write ``alpha,m,...`` or ``c,...`` rows sorted by the grid parameters."""
    names = result.param_names
    order = sorted(range(len(result.mean_final_regret)), key=lambda i: tuple(result.params[i]))
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow((*names, "mean_final_regret", "stderr"))
        for i in order:
            w.writerow((*(_num(v) for v in result.params[i]), _num(result.mean_final_regret[i]), _num(result.stderr[i])))
    return path


def read_grid_csv(path) -> SweepResult:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    names = tuple(header[:-2])
    if header[-2:] != ["mean_final_regret", "stderr"] or names not in (("c",), ("alpha", "m")):
        raise ValueError(f"unexpected header {header}")
    arr = np.array(rows, dtype=np.float64).reshape(-1, len(header))
    n = len(names)
    return SweepResult(names, arr[:, :n], arr[:, n], arr[:, n + 1], trials=None)
