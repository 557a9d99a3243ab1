"""Command-line front end.

    gwabandit presets
    gwabandit experiment --preset exp1-k2 --trials 2000 --seed 42 --out-dir out/
    gwabandit sweep --preset prelim-gwa-coarse --threads 4
    gwabandit experiment --config my_experiment.json
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path

from . import __version__
from .errors import ConfigError, DomainError
from .io import emit_curves_csv, emit_grid_csv, experiment_to_dict, parse_config, sweep_to_dict
from .presets import PRESETS, get_preset
from .sim.config import ExperimentConfig, SweepConfig
from .sim.runner import run_experiment
from .sim.sweep import run_sweep


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9.-]+", "_", text).strip("_")


def _load(args, want):
    if (args.preset is None) == (args.config is None):
        raise ConfigError("give exactly one of --preset or --config")
    if args.preset is not None:
        preset = get_preset(args.preset)
        cfg = preset.config(paper_scale=args.paper_scale, max_trial_steps=getattr(args, "max_trial_steps", None))
    else:
        cfg = parse_config(args.config)
    if not isinstance(cfg, want):
        raise ConfigError(f"{args.preset or args.config} is not a{'n experiment' if want is ExperimentConfig else ' sweep'}")
    return cfg


def _override(cfg: ExperimentConfig, args) -> ExperimentConfig:
    try:
        return cfg.with_overrides(trials=args.trials, master_seed=args.seed)
    except (ConfigError, DomainError) as exc:
        raise ConfigError(str(exc)) from None


class _Outputs:
    """Tracks written files so a failed run leaves nothing behind."""

    def __init__(self, out_dir: Path):
        self.out_dir = out_dir
        self.paths: list[Path] = []

    def path(self, name: str) -> Path:
        p = self.out_dir / name
        self.paths.append(p)
        return p

    def discard(self):
        for p in self.paths:
            p.unlink(missing_ok=True)


def _write_manifest(outputs: _Outputs, name: str, config: dict, seed: int, started: float, files: dict):
    manifest = {
        "tool": "gwabandit",
        "version": __version__,
        "master_seed": seed,
        "duration_seconds": round(time.perf_counter() - started, 3),
        "config": config,
        "outputs": files,
    }
    missing = [f for f in _flatten(files) if not Path(f).is_file()]
    if missing:
        raise OSError(f"declared outputs were not written: {missing}")
    path = outputs.path(f"{name}_manifest.json")
    path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return path


def _flatten(files):
    for v in files.values():
        if isinstance(v, dict):
            yield from _flatten(v)
        else:
            yield v


def cmd_experiment(args) -> int:
    cfg = _override(_load(args, ExperimentConfig), args)
    started = time.perf_counter()
    curves = run_experiment(cfg, threads=args.threads)
    outputs = _Outputs(args.out_dir)
    try:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        combined = emit_curves_csv(curves, outputs.path(f"{_slug(cfg.experiment_id)}_curves.csv"))
        per_policy = {}
        for policy in cfg.policies:
            mine = [c for c in curves if c.policy == policy.id]
            p = emit_curves_csv(mine, outputs.path(f"{_slug(cfg.experiment_id)}__{_slug(policy.id)}.csv"))
            per_policy[policy.id] = str(p)
        manifest = _write_manifest(outputs, _slug(cfg.experiment_id), experiment_to_dict(cfg), cfg.master_seed,
                                   started, {"curves": str(combined), "policies": per_policy})
    except BaseException:
        outputs.discard()
        raise

    print(f"{cfg.experiment_id}: k={cfg.k} horizon={cfg.horizon} trials={cfg.trials} seed={cfg.master_seed}")
    if cfg.survival:
        print(f"{'policy':<32} {'survival rate':>22} {'mean budget':>24}")
        for policy in cfg.policies:
            rate = next(c for c in curves if c.policy == policy.id and c.metric == "survival_rate")
            budget = next(c for c in curves if c.policy == policy.id and c.metric == "mean_budget")
            print(f"{policy.id:<32} {rate.final_mean:>12.4f} ± {rate.final_stderr:<7.4f} "
                  f"{budget.final_mean:>13.2f} ± {budget.final_stderr:<8.2f}")
    else:
        print(f"{'policy':<32} {'final mean regret':>26}")
        for c in curves:
            print(f"{c.policy:<32} {c.final_mean:>14.3f} ± {c.final_stderr:<9.3f}")
    print(f"wrote {combined} and {manifest}")
    return 0


def cmd_sweep(args) -> int:
    sweep = _load(args, SweepConfig)
    try:
        base = _override(sweep.base, args)
        limit = args.max_trial_steps or sweep.max_trial_steps
        sweep = SweepConfig(base, sweep.c_values, sweep.alpha_values, sweep.m_values, limit)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    started = time.perf_counter()
    result = run_sweep(sweep, threads=args.threads)
    outputs = _Outputs(args.out_dir)
    name = _slug(base.experiment_id)
    try:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        grid = emit_grid_csv(result, outputs.path(f"{name}_grid.csv"))
        manifest = _write_manifest(outputs, name, sweep_to_dict(sweep), base.master_seed, started, {"grid": str(grid)})
    except BaseException:
        outputs.discard()
        raise
    i = result.argmin
    best = ", ".join(f"{k}={v:g}" for k, v in result.best_params.items())
    print(f"{base.experiment_id}: {len(result.mean_final_regret)} cells, trials={base.trials}, horizon={base.horizon}")
    print(f"argmin: {best}  mean final regret {result.mean_final_regret[i]:.4f} ± {result.stderr[i]:.4f}")
    print(f"wrote {grid} and {manifest}")
    return 0


def cmd_presets(args) -> int:
    for p in PRESETS.values():
        print(f"{p.name:<18} trials {p.desk_trials:>6} (paper {p.paper_trials:>7})  {p.description}")
    return 0


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gwabandit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def run_flags(p):
        p.add_argument("--preset", help="name of a built-in setup (see `presets`)")
        p.add_argument("--config", type=Path, help="JSON config file")
        p.add_argument("--trials", type=_positive_int, help="override the number of trials")
        p.add_argument("--seed", type=int, help="override the master seed")
        p.add_argument("--threads", type=_positive_int, default=1, help="worker threads (default 1)")
        p.add_argument("--out-dir", type=Path, default=Path("results"), help="output directory (default ./results)")
        p.add_argument("--paper-scale", action="store_true", help="use the original trial counts of a preset")

    exp = sub.add_parser("experiment", help="run an experiment and write regret/survival curves")
    run_flags(exp)
    exp.set_defaults(func=cmd_experiment)
    sw = sub.add_parser("sweep", help="run a parameter grid and write the final-regret grid")
    run_flags(sw)
    sw.add_argument("--max-trial-steps", type=_positive_int,
                    help="raise the cells x trials x horizon limit (needed for the fine grids)")
    sw.set_defaults(func=cmd_sweep)
    pr = sub.add_parser("presets", help="list built-in setups")
    pr.set_defaults(func=cmd_presets)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"gwabandit: config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"gwabandit: I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
