"""Grid sweeps over G-UCB1's ``c`` or GWA-UCB1's ``(alpha, m)``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import SweepConfig
from .runner import aggregate, prepare_trials, run_policies


@dataclass
class SweepResult:
    """Mean and standard error of final regret for every grid cell.

    ``params`` has one row per cell, columns named by ``param_names``, in
    the grid's row-major order (alpha outer, m inner for GWA sweeps).
    """

    param_names: tuple[str, ...]
    params: np.ndarray
    mean_final_regret: np.ndarray
    stderr: np.ndarray
    trials: int | None

    @property
    def argmin(self) -> int:
        # np.argmin keeps the first of equal minima, so ties resolve in grid order.
        return int(np.argmin(self.mean_final_regret))

    @property
    def best_params(self) -> dict[str, float]:
        return dict(zip(self.param_names, self.params[self.argmin].tolist()))

    def as_grid(self) -> np.ndarray:
        """Mean final regret reshaped to (n_alpha, n_m); c sweeps stay 1-D."""
        if len(self.param_names) == 1:
            return self.mean_final_regret
        n_alpha = np.unique(self.params[:, 0]).size
        return self.mean_final_regret.reshape(n_alpha, -1)


def run_sweep(sweep: SweepConfig, threads: int = 1) -> SweepResult:
    """Evaluate every grid cell on the same trials (paired seeds).

    Only the final checkpoint is recorded; the base experiment's
    checkpoint list is ignored.
    """
    base = sweep.base.with_overrides(checkpoints=(sweep.base.horizon,))
    params = np.array([p for p, _ in sweep.cells], dtype=np.float64)
    policies = [spec for _, spec in sweep.cells]
    materials = prepare_trials(base)
    results = run_policies(base, policies, threads=threads, materials=materials)
    means = np.empty(len(policies))
    errs = np.empty(len(policies))
    for i, res in enumerate(results):
        mean, err = aggregate(res.regret)
        means[i], errs[i] = mean[-1], err[-1]
    return SweepResult(sweep.param_names, params, means, errs, base.trials)
