"""Compiled single-trial loop.

The loop mirrors :func:`gwabandit.policies.select_arm` and
:func:`gwabandit.policies.update` step for step, including the order in
which the policy generator is consumed, so a pure-Python replay with the
same streams reproduces its action sequence exactly.
"""
import math

import numpy as np
from numba import njit

from ..envs import tape_uniform
from ..policies import (
    PolicyKind,
    _g_ucb1_nb,
    _gwa_ucb1_nb,
    _ucb1_nb,
    _ucb1_tuned_nb,
)

UCB1 = int(PolicyKind.UCB1)
UCB1_TUNED = int(PolicyKind.UCB1_TUNED)
G_UCB1 = int(PolicyKind.G_UCB1)
GWA_UCB1 = int(PolicyKind.GWA_UCB1)
THOMPSON = int(PolicyKind.THOMPSON)
RANDOM = int(PolicyKind.RANDOM)


@njit(nogil=True, cache=True)
def _argmax_random_tie(values, rng):
    k = values.shape[0]
    best = values[0]
    count = 1
    for i in range(1, k):
        v = values[i]
        if v > best:
            best = v
            count = 1
        elif v == best:
            count += 1
    if count == 1:
        for i in range(k):
            if values[i] == best:
                return i
    pick = rng.integers(0, count)
    for i in range(k):
        if values[i] == best:
            if pick == 0:
                return i
            pick -= 1
    return -1


@njit(nogil=True, cache=True)
def simulate(kind, c, alpha, m, probs, survival, initial_budget, horizon, checkpoints,
             tape_key, rng, actions_out, regret_out, survived_out, budget_out):
    """Run one trial, writing metrics at each checkpoint into the ``*_out`` rows.

    ``actions_out`` has length ``horizon`` to record every action, or 0 to
    skip recording. Returns the number of steps played (less than
    ``horizon`` only when a survival run is ruined).
    """
    k = probs.shape[0]
    pulls = np.zeros(k, np.int64)
    sums = np.zeros(k)
    sq_sums = np.zeros(k)
    values = np.empty(k)
    best_p = probs.max()
    record = actions_out.shape[0] > 0
    n_cp = checkpoints.shape[0]

    regret = 0.0
    budget = initial_budget
    alive = True
    ci = 0
    played = 0
    for t in range(horizon):
        arm = -1
        if kind == RANDOM:
            arm = rng.integers(0, k)
        else:
            for i in range(k):
                if pulls[i] == 0:
                    arm = i
                    break
        if arm < 0:
            if kind == THOMPSON:
                for i in range(k):
                    values[i] = rng.beta(sums[i] + 1.0, pulls[i] - sums[i] + 1.0)
            else:
                log_n = math.log(t)
                for i in range(k):
                    if kind == UCB1:
                        values[i] = _ucb1_nb(sums[i], sq_sums[i], pulls[i], log_n)
                    elif kind == UCB1_TUNED:
                        values[i] = _ucb1_tuned_nb(sums[i], sq_sums[i], pulls[i], log_n)
                    elif kind == G_UCB1:
                        values[i] = _g_ucb1_nb(sums[i], sq_sums[i], pulls[i], log_n, c)
                    else:
                        values[i] = _gwa_ucb1_nb(sums[i], sq_sums[i], pulls[i], log_n, alpha, m)
            arm = _argmax_random_tie(values, rng)

        success = tape_uniform(tape_key, arm, pulls[arm]) < probs[arm]
        r = 1.0 if success else 0.0
        pulls[arm] += 1
        sums[arm] += r
        sq_sums[arm] += r * r
        regret += best_p - probs[arm]
        if record:
            actions_out[t] = arm
        played = t + 1
        if survival:
            budget += 1 if success else -1
            if budget <= 0:
                budget = 0
                alive = False
        while ci < n_cp and checkpoints[ci] == played:
            regret_out[ci] = regret
            survived_out[ci] = alive
            budget_out[ci] = budget
            ci += 1
        if not alive:
            break
    # Ruin is absorbing: later checkpoints keep the frozen state.
    while ci < n_cp:
        regret_out[ci] = regret
        survived_out[ci] = alive
        budget_out[ci] = budget
        ci += 1
    return played
