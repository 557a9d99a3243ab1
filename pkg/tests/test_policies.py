import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from gwabandit.envs import tape_uniform
from gwabandit.errors import DomainError
from gwabandit.means import GwaParams
from gwabandit.policies import (
    ArmStats,
    PolicyKind,
    PolicySpec,
    PolicyState,
    argmax_random_tie,
    g_ucb1_score,
    gwa_ucb1_score,
    scores,
    select_arm,
    thompson_sample,
    ucb1_score,
    ucb1_tuned_score,
    update,
)
from gwabandit.sim import ExperimentConfig, TrialStreams, run_trial
from gwabandit.sim.runner import make_env


def stats_of(rewards):
    return ArmStats(len(rewards), float(sum(rewards)), float(sum(r * r for r in rewards)))


HALF = stats_of([1] * 5 + [0] * 5)  # mean 0.5 over 10 pulls

# Expected values below were computed with tests/oracles.py at 50 digits.
UCB1_HALF_N100 = 1.4597051824376162
UCB1_ONE_N2 = 2.1774100225154747
TUNED_1011_N10 = 1.1293567823462866
TUNED_1111_N10 = 1.3793567823462866
G_UCB1_C030_HALF_N100 = 0.78791155473128486
GWA_HALF_N100 = 0.72985259121880812
GWA_TUNED_HALF_N100 = 0.60461769667957607


class TestScoreExamples:
    def test_ucb1(self):
        assert ucb1_score(stats_of([0]), 1) == 0.0
        assert ucb1_score(HALF, 100) == pytest.approx(UCB1_HALF_N100, rel=1e-14)
        assert ucb1_score(stats_of([1]), 2) == pytest.approx(UCB1_ONE_N2, rel=1e-14)

    def test_ucb1_tuned(self):
        assert ucb1_tuned_score(stats_of([0]), 1) == 0.0
        assert ucb1_tuned_score(stats_of([1, 0, 1, 1]), 10) == pytest.approx(TUNED_1011_N10, rel=1e-14)
        assert ucb1_tuned_score(stats_of([1, 1, 1, 1]), 10) == pytest.approx(TUNED_1111_N10, rel=1e-14)

    def test_g_ucb1(self):
        s = stats_of([1, 0, 0])
        assert g_ucb1_score(s, 50, 0.0) == pytest.approx(1 / 3, rel=1e-15)
        assert g_ucb1_score(HALF, 100, 1.0) == ucb1_score(HALF, 100)
        assert g_ucb1_score(HALF, 100, 0.30) == pytest.approx(G_UCB1_C030_HALF_N100, rel=1e-14)

    def test_gwa_ucb1(self):
        assert gwa_ucb1_score(HALF, 100, GwaParams(0.5, 1.0)) == pytest.approx(GWA_HALF_N100, rel=1e-14)
        assert gwa_ucb1_score(HALF, 100, GwaParams(0.5, 1.0)) == pytest.approx(UCB1_HALF_N100 / 2, rel=1e-15)
        assert gwa_ucb1_score(HALF, 100, GwaParams(0.21, 1.30)) == pytest.approx(GWA_TUNED_HALF_N100, rel=1e-13)
        s = stats_of([1] * 7 + [0] * 3)
        for m in (-2.0, 0.0, 1.3, 4.0):
            assert gwa_ucb1_score(s, 40, GwaParams(0.0, m)) == 0.7

    def test_frozen_values_match_oracle(self):
        half = [1] * 5 + [0] * 5
        assert float(oracles.ucb1(half, 100)) == UCB1_HALF_N100
        assert float(oracles.ucb1_tuned([1, 0, 1, 1], 10)) == TUNED_1011_N10
        assert float(oracles.gwa_ucb1(half, 100, 0.21, 1.3)) == GWA_TUNED_HALF_N100


class TestScoreErrors:
    @pytest.mark.parametrize("fn", [ucb1_score, ucb1_tuned_score])
    def test_unpulled(self, fn):
        with pytest.raises(DomainError):
            fn(ArmStats(), 5)

    def test_negative_c(self):
        with pytest.raises(DomainError):
            g_ucb1_score(HALF, 10, -0.1)

    def test_zero_n(self):
        with pytest.raises(DomainError):
            ucb1_score(HALF, 0)

    def test_gwa_unpulled(self):
        with pytest.raises(DomainError):
            gwa_ucb1_score(ArmStats(), 5, GwaParams(0.2, 1.0))


def test_scores_match_oracles_on_random_stats():
    rng = np.random.default_rng(5)
    for _ in range(300):
        t = int(rng.integers(1, 60))
        rewards = rng.integers(0, 2, t).tolist()
        n = t + int(rng.integers(0, 500))
        s = stats_of(rewards)
        c = rng.uniform(0, 2)
        alpha, m = rng.uniform(), rng.uniform(-2, 4)
        if m < 0 and sum(rewards) == 0:
            continue
        assert ucb1_score(s, n) == pytest.approx(float(oracles.ucb1(rewards, n)), rel=1e-12, abs=1e-12)
        assert ucb1_tuned_score(s, n) == pytest.approx(float(oracles.ucb1_tuned(rewards, n)), rel=1e-12, abs=1e-12)
        assert g_ucb1_score(s, n, c) == pytest.approx(float(oracles.g_ucb1(rewards, n, c)), rel=1e-12, abs=1e-12)
        assert gwa_ucb1_score(s, n, GwaParams(alpha, m)) == pytest.approx(
            float(oracles.gwa_ucb1(rewards, n, alpha, m)), rel=1e-12, abs=1e-12)


rewards_st = st.lists(st.integers(0, 1), min_size=1, max_size=40)


@given(rewards_st, st.integers(1, 10_000))
def test_tuned_cap(rewards, extra):
    s = stats_of(rewards)
    n = len(rewards) + extra
    bonus_sq = (ucb1_tuned_score(s, n) - s.mean) ** 2
    assert bonus_sq <= math.log(n) / s.pulls * 0.25 * (1 + 1e-12)


@given(rewards_st, st.integers(3, 5000), st.floats(0.0, 3.0))
def test_bonus_monotone(rewards, n, c):
    s = stats_of(rewards)
    # nondecreasing in n
    for fn in (lambda s, n: ucb1_score(s, n), ucb1_tuned_score, lambda s, n: g_ucb1_score(s, n, c)):
        assert fn(s, n + 1) >= fn(s, n)
    # nonincreasing in T at fixed mean: duplicate the reward history
    doubled = stats_of(rewards * 2)
    for fn in (lambda s, n: ucb1_score(s, n), lambda s, n: g_ucb1_score(s, n, c)):
        assert fn(doubled, n) <= fn(s, n) + 1e-15


class TestPolicySpec:
    def test_ids(self):
        assert PolicySpec(PolicyKind.G_UCB1, c=0.3).id == "G-UCB1(c=0.3)"
        assert PolicySpec(PolicyKind.GWA_UCB1, gwa=GwaParams(0.21, 1.3)).id == "GWA-UCB1(alpha=0.21 m=1.3)"

    def test_parse(self):
        assert PolicySpec.parse("gwa-ucb1", alpha=0.21, m=1.3).gwa == GwaParams(0.21, 1.3)
        assert PolicySpec.parse("Thompson").kind is PolicyKind.THOMPSON

    @pytest.mark.parametrize("kwargs", [
        dict(kind=PolicyKind.G_UCB1),
        dict(kind=PolicyKind.G_UCB1, c=-1.0),
        dict(kind=PolicyKind.UCB1, c=1.0),
        dict(kind=PolicyKind.GWA_UCB1),
        dict(kind=PolicyKind.THOMPSON, gwa=GwaParams(0.1, 1.0)),
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            PolicySpec(**kwargs)

    def test_unknown_name(self):
        with pytest.raises(DomainError):
            PolicySpec.parse("eps-greedy")


class TestUpdate:
    def test_fresh_update(self):
        st_ = PolicyState.fresh(PolicySpec(PolicyKind.UCB1), 3)
        update(st_, 0, 1.0)
        assert st_.arms[0].pulls == 1 and st_.arms[0].mean == 1.0

    def test_two_updates(self):
        st_ = PolicyState.fresh(PolicySpec(PolicyKind.UCB1), 2)
        update(st_, 1, 1.0)
        update(st_, 1, 0.0)
        assert st_.arms[1].mean == 0.5
        assert st_.arms[1].reward_sq_sum == 1.0
        assert st_.arms[0] == ArmStats()

    @pytest.mark.parametrize("arm, r", [(3, 1.0), (-1, 0.0), (0, 1.5), (0, -1.0)])
    def test_invalid(self, arm, r):
        st_ = PolicyState.fresh(PolicySpec(PolicyKind.UCB1), 3)
        with pytest.raises(DomainError):
            update(st_, arm, r)

    @given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 1)), max_size=60))
    def test_conservation(self, moves):
        st_ = PolicyState.fresh(PolicySpec(PolicyKind.UCB1), 5)
        for arm, r in moves:
            update(st_, arm, r)
        assert st_.total_pulls == len(moves) == sum(a.pulls for a in st_.arms)
        for a in st_.arms:
            assert a.reward_sq_sum == a.reward_sum
            assert 0 <= a.reward_sum <= a.pulls

    def test_k_at_least_two(self):
        with pytest.raises(DomainError):
            PolicyState.fresh(PolicySpec(PolicyKind.UCB1), 1)


class TestSelectArm:
    def test_initialization_order(self):
        st_ = PolicyState.fresh(PolicySpec(PolicyKind.THOMPSON), 3)
        rng = np.random.default_rng(0)
        seen = []
        for _ in range(3):
            arm = select_arm(st_, rng)
            seen.append(arm)
            update(st_, arm, 0.0)
        assert seen == [0, 1, 2]

    def test_tie_break_is_uniform(self):
        st_ = PolicyState(PolicySpec(PolicyKind.UCB1), [stats_of([1, 0]), stats_of([0, 1])], 4)
        rng = np.random.default_rng(2024)
        n = 10_000
        ones = sum(select_arm(st_, rng) for _ in range(n))
        assert abs(ones / n - 0.5) <= 3 * math.sqrt(0.25 / n)

    def test_gwa_half_one_agrees_with_ucb1(self):
        arms = [stats_of([1, 0, 1]), stats_of([0, 0]), stats_of([1, 1, 0, 0, 1])]
        a = PolicyState(PolicySpec(PolicyKind.UCB1), [ArmStats(**vars(s)) for s in arms], 10)
        b = PolicyState(PolicySpec(PolicyKind.GWA_UCB1, gwa=GwaParams(0.5, 1.0)), [ArmStats(**vars(s)) for s in arms], 10)
        for seed in range(20):
            assert select_arm(a, np.random.default_rng(seed)) == select_arm(b, np.random.default_rng(seed))

    def test_scale_invariance(self):
        values = np.array([0.3, 0.7, 0.7, 0.1])
        for seed in range(50):
            assert argmax_random_tie(values, np.random.default_rng(seed)) == argmax_random_tie(
                values * 3.7, np.random.default_rng(seed))

    def test_random_policy_skips_initialization(self):
        st_ = PolicyState.fresh(PolicySpec(PolicyKind.RANDOM), 4)
        picks = {select_arm(st_, np.random.default_rng(s)) for s in range(40)}
        assert picks == {0, 1, 2, 3}

    def test_scores_uses_rng_only_for_thompson(self):
        st_ = PolicyState(PolicySpec(PolicyKind.UCB1), [stats_of([1]), stats_of([0])], 2)
        assert scores(st_).shape == (2,)


class TestThompson:
    def test_prior_is_uniform(self):
        rng = np.random.default_rng(1)
        draws = np.array([thompson_sample(ArmStats(), rng) for _ in range(20_000)])
        assert abs(draws.mean() - 0.5) <= 3 * math.sqrt(1 / 12 / draws.size)
        assert draws.min() >= 0 and draws.max() <= 1

    def test_posterior_mean(self):
        s = stats_of([1, 1, 1, 0])
        rng = np.random.default_rng(9)
        draws = np.array([thompson_sample(s, rng) for _ in range(100_000)])
        a, b = 4.0, 2.0
        sd = math.sqrt(a * b / ((a + b) ** 2 * (a + b + 1)))
        assert abs(draws.mean() - 2 / 3) <= 3 * sd / math.sqrt(draws.size)

    def test_seeded(self):
        s = stats_of([1, 0])
        a = [thompson_sample(s, np.random.default_rng(4)) for _ in range(3)]
        b = [thompson_sample(s, np.random.default_rng(4)) for _ in range(3)]
        assert a == b


def replay(config, spec, trial_index):
    """Pure-Python trial using select_arm/update and the same streams."""
    streams = TrialStreams.derive(config.master_seed, config.experiment_id, trial_index)
    env = make_env(config, streams)
    rng = streams.policy_rng()
    state = PolicyState.fresh(spec, config.k)
    actions = []
    for _ in range(config.horizon):
        arm = select_arm(state, rng)
        success = tape_uniform(np.uint64(streams.tape_key), arm, state.arms[arm].pulls) < env.probs[arm]
        update(state, arm, 1.0 if success else 0.0)
        actions.append(arm)
    return actions


@pytest.mark.parametrize("spec", [
    PolicySpec(PolicyKind.UCB1),
    PolicySpec(PolicyKind.UCB1_TUNED),
    PolicySpec(PolicyKind.G_UCB1, c=0.3),
    PolicySpec(PolicyKind.GWA_UCB1, gwa=GwaParams(0.21, 1.3)),
    PolicySpec(PolicyKind.GWA_UCB1, gwa=GwaParams(0.4, -1.0)),
    PolicySpec(PolicyKind.THOMPSON),
    PolicySpec(PolicyKind.RANDOM),
], ids=lambda s: s.id)
def test_kernel_matches_python_replay(spec):
    config = ExperimentConfig("replay", 4, 300, 3, "uniform", [spec], master_seed=8)
    for trial in range(3):
        fast = run_trial(config, spec, trial, record_actions=True).actions.tolist()
        assert fast == replay(config, spec, trial)
