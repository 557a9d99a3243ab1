import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gwabandit.envs import (
    BanditEnv,
    RewardScheme,
    SurvivalState,
    fixed_survival_arms,
    map_reward,
    pull,
    sample_normal_arms,
    sample_uniform_arms,
    step_survival,
    tape_uniform,
)
from gwabandit.errors import ConfigError, DomainError


class TestSamplers:
    def test_uniform_moments(self):
        x = sample_uniform_arms(1_000_000, np.random.default_rng(1))
        assert x.min() >= 0 and x.max() <= 1
        assert abs(x.mean() - 0.5) <= 3 * math.sqrt(1 / 12 / x.size)

    def test_normal_moments(self):
        x = sample_normal_arms(1_000_000, np.random.default_rng(2))
        assert x.min() >= 0 and x.max() <= 1
        assert abs(x.mean() - 0.5) <= 3 * 0.1 / math.sqrt(x.size)
        assert abs(x.std() / 0.1 - 1) <= 0.01

    def test_normal_rejects_rather_than_clamps(self):
        x = sample_normal_arms(200_000, np.random.default_rng(3), mean=0.05, sd=0.1)
        assert x.min() > 0 and np.count_nonzero(x == 0.0) == 0

    @pytest.mark.parametrize("sampler", [sample_uniform_arms, sample_normal_arms])
    def test_seeded(self, sampler):
        a = sampler(16, np.random.default_rng(77))
        b = sampler(16, np.random.default_rng(77))
        np.testing.assert_array_equal(a, b)

    @pytest.mark.parametrize("sampler", [sample_uniform_arms, sample_normal_arms])
    def test_k_too_small(self, sampler):
        with pytest.raises(ConfigError):
            sampler(1, np.random.default_rng(0))

    def test_survival_arms(self):
        p = fixed_survival_arms(8)
        assert sorted(p.tolist()) == [0.45] * 7 + [0.55]
        assert p.max() - p.min() == pytest.approx(0.10, abs=1e-15)
        assert sorted(fixed_survival_arms(2, best_index=1).tolist()) == [0.45, 0.55]
        assert fixed_survival_arms(5, best_index=3)[3] == 0.55


class TestBanditEnv:
    def test_best_prob(self):
        env = BanditEnv([0.2, 0.9, 0.4])
        assert env.best_prob == 0.9 and env.k == 3

    @pytest.mark.parametrize("probs", [[0.5], [0.2, 1.2], [-0.1, 0.3]])
    def test_invalid(self, probs):
        with pytest.raises(DomainError):
            BanditEnv(probs)


class TestPull:
    @pytest.mark.parametrize("scheme, win, lose", [
        (RewardScheme.ZERO_ONE, (1.0, 1.0), (0.0, 0.0)),
        (RewardScheme.PLUS_MINUS_ONE, (1.0, 1.0), (-1.0, 0.0)),
    ])
    def test_degenerate(self, scheme, win, lose):
        env = BanditEnv([1.0, 0.0], scheme)
        rng = np.random.default_rng(0)
        assert all(pull(env, 0, rng) == win for _ in range(100))
        assert all(pull(env, 1, rng) == lose for _ in range(100))

    def test_success_rate(self):
        env = BanditEnv([0.55, 0.45])
        rng = np.random.default_rng(5)
        n = 1_000_000
        u = rng.random(n)
        hits = np.count_nonzero(u < env.probs[0])
        assert abs(hits / n - 0.55) <= 3 * math.sqrt(0.55 * 0.45 / n)
        few = sum(pull(env, 0, rng)[0] for _ in range(2000))
        assert abs(few / 2000 - 0.55) <= 4 * math.sqrt(0.55 * 0.45 / 2000)

    def test_reward_mapping(self):
        pm = BanditEnv([0.5, 0.5], RewardScheme.PLUS_MINUS_ONE)
        zo = BanditEnv([0.5, 0.5])
        for s in (True, False):
            raw, pol = map_reward(pm, s)
            assert pol == (raw + 1) / 2
            raw, pol = map_reward(zo, s)
            assert pol == raw

    def test_bad_arm(self):
        with pytest.raises(DomainError):
            pull(BanditEnv([0.1, 0.2]), 2, np.random.default_rng(0))


class TestTape:
    def test_uniform_and_independent(self):
        key = np.uint64(0x1234ABCD)
        n = 1_000_000
        for arm in (0, 3):
            u = np.array([tape_uniform(key, arm, j) for j in range(n)])
            assert u.min() >= 0 and u.max() < 1
            assert abs(u.mean() - 0.5) <= 3 * math.sqrt(1 / 12 / n)
            rate = np.count_nonzero(u < 0.55) / n
            assert abs(rate - 0.55) <= 3 * math.sqrt(0.55 * 0.45 / n)
            # lag-1 correlation of a good stream is O(1/sqrt(n))
            assert abs(np.corrcoef(u[:-1], u[1:])[0, 1]) <= 4 / math.sqrt(n)

    def test_arms_differ(self):
        key = np.uint64(99)
        a = np.array([tape_uniform(key, 0, j) for j in range(10_000)])
        b = np.array([tape_uniform(key, 1, j) for j in range(10_000)])
        assert abs(np.corrcoef(a, b)[0, 1]) <= 4 / 100


class TestSurvival:
    def test_examples(self):
        s = step_survival(SurvivalState(1), -1)
        assert s.budget == 0 and s.ruined
        s = step_survival(SurvivalState(80), +1)
        assert s.budget == 81 and not s.ruined
        s = step_survival(SurvivalState(2), -1)
        assert s.budget == 1 and not s.ruined

    def test_ruin_absorbing(self):
        s = step_survival(SurvivalState(1), -1)
        with pytest.raises(DomainError):
            step_survival(s, +1)
        assert s.budget == 0 and s.ruined

    @pytest.mark.parametrize("b0", [0, -3, 2.5])
    def test_bad_budget(self, b0):
        with pytest.raises(ConfigError):
            SurvivalState(b0)

    def test_bad_reward(self):
        with pytest.raises(DomainError):
            step_survival(SurvivalState(3), 0)

    @given(st.integers(1, 30), st.lists(st.sampled_from([1, -1]), max_size=200))
    def test_random_walk(self, b0, rewards):
        s = SurvivalState(b0)
        wins = losses = 0
        for t, r in enumerate(rewards, 1):
            step_survival(s, r)
            wins += r == 1
            losses += r == -1
            if s.ruined:
                assert s.budget == 0
                break
            assert s.budget - b0 == wins - losses
            assert s.budget <= b0 + t
