"""Per-trial random streams.

Every trial owns three independent streams derived from
``(master_seed, experiment_id, trial_index)`` with numpy's ``SeedSequence``:

* ``env``     - draws the arm probabilities (and the survival best-arm slot);
* ``tape``    - a 64-bit key for :func:`gwabandit.envs.tape_uniform`, which
  fixes the outcome of the j-th pull of every arm;
* ``policy``  - tie-breaking and Thompson posterior draws.

The experiment id enters as the first 8 bytes of its BLAKE2b digest. The
policy is deliberately not part of the derivation: all policies of an
experiment (and all cells of a sweep) replay the same environments, reward
tapes, and policy streams, which makes comparisons paired.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

ENV, TAPE, POLICY = 0, 1, 2


def experiment_key(experiment_id: str) -> int:
    digest = hashlib.blake2b(experiment_id.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def trial_seed(master_seed: int, experiment_id: str, trial_index: int, stream: int) -> np.random.SeedSequence:
    entropy = (int(master_seed), experiment_key(experiment_id), int(trial_index))
    return np.random.SeedSequence(entropy, spawn_key=(stream,))


@dataclass(frozen=True)
class TrialStreams:
    env: np.random.SeedSequence
    tape_key: int
    policy: np.random.SeedSequence

    @classmethod
    def derive(cls, master_seed: int, experiment_id: str, trial_index: int) -> "TrialStreams":
        tape = trial_seed(master_seed, experiment_id, trial_index, TAPE)
        return cls(
            env=trial_seed(master_seed, experiment_id, trial_index, ENV),
            tape_key=int(tape.generate_state(1, np.uint64)[0]),
            policy=trial_seed(master_seed, experiment_id, trial_index, POLICY),
        )

    def env_rng(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.env))

    def policy_rng(self) -> np.random.Generator:
        """A fresh generator; each policy run starts from the same state."""
        return np.random.Generator(np.random.PCG64(self.policy))
