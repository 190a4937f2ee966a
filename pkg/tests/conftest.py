"""Shared fixtures and fuzz helpers."""

from __future__ import annotations

import pytest

from lfcs.core import Instance, instance_from_letters
from lfcs.generator import GenConfig, generate_instance
from lfcs.rng import SplitMix64, derive_seed

# The running example used across the suite: every symbol of the fill
# multiset occurs twice in a, so there are exactly 8 maximal deletion
# sets and the optimum is 7.
WORKED_A = "abcbcdda"
WORKED_B = "cabbdda"
WORKED_M = "abd"


@pytest.fixture
def worked_instance() -> Instance:
    return instance_from_letters(WORKED_A, WORKED_B, WORKED_M)


def gen(n: int, alphabet: int, seed: int) -> Instance:
    return generate_instance(GenConfig(n=n, alphabet_size=alphabet, seed=seed))


def small_instances(count: int, master_seed: int, max_n: int = 12):
    """Deterministic stream of generated instances with n <= max_n and
    varied alphabet sizes, for oracle-equivalence fuzzing."""
    rng = SplitMix64(derive_seed(master_seed, 0xF022))
    out = []
    for i in range(count):
        n = 2 + rng.below(max_n - 1)
        alphabet = 1 + rng.below(max(1, n // 2))
        out.append(gen(n, alphabet, derive_seed(master_seed, i)))
    return out
