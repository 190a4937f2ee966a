import functools

from lfcs.core import seq_from_letters
from lfcs.lcs import lcs_length, lcs_table, lcs_traceback
from lfcs.rng import SplitMix64


def _oracle(x, y):
    # Exponential memoized recursion, independent of the DP under test.
    @functools.lru_cache(maxsize=None)
    def go(i, j):
        if i == len(x) or j == len(y):
            return 0
        if x[i] == y[j]:
            return 1 + go(i + 1, j + 1)
        return max(go(i + 1, j), go(i, j + 1))

    return go(0, 0)


def _random_pair(rng, max_len=10, alphabet=3):
    x = tuple(rng.below(alphabet) for _ in range(rng.below(max_len + 1)))
    y = tuple(rng.below(alphabet) for _ in range(rng.below(max_len + 1)))
    return x, y


def test_length_on_running_example():
    assert lcs_length(seq_from_letters("cbcda"), seq_from_letters("cabbdda")) == 4


def test_length_empty_side():
    assert lcs_length(seq_from_letters("abc"), ()) == 0
    assert lcs_length((), seq_from_letters("abc")) == 0
    assert lcs_length((), ()) == 0


def test_length_known_pair():
    assert lcs_length(seq_from_letters("abcabba"), seq_from_letters("cbabac")) == 4


def test_length_matches_oracle():
    rng = SplitMix64(2024)
    for _ in range(300):
        x, y = _random_pair(rng)
        assert lcs_length(x, y) == _oracle(x, y)


def test_length_symmetry():
    rng = SplitMix64(2025)
    for _ in range(200):
        x, y = _random_pair(rng)
        assert lcs_length(x, y) == lcs_length(y, x)


def test_appending_shared_symbol_adds_one():
    rng = SplitMix64(2026)
    for _ in range(200):
        x, y = _random_pair(rng)
        s = rng.below(3)
        assert lcs_length(x + (s,), y + (s,)) == lcs_length(x, y) + 1


def test_table_borders_and_steps():
    rng = SplitMix64(2027)
    for _ in range(100):
        x, y = _random_pair(rng, max_len=8)
        table = lcs_table(x, y)
        assert all(table[0][j] == 0 for j in range(len(y) + 1))
        assert all(table[i][0] == 0 for i in range(len(x) + 1))
        for i in range(1, len(x) + 1):
            for j in range(1, len(y) + 1):
                assert table[i][j] - table[i - 1][j] in (0, 1)
                assert table[i][j] >= max(table[i - 1][j], table[i][j - 1])
        assert table[len(x)][len(y)] == lcs_length(x, y)


def test_traceback_single_match():
    assert lcs_traceback(seq_from_letters("b"), seq_from_letters("b")) == [(0, 0)]


def test_traceback_spells_running_example():
    x = seq_from_letters("cbcda")
    y = seq_from_letters("cabbdda")
    pairs = lcs_traceback(x, y)
    assert len(pairs) == 4
    assert tuple(x[i] for i, _ in pairs) == seq_from_letters("cbda")


def test_traceback_tie_prefers_first_string_advance():
    # "ab" vs "ba": both length-1 subsequences exist; the diagonal-then-
    # advance-x rule lands on 'a' matched at (0, 1).
    assert lcs_traceback(seq_from_letters("ab"), seq_from_letters("ba")) == [(0, 1)]


def test_traceback_properties():
    rng = SplitMix64(2028)
    for _ in range(200):
        x, y = _random_pair(rng)
        pairs = lcs_traceback(x, y)
        assert len(pairs) == lcs_length(x, y)
        for (i1, j1), (i2, j2) in zip(pairs, pairs[1:]):
            assert i1 < i2 and j1 < j2
        for i, j in pairs:
            assert x[i] == y[j]
