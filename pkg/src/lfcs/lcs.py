"""Classical longest-common-subsequence dynamic programming.

The quadratic table is the inner kernel of every solver in this package.
Inputs are any indexable sequences with ``==`` on elements, so both
symbol-id tuples and plain strings work.
"""

from __future__ import annotations

from typing import Sequence


def lcs_length(x: Sequence, y: Sequence) -> int:
    """Length of a longest common subsequence of x and y, in O(|x|*|y|)."""
    if len(y) > len(x):
        x, y = y, x
    m = len(y)
    if m == 0:
        return 0
    row = [0] * (m + 1)
    for xi in x:
        diag = 0
        for j in range(1, m + 1):
            tmp = row[j]
            if xi == y[j - 1]:
                if diag + 1 > tmp:
                    row[j] = diag + 1
            if row[j - 1] > row[j]:
                row[j] = row[j - 1]
            diag = tmp
    return row[m]


def lcs_table(x: Sequence, y: Sequence) -> list[list[int]]:
    """Full (|x|+1) x (|y|+1) DP table; cell [i][j] is the LCS length of
    x[:i] and y[:j]."""
    n, m = len(x), len(y)
    table = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        xi = x[i - 1]
        prev = table[i - 1]
        cur = table[i]
        for j in range(1, m + 1):
            if xi == y[j - 1]:
                cur[j] = prev[j - 1] + 1
            else:
                up = prev[j]
                left = cur[j - 1]
                cur[j] = up if up >= left else left
    return table


def lcs_traceback(x: Sequence, y: Sequence) -> list[tuple[int, int]]:
    """One LCS witness as strictly increasing index pairs (i, j) with
    x[i] == y[j].

    Deterministic tie rule: walking back from the bottom-right corner,
    take the diagonal whenever the symbols match, otherwise step in the
    x direction when it preserves the table value, else in y.
    """
    table = lcs_table(x, y)
    i, j = len(x), len(y)
    pairs: list[tuple[int, int]] = []
    while i > 0 and j > 0:
        if x[i - 1] == y[j - 1]:
            pairs.append((i - 1, j - 1))
            i -= 1
            j -= 1
        elif table[i - 1][j] >= table[i][j - 1]:
            i -= 1
        else:
            j -= 1
    pairs.reverse()
    return pairs
