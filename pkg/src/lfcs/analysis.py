"""Search-space accounting and value bounds.

The number of distinct maximally matched deletion sets factors as a
product of per-symbol binomials, which is what makes exhaustive
enumeration viable on a useful slice of instances and tells the random
sampler how much ground its draws have to cover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    DeletionSolution,
    Instance,
    Multiset,
    ScoredSolution,
    evaluate_solution,
    symbol_counts,
)
from .lcs import lcs_length


@dataclass(frozen=True)
class MatchCapacity:
    """Per-symbol deletion capacities.

    ``in_a`` counts occurrences in ``a``; ``matchable`` is the number of
    occurrences a maximal solution deletes, the smaller of the multiset
    count and the occurrence count. ``total`` sums the matchable counts,
    i.e. the multiset-intersection size of ``a`` and ``m``.
    """

    in_a: Multiset
    matchable: Multiset
    total: int


def match_capacity(instance: Instance) -> MatchCapacity:
    in_a = symbol_counts(instance.a)
    matchable = {s: min(instance.m.get(s, 0), c) for s, c in in_a.items()}
    for s in instance.m:
        matchable.setdefault(s, 0)
    return MatchCapacity(in_a, matchable, sum(matchable.values()))


def search_space_size(instance: Instance) -> int:
    """Number of maximally matched deletion sets: the product over
    symbols of C(occurrences in a, matchable count). Exact integer."""
    cap = match_capacity(instance)
    size = 1
    for s, a_count in cap.in_a.items():
        size *= math.comb(a_count, cap.matchable[s])
    return size


@dataclass(frozen=True)
class Bounds:
    lower: int
    upper: int


def bounds(instance: Instance) -> Bounds:
    """Value bounds: the plain LCS from below; the LCS plus the
    multiset-intersection size from above."""
    base = lcs_length(instance.a, instance.b)
    return Bounds(base, base + match_capacity(instance).total)


def normalize_to_maximal(instance: Instance, scored: ScoredSolution) -> ScoredSolution:
    """Promote a solution to one that deletes the full matchable count of
    every symbol, never decreasing the value.

    Promotion scans each symbol's spare occurrences left to right and
    deletes unaligned ones before aligned ones: an unaligned deletion
    leaves the witness intact (+1 value), a forced aligned deletion costs
    at most the one pair it breaks (value unchanged at worst).
    """
    ev = evaluate_solution(instance, scored.solution, with_alignment=True)
    aligned = {i for i, _ in ev.alignment or ()}
    deleted = set(ev.solution.deleted)
    cap = match_capacity(instance)
    positions: dict[int, list[int]] = {}
    for i, s in enumerate(instance.a):
        positions.setdefault(s, []).append(i)
    for s, want in cap.matchable.items():
        have = sum(1 for d in ev.solution.deleted if instance.a[d] == s)
        if have >= want:
            continue
        spare = [p for p in positions[s] if p not in deleted]
        spare.sort(key=lambda p: (p in aligned, p))
        for p in spare[: want - have]:
            deleted.add(p)
    out = evaluate_solution(instance, DeletionSolution.of(deleted), with_alignment=True)
    assert out.value >= ev.value, f"promotion decreased value {ev.value} -> {out.value}"
    return out
