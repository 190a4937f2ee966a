"""Two heuristics: uniform sampling of maximal deletion sets and a
sliding-window local search.

Both have a compiled path (``_kernels``) and a pure-Python path that
produce identical results draw for draw; ``force_python=True`` selects
the reference path explicitly, which the equivalence tests exercise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .analysis import match_capacity
from .core import DeletionSolution, Instance, ScoredSolution, evaluate_solution
from .lcs import lcs_length
from .rng import SplitMix64


@dataclass(frozen=True)
class SamplerConfig:
    """Settings for the uniform sampler."""

    sample_count: int = 10000
    rng_seed: int = 0

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")


@dataclass(frozen=True)
class LocalSearchConfig:
    """Settings for the window search; window_k is the window length."""

    window_k: int

    def __post_init__(self):
        if self.window_k < 1:
            raise ValueError("window_k must be >= 1")


def _positions_by_symbol(instance: Instance) -> dict[int, list[int]]:
    positions: dict[int, list[int]] = {}
    for i, s in enumerate(instance.a):
        positions.setdefault(s, []).append(i)
    return positions


def _draw_deletion_set(instance: Instance, rng: SplitMix64) -> tuple[int, ...]:
    # Symbols ascending, then a uniform matchable-count subset of each
    # symbol's positions via a partial shuffle. Stream-compatible with
    # the compiled sampler.
    cap = match_capacity(instance)
    positions = _positions_by_symbol(instance)
    deleted: list[int] = []
    for s in sorted(positions):
        k = cap.matchable[s]
        if k == 0:
            continue
        work = list(positions[s])
        rng.shuffle_prefix(work, k)
        deleted.extend(work[:k])
    return tuple(sorted(deleted))


def sample_random_solution(instance: Instance, rng: SplitMix64) -> ScoredSolution:
    """One uniformly random maximally matched solution."""
    deleted = _draw_deletion_set(instance, rng)
    return evaluate_solution(instance, DeletionSolution(deleted))


def random_sampling_solver(
    instance: Instance, cfg: SamplerConfig, *, force_python: bool = False
) -> ScoredSolution:
    """Best of cfg.sample_count independent draws; the first draw that
    reaches the best value wins ties. Deterministic in cfg.rng_seed."""
    if _kernels.HAVE_NUMBA and not force_python:
        arrays = _kernels.instance_arrays(instance)
        seed = np.uint64(cfg.rng_seed & 0xFFFFFFFFFFFFFFFF)
        _, mask = _kernels.sample_best(*arrays, cfg.sample_count, seed)
        deleted = tuple(int(i) for i in np.flatnonzero(mask))
        return evaluate_solution(instance, DeletionSolution(deleted))

    rng = SplitMix64(cfg.rng_seed)
    best: tuple[int, ...] | None = None
    best_value = -1
    for _ in range(cfg.sample_count):
        deleted = _draw_deletion_set(instance, rng)
        value = evaluate_solution(
            instance, DeletionSolution(deleted), with_alignment=False
        ).value
        if value > best_value:
            best, best_value = deleted, value
    assert best is not None
    return evaluate_solution(instance, DeletionSolution(best))


@dataclass(frozen=True)
class LocalSearchStep:
    """One committed improvement: window start and subset mask refer to
    the incumbent string at the time of the move."""

    window: int
    mask: int
    value: int
    deleted_total: int


def _best_neighbor_py(
    cur: list[int],
    b: tuple[int, ...],
    remaining: dict[int, int],
    k: int,
    base_deleted: int,
) -> tuple[int, int, int]:
    # Reference twin of _kernels.best_neighbor: same scan order, same
    # tie-break (leftmost window, then smallest mask), value -1 when
    # nothing is deletable.
    length = len(cur)
    best_v, best_w, best_mask = -1, -1, 0
    for w in range(length - k + 1):
        for mask in range(1, 1 << k):
            used: dict[int, int] = {}
            popc = 0
            ok = True
            for t in range(k):
                if mask & (1 << t):
                    popc += 1
                    s = cur[w + t]
                    used[s] = used.get(s, 0) + 1
                    if used[s] > remaining.get(s, 0):
                        ok = False
                        break
            if not ok:
                continue
            kept = tuple(
                cur[i]
                for i in range(length)
                if not (w <= i < w + k and mask & (1 << (i - w)))
            )
            v = base_deleted + popc + lcs_length(kept, b)
            if v > best_v:
                best_v, best_w, best_mask = v, w, mask
    return best_v, best_w, best_mask


def local_search_sk_with_trace(
    instance: Instance, cfg: LocalSearchConfig, *, force_python: bool = False
) -> tuple[ScoredSolution, tuple[LocalSearchStep, ...]]:
    """Window search returning the committed move per iteration.

    Starts from the empty deletion set. Each iteration slides a window
    of window_k consecutive positions over the current string, tries
    every nonempty deletion subset that fits the remaining budget, and
    commits the best strictly improving one; stops when none improves.
    """
    n = len(instance.a)
    if n and cfg.window_k > n:
        raise ValueError("window_k must not exceed the length of sequence a")

    cur = list(instance.a)
    orig = list(range(n))
    remaining = dict(instance.m)
    deleted: list[int] = []
    value = lcs_length(tuple(cur), instance.b)
    steps: list[LocalSearchStep] = []
    k = cfg.window_k

    use_kernel = _kernels.HAVE_NUMBA and not force_python
    b_arr = np.array(instance.b, dtype=np.int32) if use_kernel else None

    while True:
        if use_kernel:
            rem_arr = np.zeros(instance.alphabet_size, dtype=np.int64)
            for s, count in remaining.items():
                rem_arr[s] = count
            cur_arr = np.array(cur, dtype=np.int32)
            best_v, best_w, best_mask = _kernels.best_neighbor(
                cur_arr, b_arr, rem_arr, k, len(deleted)
            )
            best_v, best_w, best_mask = int(best_v), int(best_w), int(best_mask)
        else:
            best_v, best_w, best_mask = _best_neighbor_py(
                cur, instance.b, remaining, k, len(deleted)
            )
        if best_v <= value:
            break
        doomed = [best_w + t for t in range(k) if best_mask & (1 << t)]
        for i in doomed:
            remaining[cur[i]] -= 1
            deleted.append(orig[i])
        for i in reversed(doomed):
            del cur[i]
            del orig[i]
        value = best_v
        steps.append(LocalSearchStep(best_w, best_mask, value, len(deleted)))

    scored = evaluate_solution(instance, DeletionSolution.of(deleted))
    assert scored.value == value
    return scored, tuple(steps)


def local_search_sk(
    instance: Instance, cfg: LocalSearchConfig, *, force_python: bool = False
) -> ScoredSolution:
    scored, _ = local_search_sk_with_trace(instance, cfg, force_python=force_python)
    return scored
