"""Compiled inner loops for the solvers.

Same algorithms as the pure-Python paths, jitted for the benchmark
harness where millions of LCS evaluations happen. Every kernel is
bit-compatible with its Python reference: the SplitMix64 stream here
consumes draws in exactly the same order as ``rng.SplitMix64``, and the
tests assert identical outputs. When numba is unavailable the callers
fall back to the reference implementations.
"""

from __future__ import annotations

import numpy as np

from . import rng as _rng

try:
    from numba import njit

    HAVE_NUMBA = True
except Exception:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


_GOLD = np.uint64(_rng.GOLDEN)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_ZERO = np.uint64(0)


def instance_arrays(instance):
    """Flatten an instance into the array form the kernels consume:
    (a, b, pos_flat, pos_off, caps) with per-symbol position lists and
    matchable deletion counts."""
    sigma = instance.alphabet_size
    a = np.array(instance.a, dtype=np.int32)
    b = np.array(instance.b, dtype=np.int32)
    per: list[list[int]] = [[] for _ in range(sigma)]
    for i, s in enumerate(instance.a):
        per[s].append(i)
    pos_off = np.zeros(sigma + 1, dtype=np.int64)
    flat: list[int] = []
    caps = np.zeros(sigma, dtype=np.int64)
    for s in range(sigma):
        flat.extend(per[s])
        pos_off[s + 1] = len(flat)
        caps[s] = min(instance.m.get(s, 0), len(per[s]))
    pos_flat = np.array(flat, dtype=np.int64) if flat else np.zeros(0, dtype=np.int64)
    return a, b, pos_flat, pos_off, caps


@njit(cache=True)
def _mix(z):
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def _next(state):
    state = state + _GOLD
    return state, _mix(state)


@njit(cache=True)
def _below(state, n):
    # Unbiased bounded draw: reject u below 2^64 mod n.
    nn = np.uint64(n)
    threshold = (_ZERO - nn) % nn
    while True:
        state, u = _next(state)
        if u >= threshold:
            return state, np.int64(u % nn)


@njit(cache=True)
def _lcs_row(x, y, row):
    m = y.shape[0]
    for j in range(m + 1):
        row[j] = 0
    for i in range(x.shape[0]):
        xi = x[i]
        diag = row[0]
        for j in range(1, m + 1):
            tmp = row[j]
            if xi == y[j - 1]:
                if diag + 1 > row[j]:
                    row[j] = diag + 1
            if row[j - 1] > row[j]:
                row[j] = row[j - 1]
            diag = tmp
    return row[m]


@njit(cache=True)
def lcs_len(x, y):
    row = np.empty(y.shape[0] + 1, dtype=np.int32)
    return _lcs_row(x, y, row)


@njit(cache=True)
def sample_best(a, b, pos_flat, pos_off, caps, count, seed):
    """Best of ``count`` uniformly sampled maximal deletion sets.

    Returns (value, deleted mask over positions of a). Stream use per
    draw: symbols ascending, then a partial Fisher-Yates of that
    symbol's position list, matching the Python sampler draw for draw.
    """
    state = seed
    n = a.shape[0]
    sigma = caps.shape[0]
    total = 0
    maxpos = 0
    for s in range(sigma):
        total += caps[s]
        c = pos_off[s + 1] - pos_off[s]
        if c > maxpos:
            maxpos = c
    work = np.empty(max(maxpos, 1), dtype=np.int64)
    deleted = np.zeros(n, dtype=np.uint8)
    best_mask = np.zeros(n, dtype=np.uint8)
    kept = np.empty(n, dtype=np.int32)
    row = np.empty(b.shape[0] + 1, dtype=np.int32)
    best = -1
    for _ in range(count):
        for i in range(n):
            deleted[i] = 0
        for s in range(sigma):
            k = caps[s]
            if k == 0:
                continue
            lo = pos_off[s]
            cnt = pos_off[s + 1] - lo
            for t in range(cnt):
                work[t] = pos_flat[lo + t]
            for t in range(k):
                state, r = _below(state, cnt - t)
                u = t + r
                tmp = work[t]
                work[t] = work[u]
                work[u] = tmp
                deleted[work[t]] = 1
        nk = 0
        for i in range(n):
            if deleted[i] == 0:
                kept[nk] = a[i]
                nk += 1
        v = total + _lcs_row(kept[:nk], b, row)
        if v > best:
            best = v
            for i in range(n):
                best_mask[i] = deleted[i]
    return best, best_mask


@njit(cache=True)
def enumerate_best(a, b, pos_flat, pos_off, caps):
    """Exhaustive scan of all maximal deletion sets.

    Odometer order: symbols ascending, per-symbol position combinations
    lexicographic, last symbol fastest. Ties go to the lexicographically
    smallest deletion set. Returns (value, deleted indices, visited).
    """
    n = a.shape[0]
    sigma = caps.shape[0]
    total = 0
    t_count = 0
    for s in range(sigma):
        if caps[s] > 0:
            t_count += 1
            total += caps[s]
    act = np.empty(max(t_count, 1), dtype=np.int64)
    t = 0
    for s in range(sigma):
        if caps[s] > 0:
            act[t] = s
            t += 1
    slot_off = np.zeros(t_count + 1, dtype=np.int64)
    for t in range(t_count):
        slot_off[t + 1] = slot_off[t] + caps[act[t]]
    slots = np.empty(max(total, 1), dtype=np.int64)
    for t in range(t_count):
        for u in range(caps[act[t]]):
            slots[slot_off[t] + u] = u
    mask = np.zeros(n, dtype=np.uint8)
    best_mask = np.zeros(n, dtype=np.uint8)
    kept = np.empty(n, dtype=np.int32)
    row = np.empty(b.shape[0] + 1, dtype=np.int32)
    best_lcs = -1
    visited = 0
    running = True
    while running:
        visited += 1
        for i in range(n):
            mask[i] = 0
        for t in range(t_count):
            s = act[t]
            base = pos_off[s]
            for u in range(slot_off[t], slot_off[t + 1]):
                mask[pos_flat[base + slots[u]]] = 1
        nk = 0
        for i in range(n):
            if mask[i] == 0:
                kept[nk] = a[i]
                nk += 1
        v = _lcs_row(kept[:nk], b, row)
        take = v > best_lcs
        if not take and v == best_lcs:
            for i in range(n):
                if mask[i] != best_mask[i]:
                    take = mask[i] == 1
                    break
        if take:
            best_lcs = v
            for i in range(n):
                best_mask[i] = mask[i]
        advanced = False
        t = t_count - 1
        while t >= 0:
            s = act[t]
            k = caps[s]
            cnt = pos_off[s + 1] - pos_off[s]
            i = k - 1
            while i >= 0 and slots[slot_off[t] + i] == cnt - k + i:
                i -= 1
            if i >= 0:
                slots[slot_off[t] + i] += 1
                for j in range(i + 1, k):
                    slots[slot_off[t] + j] = slots[slot_off[t] + j - 1] + 1
                advanced = True
                break
            for j in range(k):
                slots[slot_off[t] + j] = j
            t -= 1
        if not advanced:
            running = False
    out = np.empty(total, dtype=np.int64)
    c = 0
    for i in range(n):
        if best_mask[i] == 1:
            out[c] = i
            c += 1
    return best_lcs + total, out, visited


@njit(cache=True)
def best_neighbor(cur, b, remaining, k, base_deleted):
    """Best window/subset deletion over the current string.

    Scans windows left to right and subset masks in ascending numeric
    order (bit t of a mask selects window offset t); keeps the first
    strictly better candidate, so ties resolve to the leftmost window
    and the smallest mask. Returns (value, window, mask), value -1 when
    no subset fits the remaining capacity.
    """
    length = cur.shape[0]
    nwin = length - k + 1
    best_v = -1
    best_w = -1
    best_mask = 0
    if nwin <= 0:
        return best_v, best_w, best_mask
    row = np.empty(b.shape[0] + 1, dtype=np.int32)
    kept = np.empty(length, dtype=np.int32)
    used = np.zeros(remaining.shape[0], dtype=np.int64)
    touched = np.empty(k, dtype=np.int64)
    for w in range(nwin):
        for mask in range(1, 1 << k):
            ok = True
            ntouch = 0
            popc = 0
            for t in range(k):
                if mask & (1 << t):
                    popc += 1
                    s = cur[w + t]
                    if used[s] == 0:
                        touched[ntouch] = s
                        ntouch += 1
                    used[s] += 1
                    if used[s] > remaining[s]:
                        ok = False
            if ok:
                nk = 0
                for i in range(length):
                    off = i - w
                    if 0 <= off < k and (mask & (1 << off)):
                        continue
                    kept[nk] = cur[i]
                    nk += 1
                v = base_deleted + popc + _lcs_row(kept[:nk], b, row)
                if v > best_v:
                    best_v = v
                    best_w = w
                    best_mask = mask
            for t in range(ntouch):
                used[touched[t]] = 0
    return best_v, best_w, best_mask
