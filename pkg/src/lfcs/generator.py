"""Procedural instance generator.

Pipeline, with one fixed draw order so a seed pins the instance on any
platform: draw a uniform sequence a; scan it left to right, mutating
each position with the configured probability (kind uniform among
duplicate, delete, substitute-with-a-different-symbol); chop the result
into consecutive segments with i.i.d. uniform lengths in
[1, max_segment_len], truncating the last; discard
ceil(discard_fraction * segment_count) segments chosen uniformly
without replacement. b is the concatenation of the survivors, m the
multiset of discarded symbols.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import TextIO

from .core import Instance, multiset
from .rng import SplitMix64, derive_seed

KIND_DUPLICATE = 0
KIND_DELETE = 1
KIND_SUBSTITUTE = 2


@dataclass(frozen=True)
class GenConfig:
    """Generator settings; max_segment_len defaults to max(1, n // 8)."""

    n: int
    alphabet_size: int
    seed: int = 0
    mutation_prob: float = 0.5
    max_segment_len: int | None = None
    discard_fraction: float = 0.35

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be >= 1")
        if not 0.0 <= self.mutation_prob <= 1.0:
            raise ValueError("mutation_prob must be in [0, 1]")
        if not 0.0 < self.discard_fraction <= 1.0:
            raise ValueError("discard_fraction must be in (0, 1]")
        if self.max_segment_len is None:
            object.__setattr__(self, "max_segment_len", max(1, self.n // 8))
        if self.max_segment_len < 1:
            raise ValueError("max_segment_len must be >= 1")


@dataclass(frozen=True)
class GenTrace:
    """Intermediate products of one generation, for statistical tests:
    the mutated pre-string, how many positions mutated and how per kind,
    the full segment split, and which segments were discarded."""

    pre_string: tuple[int, ...]
    mutated_positions: int
    kind_counts: tuple[int, int, int]
    segments: tuple[tuple[int, ...], ...]
    discarded: tuple[int, ...]


def _mutate(a: tuple[int, ...], cfg: GenConfig, rng: SplitMix64):
    sigma = cfg.alphabet_size
    out: list[int] = []
    mutated = 0
    kinds = [0, 0, 0]
    for s in a:
        if rng.random() >= cfg.mutation_prob:
            out.append(s)
            continue
        mutated += 1
        kind = rng.below(3)
        while sigma == 1 and kind == KIND_SUBSTITUTE:
            kind = rng.below(3)
        kinds[kind] += 1
        if kind == KIND_DUPLICATE:
            out.append(s)
            out.append(s)
        elif kind == KIND_SUBSTITUTE:
            r = rng.below(sigma - 1)
            out.append(r if r < s else r + 1)
        # delete: append nothing
    return tuple(out), mutated, tuple(kinds)


def _split(pre: tuple[int, ...], cap: int, rng: SplitMix64):
    segments: list[tuple[int, ...]] = []
    pos = 0
    while pos < len(pre):
        length = 1 + rng.below(cap)
        segments.append(pre[pos : pos + length])
        pos += length
    return tuple(segments)


def generate_with_trace(cfg: GenConfig) -> tuple[Instance, GenTrace]:
    rng = SplitMix64(cfg.seed)
    a = tuple(rng.below(cfg.alphabet_size) for _ in range(cfg.n))
    pre, mutated, kinds = _mutate(a, cfg, rng)
    segments = _split(pre, cfg.max_segment_len, rng)
    discard_count = math.ceil(cfg.discard_fraction * len(segments))
    order = list(range(len(segments)))
    rng.shuffle_prefix(order, discard_count)
    discarded = tuple(sorted(order[:discard_count]))
    dropped = set(discarded)
    b: list[int] = []
    fill: list[int] = []
    for idx, segment in enumerate(segments):
        (fill if idx in dropped else b).extend(segment)
    instance = Instance(tuple(a), tuple(b), multiset(fill), cfg.alphabet_size)
    trace = GenTrace(pre, mutated, kinds, segments, discarded)
    return instance, trace


def generate_instance(cfg: GenConfig) -> Instance:
    instance, _ = generate_with_trace(cfg)
    return instance


def batch_seeds(cfg: GenConfig, count: int) -> list[int]:
    """Child seeds for a batch, derived from cfg.seed by index."""
    return [derive_seed(cfg.seed, i) for i in range(count)]


def generate_batch(cfg: GenConfig, count: int) -> list[Instance]:
    """Instances from independent derived seeds, one per index."""
    if count < 1:
        raise ValueError("count must be >= 1")
    out = []
    for child in batch_seeds(cfg, count):
        child_cfg = GenConfig(
            n=cfg.n,
            alphabet_size=cfg.alphabet_size,
            seed=child,
            mutation_prob=cfg.mutation_prob,
            max_segment_len=cfg.max_segment_len,
            discard_fraction=cfg.discard_fraction,
        )
        out.append(generate_instance(child_cfg))
    return out


MANIFEST_FIELDS = ("instance_id", "seed", "n", "alphabet_size", "b_len", "m_len")


def write_manifest(
    sink: TextIO, cfg: GenConfig, count: int, instances: list[Instance]
) -> None:
    """Batch manifest CSV: one row per instance with its derived seed."""
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(MANIFEST_FIELDS)
    for idx, (child, inst) in enumerate(zip(batch_seeds(cfg, count), instances)):
        writer.writerow(
            [idx, child, inst.n, inst.alphabet_size, len(inst.b), sum(inst.m.values())]
        )
