"""Experiment harness: generate instance batches over an (n, divisor)
matrix, compute per-instance optima, run the registered algorithms, and
aggregate per-cell summaries.

Determinism contract: every stream seed is derived from (master seed,
purpose, cell, instance), records are sorted before writing, and the
timing column stays empty unless explicitly requested, so a rerun with
the same master seed yields a byte-identical records CSV.
"""

from __future__ import annotations

import csv
import logging
import time
from dataclasses import dataclass
from typing import Iterable, TextIO

from .core import Instance
from .exact import SearchSpaceExceeded, solve_enumeration
from .generator import GenConfig, batch_seeds, generate_batch
from .heuristics import (
    LocalSearchConfig,
    SamplerConfig,
    local_search_sk,
    random_sampling_solver,
)
from .lpsolve import solve_ilp
from .rng import derive_seed

log = logging.getLogger(__name__)

ALGO_ENUMERATION = "enumeration"
ALGO_ILP = "ilp"
ALGO_RAND = "rand"

# Purpose tags mixed into derived seeds; fixed forever for stability.
_PURPOSE_GENERATE = 1
_PURPOSE_SAMPLER = 2

RECORD_FIELDS = (
    "n",
    "alphabet_divisor",
    "instance_id",
    "seed",
    "algorithm",
    "value",
    "optimum",
    "wall_time_ms",
)

SUMMARY_FIELDS = (
    "n",
    "alphabet_divisor",
    "algorithm",
    "instances",
    "optimum_hits",
    "normalized_average",
)

# Harness-side budget for the enumeration oracle before switching to the
# integer program; far below the API default because a cell pays it up
# to once per instance.
ORACLE_SPACE_LIMIT = 100_000


@dataclass(frozen=True)
class ExperimentRecord:
    """One (instance, algorithm) outcome. seed is the instance's
    generator seed; optimum is None when no oracle ran; wall_time_ms is
    None unless timing was requested."""

    n: int
    alphabet_divisor: int
    instance_id: int
    seed: int
    algorithm: str
    value: int
    optimum: int | None
    wall_time_ms: float | None

    def sort_key(self):
        return (self.n, self.alphabet_divisor, self.instance_id, self.algorithm)


@dataclass(frozen=True)
class SummaryRow:
    """Per-cell aggregate; hits and average are None when any optimum
    in the cell is unknown."""

    n: int
    alphabet_divisor: int
    algorithm: str
    instances: int
    optimum_hits: int | None
    normalized_average: float | None


@dataclass(frozen=True)
class ExperimentConfig:
    """Matrix plus algorithm settings.

    optimum_mode: "auto" tries enumeration within oracle_space_limit and
    falls back to the integer program; "enumeration" leaves the optimum
    unknown past the limit; "none" skips the oracle entirely.
    """

    ns: tuple[int, ...]
    divisors: tuple[int, ...]
    count: int = 100
    master_seed: int = 0
    sample_count: int = 10000
    sk_windows: tuple[int, ...] = (1, 2, 4)
    run_sampler: bool = True
    optimum_mode: str = "auto"
    oracle_space_limit: int = ORACLE_SPACE_LIMIT
    timing: bool = False
    mutation_prob: float = 0.5
    discard_fraction: float = 0.35

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.optimum_mode not in ("auto", "enumeration", "none"):
            raise ValueError("optimum_mode must be auto, enumeration, or none")
        for k in self.sk_windows:
            if k < 1:
                raise ValueError("window sizes must be >= 1")


def algorithm_names(cfg: ExperimentConfig) -> list[str]:
    names = []
    if cfg.run_sampler:
        names.append(ALGO_RAND)
    names.extend(f"S{k}" for k in cfg.sk_windows)
    return names


def _cell_instances(cfg: ExperimentConfig, n: int, divisor: int):
    gen_cfg = GenConfig(
        n=n,
        alphabet_size=n // divisor,
        seed=derive_seed(cfg.master_seed, _PURPOSE_GENERATE, n, divisor),
        mutation_prob=cfg.mutation_prob,
        discard_fraction=cfg.discard_fraction,
    )
    return generate_batch(gen_cfg, cfg.count), batch_seeds(gen_cfg, cfg.count)


def _optimum(cfg: ExperimentConfig, instance: Instance):
    """Returns (value, algorithm label, elapsed seconds) or None."""
    if cfg.optimum_mode == "none":
        return None
    start = time.perf_counter()
    try:
        scored = solve_enumeration(instance, cfg.oracle_space_limit)
        return scored.value, ALGO_ENUMERATION, time.perf_counter() - start
    except SearchSpaceExceeded:
        if cfg.optimum_mode != "auto":
            return None
    start = time.perf_counter()
    scored = solve_ilp(instance)
    return scored.value, ALGO_ILP, time.perf_counter() - start


def run_experiment(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    """All records for the matrix, sorted by (n, divisor, instance,
    algorithm). Cells where n is not a positive multiple of the divisor
    are skipped with a logged warning."""
    records: list[ExperimentRecord] = []
    for n in cfg.ns:
        for divisor in cfg.divisors:
            if n % divisor != 0 or n // divisor < 1:
                log.warning(
                    "skipping cell n=%d divisor=%d: alphabet size would be invalid",
                    n,
                    divisor,
                )
                continue
            records.extend(_run_cell(cfg, n, divisor))
    records.sort(key=ExperimentRecord.sort_key)
    return records


def _run_cell(cfg: ExperimentConfig, n: int, divisor: int):
    log.info("cell n=%d divisor=%d: generating %d instances", n, divisor, cfg.count)
    instances, seeds = _cell_instances(cfg, n, divisor)
    out: list[ExperimentRecord] = []
    for idx, (instance, seed) in enumerate(zip(instances, seeds)):
        def record(algorithm: str, value: int, optimum, elapsed: float | None):
            out.append(
                ExperimentRecord(
                    n=n,
                    alphabet_divisor=divisor,
                    instance_id=idx,
                    seed=seed,
                    algorithm=algorithm,
                    value=value,
                    optimum=optimum,
                    wall_time_ms=(
                        elapsed * 1000.0
                        if cfg.timing and elapsed is not None
                        else None
                    ),
                )
            )

        oracle = _optimum(cfg, instance)
        optimum = None
        if oracle is not None:
            optimum, oracle_name, oracle_elapsed = oracle
            record(oracle_name, optimum, optimum, oracle_elapsed)

        if cfg.run_sampler:
            sampler = SamplerConfig(
                sample_count=cfg.sample_count,
                rng_seed=derive_seed(
                    cfg.master_seed, _PURPOSE_SAMPLER, n, divisor, idx
                ),
            )
            start = time.perf_counter()
            value = random_sampling_solver(instance, sampler).value
            record(ALGO_RAND, value, optimum, time.perf_counter() - start)

        for k in cfg.sk_windows:
            if n and k > n:
                continue
            start = time.perf_counter()
            value = local_search_sk(instance, LocalSearchConfig(window_k=k)).value
            record(f"S{k}", value, optimum, time.perf_counter() - start)
    log.info("cell n=%d divisor=%d: %d records", n, divisor, len(out))
    return out


def summarize(records: Iterable[ExperimentRecord]) -> list[SummaryRow]:
    """Per-cell aggregates: optimum_hits counts records whose value
    equals the known optimum; normalized_average is the ratio of value
    and optimum sums (the mean divided by the mean optimum). Pure fold:
    record order does not matter."""
    cells: dict[tuple[int, int, str], list[ExperimentRecord]] = {}
    for rec in records:
        cells.setdefault((rec.n, rec.alphabet_divisor, rec.algorithm), []).append(rec)
    rows = []
    for (n, divisor, algorithm) in sorted(cells):
        group = cells[(n, divisor, algorithm)]
        group.sort(key=ExperimentRecord.sort_key)
        if any(rec.optimum is None for rec in group):
            rows.append(SummaryRow(n, divisor, algorithm, len(group), None, None))
            continue
        hits = sum(1 for rec in group if rec.value == rec.optimum)
        total_optimum = sum(rec.optimum for rec in group)
        average = (
            sum(rec.value for rec in group) / total_optimum if total_optimum else 1.0
        )
        rows.append(SummaryRow(n, divisor, algorithm, len(group), hits, average))
    return rows


def write_records_csv(sink: TextIO, records: Iterable[ExperimentRecord]) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(RECORD_FIELDS)
    for rec in sorted(records, key=ExperimentRecord.sort_key):
        writer.writerow(
            [
                rec.n,
                rec.alphabet_divisor,
                rec.instance_id,
                rec.seed,
                rec.algorithm,
                rec.value,
                "" if rec.optimum is None else rec.optimum,
                "" if rec.wall_time_ms is None else f"{rec.wall_time_ms:.3f}",
            ]
        )


def read_records_csv(source: TextIO) -> list[ExperimentRecord]:
    reader = csv.reader(source)
    header = next(reader, None)
    if header != list(RECORD_FIELDS):
        raise ValueError(f"unexpected records header: {header}")
    records = []
    for row in reader:
        if not row:
            continue
        if len(row) != len(RECORD_FIELDS):
            raise ValueError(f"malformed record row: {row}")
        records.append(
            ExperimentRecord(
                n=int(row[0]),
                alphabet_divisor=int(row[1]),
                instance_id=int(row[2]),
                seed=int(row[3]),
                algorithm=row[4],
                value=int(row[5]),
                optimum=int(row[6]) if row[6] else None,
                wall_time_ms=float(row[7]) if row[7] else None,
            )
        )
    return records


def write_summary_csv(sink: TextIO, rows: Iterable[SummaryRow]) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(SUMMARY_FIELDS)
    for row in rows:
        writer.writerow(
            [
                row.n,
                row.alphabet_divisor,
                row.algorithm,
                row.instances,
                "" if row.optimum_hits is None else row.optimum_hits,
                (
                    ""
                    if row.normalized_average is None
                    else f"{row.normalized_average:.6f}"
                ),
            ]
        )
