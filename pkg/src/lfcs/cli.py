"""Command-line interface.

Subcommands: generate, solve, bounds, space, export-ilp, experiment,
summarize. The default seed comes from --seed, then the LFCS_SEED
environment variable, then 0.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import bench, lpsolve
from .analysis import bounds as compute_bounds
from .analysis import search_space_size
from .core import (
    InstanceFormatError,
    InvalidInstanceError,
    InvalidSolutionError,
    format_instance,
    read_instance,
    write_instance,
)
from .exact import (
    DEFAULT_SPACE_LIMIT,
    SearchSpaceExceeded,
    build_ilp,
    export_lp,
    solve_enumeration,
)
from .generator import GenConfig, generate_batch, generate_instance, write_manifest
from .heuristics import (
    LocalSearchConfig,
    SamplerConfig,
    local_search_sk,
    random_sampling_solver,
)

log = logging.getLogger(__name__)


def _default_seed() -> int:
    raw = os.environ.get("LFCS_SEED", "")
    return int(raw) if raw else 0


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lfcs",
        description=(
            "Solvers, heuristics, and benchmarks for filling a scaffold "
            "sequence to maximize a common subsequence."
        ),
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log progress to stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate one instance or a batch")
    gen.add_argument("--n", type=int, required=True, help="length of sequence a")
    gen.add_argument("--alphabet", type=int, required=True, help="alphabet size")
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--mutation-prob", type=float, default=0.5)
    gen.add_argument("--max-segment-len", type=int, default=None)
    gen.add_argument("--discard-fraction", type=float, default=0.35)
    gen.add_argument("--out", default=None, help="output file (single instance)")
    gen.add_argument(
        "--out-dir", default=None, help="output directory (batch; adds manifest.csv)"
    )

    solve = sub.add_parser("solve", help="solve one instance file")
    solve.add_argument("--instance", required=True)
    solve.add_argument(
        "--alg",
        default="enumeration",
        help="enumeration, ilp, rand, or S<k> (e.g. S2)",
    )
    solve.add_argument("--seed", type=int, default=None, help="sampler seed")
    solve.add_argument("--samples", type=int, default=10000)
    solve.add_argument("--space-limit", type=int, default=DEFAULT_SPACE_LIMIT)

    for name, help_text in (
        ("bounds", "print 'lower upper' for an instance"),
        ("space", "print the maximal-solution count S"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--instance", required=True)

    export = sub.add_parser("export-ilp", help="write the model as an LP file")
    export.add_argument("--instance", required=True)
    export.add_argument(
        "--out",
        default=None,
        help="output path (default: instance stem + .lp; '-' for stdout)",
    )

    exp = sub.add_parser("experiment", help="run the benchmark matrix")
    exp.add_argument("--n", type=_int_list, required=True, help="e.g. 16,32,48")
    exp.add_argument("--divisors", type=_int_list, required=True, help="e.g. 8,4,2")
    exp.add_argument("--count", type=int, default=100)
    exp.add_argument("--seed", type=int, default=None)
    exp.add_argument("--samples", type=int, default=10000)
    exp.add_argument("--windows", type=_int_list, default=(1, 2, 4))
    exp.add_argument("--no-rand", action="store_true", help="skip the sampler")
    exp.add_argument(
        "--optimum", choices=("auto", "enumeration", "none"), default="auto"
    )
    exp.add_argument("--space-limit", type=int, default=bench.ORACLE_SPACE_LIMIT)
    exp.add_argument(
        "--timing",
        action="store_true",
        help="fill wall_time_ms (breaks byte-for-byte rerun identity)",
    )
    exp.add_argument("--out", required=True, help="records CSV path")
    exp.add_argument(
        "--summary",
        default=None,
        help=(
            "also write the per-cell summary CSV; normalized_average is "
            "sum(value)/sum(optimum), the mean value over the mean optimum"
        ),
    )

    summ = sub.add_parser("summarize", help="aggregate a records CSV")
    summ.add_argument("--records", required=True)
    summ.add_argument("--out", default=None, help="summary CSV path (default stdout)")

    return parser


def _cmd_generate(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = GenConfig(
        n=args.n,
        alphabet_size=args.alphabet,
        seed=seed,
        mutation_prob=args.mutation_prob,
        max_segment_len=args.max_segment_len,
        discard_fraction=args.discard_fraction,
    )
    if args.out_dir is not None:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        instances = generate_batch(cfg, args.count)
        width = max(4, len(str(args.count - 1)))
        for idx, instance in enumerate(instances):
            write_instance(instance, out_dir / f"instance_{idx:0{width}d}.txt")
        with open(out_dir / "manifest.csv", "w", encoding="utf-8", newline="") as f:
            write_manifest(f, cfg, args.count, instances)
        log.info("wrote %d instances to %s", len(instances), out_dir)
        return 0
    if args.count != 1:
        print("error: batch generation needs --out-dir", file=sys.stderr)
        return 1
    instance = generate_instance(cfg)
    if args.out is None:
        sys.stdout.write(format_instance(instance))
    else:
        write_instance(instance, args.out)
    return 0


def _cmd_solve(args) -> int:
    instance = read_instance(args.instance)
    alg = args.alg
    if alg in ("enumeration", "enum"):
        scored = solve_enumeration(instance, args.space_limit)
    elif alg == "ilp":
        scored = lpsolve.solve_ilp(instance)
    elif alg == "rand":
        seed = args.seed if args.seed is not None else _default_seed()
        scored = random_sampling_solver(
            instance, SamplerConfig(sample_count=args.samples, rng_seed=seed)
        )
    elif alg.startswith("S") and alg[1:].isdigit():
        scored = local_search_sk(instance, LocalSearchConfig(window_k=int(alg[1:])))
    else:
        print(f"error: unknown algorithm {alg!r}", file=sys.stderr)
        return 1
    print(scored.value)
    print(" ".join(str(i) for i in scored.solution.deleted))
    return 0


def _cmd_bounds(args) -> int:
    instance = read_instance(args.instance)
    b = compute_bounds(instance)
    print(f"{b.lower} {b.upper}")
    return 0


def _cmd_space(args) -> int:
    print(search_space_size(read_instance(args.instance)))
    return 0


def _cmd_export_ilp(args) -> int:
    instance = read_instance(args.instance)
    model = build_ilp(instance)
    if args.out == "-":
        export_lp(model, sys.stdout)
        return 0
    out = Path(args.out) if args.out else Path(args.instance).with_suffix(".lp")
    with open(out, "w", encoding="utf-8", newline="") as sink:
        export_lp(model, sink)
    log.info("wrote %s", out)
    return 0


def _cmd_experiment(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = bench.ExperimentConfig(
        ns=args.n,
        divisors=args.divisors,
        count=args.count,
        master_seed=seed,
        sample_count=args.samples,
        sk_windows=args.windows,
        run_sampler=not args.no_rand,
        optimum_mode=args.optimum,
        oracle_space_limit=args.space_limit,
        timing=args.timing,
    )
    records = bench.run_experiment(cfg)
    with open(args.out, "w", encoding="utf-8", newline="") as sink:
        bench.write_records_csv(sink, records)
    if args.summary is not None:
        with open(args.summary, "w", encoding="utf-8", newline="") as sink:
            bench.write_summary_csv(sink, bench.summarize(records))
    return 0


def _cmd_summarize(args) -> int:
    with open(args.records, "r", encoding="utf-8", newline="") as source:
        records = bench.read_records_csv(source)
    rows = bench.summarize(records)
    if args.out is None:
        bench.write_summary_csv(sys.stdout, rows)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as sink:
            bench.write_summary_csv(sink, rows)
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "solve": _cmd_solve,
    "bounds": _cmd_bounds,
    "space": _cmd_space,
    "export-ilp": _cmd_export_ilp,
    "experiment": _cmd_experiment,
    "summarize": _cmd_summarize,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return _COMMANDS[args.command](args)
    except (
        InstanceFormatError,
        InvalidInstanceError,
        InvalidSolutionError,
        SearchSpaceExceeded,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
