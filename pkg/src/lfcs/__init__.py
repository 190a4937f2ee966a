"""Longest filled common subsequence toolkit.

Fill a scaffold sequence b with symbols from a multiset m so that the
longest common subsequence with a reference sequence a is as long as
possible. Exact solving by enumeration or an exported integer program,
uniform-sampling and window-search heuristics, a procedural instance
generator, and a benchmark harness.
"""

from .analysis import Bounds, bounds, match_capacity, search_space_size
from .core import (
    DeletionSolution,
    Instance,
    InstanceFormatError,
    InvalidInstanceError,
    InvalidSolutionError,
    ScoredSolution,
    evaluate_solution,
    instance_from_letters,
    parse_instance,
    format_instance,
    read_instance,
    write_instance,
)
from .exact import (
    DEFAULT_SPACE_LIMIT,
    IlpModel,
    SearchSpaceExceeded,
    build_ilp,
    export_lp,
    lp_string,
    solve_brute_force_reference,
    solve_enumeration,
)
from .generator import GenConfig, generate_batch, generate_instance
from .heuristics import (
    LocalSearchConfig,
    SamplerConfig,
    local_search_sk,
    random_sampling_solver,
    sample_random_solution,
)
from .lcs import lcs_length, lcs_table, lcs_traceback
from .lpsolve import solve_ilp, solve_lp_file, solve_lp_text
from .rng import SplitMix64, derive_seed

__version__ = "0.1.0"

__all__ = [
    "Bounds",
    "DEFAULT_SPACE_LIMIT",
    "DeletionSolution",
    "GenConfig",
    "IlpModel",
    "Instance",
    "InstanceFormatError",
    "InvalidInstanceError",
    "InvalidSolutionError",
    "LocalSearchConfig",
    "SamplerConfig",
    "ScoredSolution",
    "SearchSpaceExceeded",
    "SplitMix64",
    "bounds",
    "build_ilp",
    "derive_seed",
    "evaluate_solution",
    "export_lp",
    "format_instance",
    "generate_batch",
    "generate_instance",
    "instance_from_letters",
    "lcs_length",
    "lcs_table",
    "lcs_traceback",
    "local_search_sk",
    "lp_string",
    "match_capacity",
    "parse_instance",
    "random_sampling_solver",
    "read_instance",
    "sample_random_solution",
    "search_space_size",
    "solve_brute_force_reference",
    "solve_enumeration",
    "solve_ilp",
    "solve_lp_file",
    "solve_lp_text",
    "write_instance",
]
