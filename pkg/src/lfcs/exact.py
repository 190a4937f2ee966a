"""Exact optimum by enumeration of maximally matched deletion sets.

Restricting the search to maximal solutions is sound: any optimum can be
promoted to a maximal one without losing value (see
``analysis.normalize_to_maximal``), so the first-found maximum over the
product of per-symbol position combinations is the true optimum. The
brute-force reference below deliberately does NOT use that restriction
and enumerates every capacity-respecting deletion set, so the two paths
validate each other.

Also here: the integer-program formulation of the same problem and its
export in the LP text format, which is the hand-off point to external
MILP solvers (``lpsolve`` drives one through that format).
"""

from __future__ import annotations

import io
import itertools
from dataclasses import dataclass
from typing import Iterator, TextIO

from . import _kernels
from .analysis import match_capacity, search_space_size
from .core import DeletionSolution, Instance, ScoredSolution, evaluate_solution
from .lcs import lcs_length

DEFAULT_SPACE_LIMIT = 10_000_000


class SearchSpaceExceeded(Exception):
    """Enumeration refused: the candidate count is over the limit.

    Carries the exact search-space size so callers can fall back to a
    heuristic or the ILP route.
    """

    def __init__(self, space: int, limit: int):
        super().__init__(f"search space {space} exceeds limit {limit}")
        self.space = space
        self.limit = limit


@dataclass(frozen=True)
class EnumerationStats:
    """Bookkeeping from one enumeration run."""

    visited: int
    space: int


def iter_maximal_deletion_sets(instance: Instance) -> Iterator[tuple[int, ...]]:
    """Yield every maximally matched deletion set, sorted ascending.

    Order: symbols ascending by id, each symbol's position combinations
    in lexicographic order, the last symbol's combination advancing
    fastest.
    """
    cap = match_capacity(instance)
    positions: dict[int, list[int]] = {}
    for i, s in enumerate(instance.a):
        positions.setdefault(s, []).append(i)
    active = [s for s in sorted(positions) if cap.matchable[s] > 0]
    pools = [itertools.combinations(positions[s], cap.matchable[s]) for s in active]
    for combo in itertools.product(*pools):
        yield tuple(sorted(d for part in combo for d in part))


def solve_enumeration_with_stats(
    instance: Instance, space_limit: int = DEFAULT_SPACE_LIMIT
) -> tuple[ScoredSolution, EnumerationStats]:
    """Optimum over all maximal deletion sets, with visit counts.

    Deterministic: among equal-value candidates the lexicographically
    smallest deletion set wins, independent of evaluation order.
    """
    space = search_space_size(instance)
    if space > space_limit:
        raise SearchSpaceExceeded(space, space_limit)

    if _kernels.HAVE_NUMBA:
        arrays = _kernels.instance_arrays(instance)
        value, deleted, visited = _kernels.enumerate_best(*arrays)
        best = DeletionSolution(tuple(int(d) for d in deleted))
    else:
        best = None
        best_value = -1
        visited = 0
        for deleted in iter_maximal_deletion_sets(instance):
            visited += 1
            sol = DeletionSolution(deleted)
            value = evaluate_solution(instance, sol, with_alignment=False).value
            if value > best_value or (value == best_value and deleted < best.deleted):
                best, best_value = sol, value
        assert best is not None  # the empty product yields one candidate

    scored = evaluate_solution(instance, best, with_alignment=True)
    return scored, EnumerationStats(visited=int(visited), space=space)


def solve_enumeration(
    instance: Instance, space_limit: int = DEFAULT_SPACE_LIMIT
) -> ScoredSolution:
    scored, _ = solve_enumeration_with_stats(instance, space_limit)
    return scored


@dataclass(frozen=True)
class IlpConstraint:
    """One row of the model: sum of unit-coefficient terms <= rhs.

    kind is one of non_crossing, row, column, capacity.
    """

    name: str
    kind: str
    x_terms: tuple[tuple[int, int], ...]
    y_terms: tuple[int, ...]
    rhs: int


@dataclass(frozen=True)
class IlpModel:
    """Binary program whose optimum is the filled-subsequence value.

    Variables: x_(i,j) = 1 when position i of a is aligned with position
    j of b (declared only where the symbols agree), y_i = 1 when
    position i of a is deleted and credited to the fill budget. The
    objective, implicit here, maximizes the sum of all x and y
    variables. Positions whose symbol has no budget keep a declared y
    variable pinned to zero (y_fixed_zero), so every feasible assignment
    decodes to a capacity-respecting deletion set.
    """

    x_vars: tuple[tuple[int, int], ...]
    y_vars: tuple[int, ...]
    y_fixed_zero: tuple[int, ...]
    constraints: tuple[IlpConstraint, ...]


def build_ilp(instance: Instance) -> IlpModel:
    """Construct the binary program for one instance.

    Constraint families, in emission order: pairwise non-crossing over
    alignment variables, one row constraint per position of a (delete or
    align, not both), one column constraint per position of b with at
    least one candidate, one capacity constraint per budgeted symbol
    that occurs in a.
    """
    a, b, m = instance.a, instance.b, instance.m
    n, width = len(a), len(b)
    x_vars = tuple((i, j) for i in range(n) for j in range(width) if a[i] == b[j])
    y_vars = tuple(range(n))
    y_fixed_zero = tuple(i for i in range(n) if m.get(a[i], 0) == 0)

    by_row: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n)}
    by_col: dict[int, list[tuple[int, int]]] = {j: [] for j in range(width)}
    for pair in x_vars:
        by_row[pair[0]].append(pair)
        by_col[pair[1]].append(pair)

    constraints: list[IlpConstraint] = []
    seq = itertools.count(1)

    def emit(kind: str, x_terms, y_terms, rhs: int) -> None:
        constraints.append(
            IlpConstraint(f"c{next(seq)}", kind, tuple(x_terms), tuple(y_terms), rhs)
        )

    for u, (i, j) in enumerate(x_vars):
        for v in range(u + 1, len(x_vars)):
            k, l = x_vars[v]
            if i < k and j > l:
                emit("non_crossing", (x_vars[u], x_vars[v]), (), 1)
    for i in range(n):
        emit("row", by_row[i], (i,), 1)
    for j in range(width):
        if by_col[j]:
            emit("column", by_col[j], (), 1)
    for s in sorted(m):
        holders = tuple(i for i in range(n) if a[i] == s)
        if holders:
            emit("capacity", (), holders, m[s])

    return IlpModel(x_vars, y_vars, y_fixed_zero, tuple(constraints))


def _x_name(pair: tuple[int, int]) -> str:
    return f"x_{pair[0]}_{pair[1]}"


def _wrap(sink: TextIO, pieces: list[str], width: int = 72) -> None:
    # One leading space per line, continuation lines included.
    line = ""
    for piece in pieces:
        if line and len(line) + 1 + len(piece) > width:
            sink.write(line + "\n")
            line = " " + piece
        else:
            line = piece if not line else line + " " + piece
    if line:
        sink.write(line + "\n")


def _expr_pieces(label: str, terms: list[str]) -> list[str]:
    pieces = [label]
    for idx, term in enumerate(terms):
        pieces.append(term if idx == 0 else f"+ {term}")
    return pieces


def export_lp(model: IlpModel, sink: TextIO) -> None:
    """Write the model in the LP text format, byte-deterministically.

    Sections: Maximize, Subject To, Bounds (only the variables pinned to
    zero), Binaries, End. Variable names are x_<i>_<j> and y_<i> with
    0-based indices; constraints keep their c<seq> names.
    """
    sink.write("Maximize\n")
    objective = [f"y_{i}" for i in model.y_vars] + [_x_name(p) for p in model.x_vars]
    _wrap(sink, _expr_pieces(" obj:", objective))
    sink.write("Subject To\n")
    for con in model.constraints:
        terms = [_x_name(p) for p in con.x_terms] + [f"y_{i}" for i in con.y_terms]
        _wrap(sink, _expr_pieces(f" {con.name}:", terms) + ["<=", str(con.rhs)])
    if model.y_fixed_zero:
        sink.write("Bounds\n")
        for i in model.y_fixed_zero:
            sink.write(f" y_{i} = 0\n")
    if objective:
        sink.write("Binaries\n")
        for pair in model.x_vars:
            sink.write(f" {_x_name(pair)}\n")
        for i in model.y_vars:
            sink.write(f" y_{i}\n")
    sink.write("End\n")


def lp_string(model: IlpModel) -> str:
    sink = io.StringIO()
    export_lp(model, sink)
    return sink.getvalue()


def solve_brute_force_reference(instance: Instance) -> int:
    """True optimum by enumerating ALL capacity-respecting deletion sets,
    not only maximal ones. Exponential; intended for |a| up to ~15."""
    cap = match_capacity(instance)
    positions: dict[int, list[int]] = {}
    for i, s in enumerate(instance.a):
        positions.setdefault(s, []).append(i)
    pools = []
    for s in sorted(positions):
        limit = cap.matchable[s]
        pos = positions[s]
        choices = [
            combo
            for k in range(limit + 1)
            for combo in itertools.combinations(pos, k)
        ]
        pools.append(choices)
    best = -1
    b = instance.b
    a = instance.a
    n = len(a)
    for combo in itertools.product(*pools):
        deleted = {d for part in combo for d in part}
        remainder = tuple(a[i] for i in range(n) if i not in deleted)
        value = len(deleted) + lcs_length(remainder, b)
        if value > best:
            best = value
    return best
