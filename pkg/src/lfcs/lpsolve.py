"""Solve LP-format files with scipy's MILP backend (HiGHS).

The LP text file is the hand-off boundary: ``exact`` builds and exports
models, this module reads such files back and solves them, exactly as an
out-of-process solver would. The reader covers the subset of the format
the exporter emits plus common variations (signed unit or explicit
coefficients, <=/>=/= rows, simple bounds, Binaries/Generals sections);
every constraint row must carry a ``name:`` label.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np
import scipy.sparse
from scipy.optimize import Bounds, LinearConstraint, milp

from .core import DeletionSolution, Instance, ScoredSolution, evaluate_solution
from .exact import build_ilp, lp_string

_SECTION_STARTS = (
    ("maximize", "max"),
    ("minimize", "min"),
    ("subject to", "such that", "st", "s.t."),
    ("bounds", "bound"),
    ("binaries", "binary", "bin"),
    ("generals", "general", "gen"),
    ("end",),
)
_SECTION_NAMES = ("max", "min", "subject", "bounds", "binaries", "generals", "end")

_TOKEN = re.compile(
    r"<=|>=|=|\+|-|:|[A-Za-z_][A-Za-z0-9_.]*"
    r"|[0-9]+(?:\.[0-9]*)?(?:[eE][+-]?[0-9]+)?|\.[0-9]+(?:[eE][+-]?[0-9]+)?"
)

_NUMBER = re.compile(r"^(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?$")


class LpFormatError(ValueError):
    pass


@dataclass(frozen=True)
class LpRow:
    name: str
    coeffs: dict[str, float]
    sense: str  # one of <= >= =
    rhs: float


@dataclass(frozen=True)
class LpProblem:
    maximize: bool
    objective: dict[str, float]
    objective_constant: float
    rows: tuple[LpRow, ...]
    bounds: dict[str, tuple[float, float]]
    binaries: tuple[str, ...]
    generals: tuple[str, ...]

    def variables(self) -> list[str]:
        """All variable names, in first-appearance order."""
        seen: dict[str, None] = {}
        for name in self.objective:
            seen.setdefault(name)
        for row in self.rows:
            for name in row.coeffs:
                seen.setdefault(name)
        for name in self.binaries:
            seen.setdefault(name)
        for name in self.generals:
            seen.setdefault(name)
        for name in self.bounds:
            seen.setdefault(name)
        return list(seen)


def _section_of(line: str) -> str | None:
    flat = line.strip().lower().rstrip(":")
    for starts, name in zip(_SECTION_STARTS, _SECTION_NAMES):
        if flat in starts:
            return name
    return None


def _split_sections(text: str) -> dict[str, list[str]]:
    sections: dict[str, list[str]] = {}
    current: str | None = None
    for raw in text.splitlines():
        line = raw.split("\\", 1)[0]
        if not line.strip():
            continue
        name = _section_of(line)
        if name is not None:
            current = name
            sections.setdefault(current, [])
            continue
        if current is None:
            raise LpFormatError(f"content before any section header: {line.strip()!r}")
        sections[current].append(line)
    if "max" not in sections and "min" not in sections:
        raise LpFormatError("no objective section")
    return sections


def _parse_expr(tokens: list[str], start: int, stop_at: tuple[str, ...]):
    """Read a linear expression; returns (coeffs, constant, next index)."""
    coeffs: dict[str, float] = {}
    constant = 0.0
    sign = 1.0
    pending: float | None = None
    i = start
    while i < len(tokens) and tokens[i] not in stop_at:
        tok = tokens[i]
        if tok in ("+", "-"):
            if pending is not None:
                constant += sign * pending
                pending = None
                sign = 1.0
            if tok == "-":
                sign = -sign
        elif _NUMBER.match(tok):
            if pending is not None:
                raise LpFormatError(f"two numbers in a row near {tok!r}")
            pending = float(tok)
        elif tok == ":":
            raise LpFormatError("unexpected ':' inside expression")
        else:
            coef = sign * (1.0 if pending is None else pending)
            coeffs[tok] = coeffs.get(tok, 0.0) + coef
            pending = None
            sign = 1.0
        i += 1
    if pending is not None:
        constant += sign * pending
    return coeffs, constant, i


def _tokenize(lines: list[str]) -> list[str]:
    toks: list[str] = []
    for line in lines:
        toks.extend(_TOKEN.findall(line))
    return toks


def _parse_objective(lines: list[str]):
    tokens = _tokenize(lines)
    start = 0
    if len(tokens) >= 2 and tokens[1] == ":":
        start = 2
    coeffs, constant, i = _parse_expr(tokens, start, stop_at=())
    if i != len(tokens):
        raise LpFormatError("trailing tokens in objective")
    return coeffs, constant


def _parse_rows(lines: list[str]) -> tuple[LpRow, ...]:
    tokens = _tokenize(lines)
    rows: list[LpRow] = []
    i = 0
    while i < len(tokens):
        if i + 1 >= len(tokens) or tokens[i + 1] != ":":
            raise LpFormatError(f"constraint without a name near {tokens[i]!r}")
        name = tokens[i]
        coeffs, constant, i = _parse_expr(tokens, i + 2, stop_at=("<=", ">=", "="))
        if i >= len(tokens):
            raise LpFormatError(f"constraint {name} has no relational operator")
        sense = tokens[i]
        i += 1
        sign = 1.0
        if i < len(tokens) and tokens[i] in ("+", "-"):
            if tokens[i] == "-":
                sign = -1.0
            i += 1
        if i >= len(tokens) or not _NUMBER.match(tokens[i]):
            raise LpFormatError(f"constraint {name} needs a numeric right side")
        rhs = sign * float(tokens[i])
        i += 1
        rows.append(LpRow(name, coeffs, sense, rhs - constant))
    return tuple(rows)


def _parse_bounds(lines: list[str]) -> dict[str, tuple[float, float]]:
    bounds: dict[str, tuple[float, float]] = {}
    for line in lines:
        toks = _TOKEN.findall(line)
        if not toks:
            continue
        if len(toks) == 2 and toks[1].lower() == "free":
            bounds[toks[0]] = (-np.inf, np.inf)
        elif len(toks) == 3 and toks[1] == "=":
            value = float(toks[2])
            bounds[toks[0]] = (value, value)
        elif len(toks) == 3 and toks[1] in ("<=", ">="):
            name, sense, num = toks
            lo, hi = bounds.get(name, (0.0, np.inf))
            if sense == "<=":
                bounds[name] = (lo, float(num))
            else:
                bounds[name] = (float(num), hi)
        elif len(toks) == 5 and toks[1] == "<=" and toks[3] == "<=":
            bounds[toks[2]] = (float(toks[0]), float(toks[4]))
        else:
            raise LpFormatError(f"unsupported bound line: {line.strip()!r}")
    return bounds


def parse_lp(text: str) -> LpProblem:
    sections = _split_sections(text)
    maximize = "max" in sections
    if maximize and "min" in sections:
        raise LpFormatError("both Maximize and Minimize present")
    objective, constant = _parse_objective(sections.get("max", sections.get("min", [])))
    rows = _parse_rows(sections.get("subject", []))
    bounds = _parse_bounds(sections.get("bounds", []))
    binaries = tuple(_tokenize(sections.get("binaries", [])))
    generals = tuple(_tokenize(sections.get("generals", [])))
    return LpProblem(maximize, objective, constant, rows, bounds, binaries, generals)


@dataclass(frozen=True)
class LpResult:
    objective: float
    assignment: dict[str, float]


def solve_problem(problem: LpProblem) -> LpResult:
    """Optimize with scipy.optimize.milp; raises RuntimeError if the
    solver reports anything but success."""
    names = problem.variables()
    if not names:
        return LpResult(problem.objective_constant, {})
    index = {name: k for k, name in enumerate(names)}
    nvar = len(names)

    sign = -1.0 if problem.maximize else 1.0
    c = np.zeros(nvar)
    for name, coef in problem.objective.items():
        c[index[name]] = sign * coef

    integrality = np.zeros(nvar)
    lo = np.zeros(nvar)
    hi = np.full(nvar, np.inf)
    for name in problem.binaries:
        k = index[name]
        integrality[k] = 1
        lo[k], hi[k] = 0.0, 1.0
    for name in problem.generals:
        integrality[index[name]] = 1
    for name, (low, high) in problem.bounds.items():
        k = index[name]
        lo[k], hi[k] = low, high

    constraints = []
    if problem.rows:
        data, rix, cix = [], [], []
        lb = np.empty(len(problem.rows))
        ub = np.empty(len(problem.rows))
        for r, row in enumerate(problem.rows):
            for name, coef in row.coeffs.items():
                data.append(coef)
                rix.append(r)
                cix.append(index[name])
            if row.sense == "<=":
                lb[r], ub[r] = -np.inf, row.rhs
            elif row.sense == ">=":
                lb[r], ub[r] = row.rhs, np.inf
            else:
                lb[r], ub[r] = row.rhs, row.rhs
        matrix = scipy.sparse.csr_array(
            (data, (rix, cix)), shape=(len(problem.rows), nvar)
        )
        constraints.append(LinearConstraint(matrix, lb, ub))

    result = milp(
        c,
        constraints=constraints,
        integrality=integrality,
        bounds=Bounds(lo, hi),
    )
    if result.status != 0:
        raise RuntimeError(f"MILP solve failed: {result.message}")
    value = sign * result.fun + problem.objective_constant
    assignment = {name: float(result.x[index[name]]) for name in names}
    return LpResult(value, assignment)


def solve_lp_text(text: str) -> LpResult:
    return solve_problem(parse_lp(text))


def solve_lp_file(path) -> LpResult:
    with open(path, "r", encoding="utf-8") as handle:
        return solve_lp_text(handle.read())


def decode_assignment(
    instance: Instance, assignment: dict[str, float]
) -> DeletionSolution:
    """Deletion set from the y variables of a solved model."""
    deleted = tuple(
        i
        for i in range(len(instance.a))
        if round(assignment.get(f"y_{i}", 0.0)) == 1
    )
    return DeletionSolution(deleted)


def solve_ilp(instance: Instance) -> ScoredSolution:
    """Exact optimum through the full file boundary: build the model,
    serialize to LP text, parse it back, solve with HiGHS, decode."""
    model = build_ilp(instance)
    result = solve_lp_text(lp_string(model))
    solution = decode_assignment(instance, result.assignment)
    scored = evaluate_solution(instance, solution, with_alignment=True)
    target = int(round(result.objective))
    if scored.value != target:
        raise RuntimeError(
            f"decoded value {scored.value} disagrees with objective {target}"
        )
    return scored
