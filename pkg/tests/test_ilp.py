"""Binary-program construction, LP text export, and the file-boundary solver."""

import itertools

import pytest

from lfcs.analysis import search_space_size
from lfcs.core import Instance, instance_from_letters
from lfcs.exact import build_ilp, lp_string, solve_enumeration
from lfcs.lcs import lcs_length
from lfcs.lpsolve import (
    LpFormatError,
    decode_assignment,
    parse_lp,
    solve_ilp,
    solve_lp_text,
    solve_problem,
)

from conftest import small_instances


def _kinds(model):
    counts = {"non_crossing": 0, "row": 0, "column": 0, "capacity": 0}
    for con in model.constraints:
        counts[con.kind] += 1
    return counts


def test_build_two_symbol_example_counts():
    model = build_ilp(instance_from_letters("ab", "b", "a"))
    assert model.x_vars == ((1, 0),)
    assert model.y_vars == (0, 1)
    assert _kinds(model) == {"non_crossing": 0, "row": 2, "column": 1, "capacity": 1}


def test_build_fixes_budgetless_positions():
    # b at index 1 has no budget, so its y variable is pinned to zero.
    model = build_ilp(instance_from_letters("ab", "b", "a"))
    assert model.y_fixed_zero == (1,)


def test_build_empty_b_has_no_alignment_vars():
    inst = instance_from_letters("aabc", "", "aab")
    model = build_ilp(inst)
    assert model.x_vars == ()
    # Only deletion credit remains: per symbol min(occurrences, budget).
    result = solve_lp_text(lp_string(model))
    assert round(result.objective) == 3


def test_build_empty_multiset_has_no_capacity_rows():
    inst = instance_from_letters("abcabba", "cbabac", "")
    model = build_ilp(inst)
    assert _kinds(model)["capacity"] == 0
    assert model.y_fixed_zero == model.y_vars
    result = solve_lp_text(lp_string(model))
    assert round(result.objective) == lcs_length(inst.a, inst.b)


def test_build_non_crossing_rows_are_real_crossings():
    inst = instance_from_letters("ab", "ba", "")
    model = build_ilp(inst)
    crossings = [c for c in model.constraints if c.kind == "non_crossing"]
    # x_0_1 and x_1_0 cross; that is the only pair.
    assert len(crossings) == 1
    assert crossings[0].x_terms == ((0, 1), (1, 0))
    assert crossings[0].rhs == 1


def test_constraint_names_are_sequential():
    model = build_ilp(instance_from_letters("abab", "ba", "ab"))
    assert [c.name for c in model.constraints] == [
        f"c{k}" for k in range(1, len(model.constraints) + 1)
    ]


def test_export_two_symbol_example_text():
    text = lp_string(build_ilp(instance_from_letters("ab", "b", "a")))
    lines = text.splitlines()
    assert lines[0] == "Maximize"
    assert " obj: y_0 + y_1 + x_1_0" in lines
    assert "Subject To" in lines
    assert " y_1 = 0" in lines
    assert " x_1_0" in lines[lines.index("Binaries") :]
    assert lines[-1] == "End"


def test_export_is_byte_deterministic():
    first = lp_string(build_ilp(instance_from_letters("abcbcdda", "cabbdda", "abd")))
    second = lp_string(build_ilp(instance_from_letters("abcbcdda", "cabbdda", "abd")))
    assert first == second


def test_export_wraps_to_72_columns():
    inst = small_instances(1, 0x11F0, max_n=12)[0]
    wide = Instance.make(inst.a * 3, inst.b * 3, inst.m)
    text = lp_string(build_ilp(wide))
    assert all(len(line) <= 72 for line in text.splitlines())
    assert any(line.startswith(" ") and "+" in line for line in text.splitlines())


def test_export_empty_model_parses():
    model = build_ilp(Instance.make((), (), ()))
    text = lp_string(model)
    problem = parse_lp(text)
    assert problem.maximize
    assert problem.objective == {}
    assert problem.rows == ()
    assert solve_problem(problem).objective == 0.0


def _feasible(model, xs: set, ys: set) -> bool:
    if any(i in ys for i in model.y_fixed_zero):
        return False
    for con in model.constraints:
        total = sum(p in xs for p in con.x_terms) + sum(i in ys for i in con.y_terms)
        if total > con.rhs:
            return False
    return True


def _is_chain(pairs) -> bool:
    return all(
        i < k and j < l for (i, j), (k, l) in zip(pairs, pairs[1:])
    )


def _valid_pairs(inst: Instance):
    """All (deletion set, alignment) pairs: capacity-respecting deletions
    and strictly increasing equal-symbol alignments avoiding them."""
    candidates = [
        (i, j)
        for i in range(len(inst.a))
        for j in range(len(inst.b))
        if inst.a[i] == inst.b[j]
    ]
    for mask in range(1 << len(inst.a)):
        ys = {i for i in range(len(inst.a)) if mask >> i & 1}
        counts = {}
        for i in ys:
            counts[inst.a[i]] = counts.get(inst.a[i], 0) + 1
        if any(c > inst.m.get(s, 0) for s, c in counts.items()):
            continue
        free = [p for p in candidates if p[0] not in ys]
        for r in range(len(free) + 1):
            for chain in itertools.combinations(free, r):
                if _is_chain(chain):
                    yield ys, set(chain)


@pytest.mark.parametrize(
    "a,b,m",
    [("ab", "b", "a"), ("aba", "ab", "a"), ("abab", "ba", "ab"), ("ab", "ba", "b")],
)
def test_assignments_and_solutions_correspond(a, b, m):
    inst = instance_from_letters(a, b, m)
    model = build_ilp(inst)
    feasible = set()
    for bits in itertools.product(
        (0, 1), repeat=len(model.x_vars) + len(model.y_vars)
    ):
        xs = {p for p, v in zip(model.x_vars, bits) if v}
        ys = {i for i, v in zip(model.y_vars, bits[len(model.x_vars) :]) if v}
        if not _feasible(model, xs, ys):
            continue
        feasible.add((frozenset(xs), frozenset(ys)))
        # Feasible assignment decodes to a valid pair of equal objective.
        pairs = sorted(xs)
        assert _is_chain(pairs)
        assert all(inst.a[i] == inst.b[j] for i, j in pairs)
        assert all(i not in ys for i, _ in pairs)
        counts = {}
        for i in ys:
            counts[inst.a[i]] = counts.get(inst.a[i], 0) + 1
        assert all(c <= inst.m.get(s, 0) for s, c in counts.items())
        assert len(xs) + len(ys) == sum(bits)
    # Every valid pair encodes to a feasible assignment.
    for ys, xs in _valid_pairs(inst):
        assert (frozenset(xs), frozenset(ys)) in feasible


def test_solver_matches_enumeration_on_running_example(worked_instance):
    scored = solve_ilp(worked_instance)
    assert scored.value == 7
    assert scored.alignment is not None


def test_solver_matches_enumeration_fuzz():
    for inst in small_instances(30, 0xA11CE):
        if search_space_size(inst) > 100_000:
            continue
        assert solve_ilp(inst).value == solve_enumeration(inst).value


def test_decode_reads_only_set_y_vars():
    inst = instance_from_letters("ab", "b", "a")
    sol = decode_assignment(inst, {"y_0": 1.0, "y_1": 0.0, "x_1_0": 1.0})
    assert sol.deleted == (0,)
    # Near-integral values round; missing entries count as zero.
    assert decode_assignment(inst, {"y_0": 0.9999}).deleted == (0,)
    assert decode_assignment(inst, {}).deleted == ()


MINI = """\
Maximize
 obj: x + 2 y \\ inline note
Subject To
\\ a full-line comment
 c1: x + y <= 1
Binaries
 x
 y
End
"""


def test_parse_and_solve_small_maximize():
    result = solve_lp_text(MINI)
    assert result.objective == pytest.approx(2.0)
    assert result.assignment["y"] == pytest.approx(1.0)
    assert result.assignment["x"] == pytest.approx(0.0)


def test_parse_minimize_with_constant():
    text = "Minimize\n obj: x + 3\nSubject To\n c1: x >= 2\nEnd\n"
    result = solve_lp_text(text)
    assert result.objective == pytest.approx(5.0)


def test_parse_equality_and_signed_rhs():
    text = (
        "Maximize\n obj: x + y\n"
        "Subject To\n c1: x - y = 0\n c2: x + y <= 4\n"
        "End\n"
    )
    result = solve_lp_text(text)
    assert result.objective == pytest.approx(4.0)
    assert result.assignment["x"] == pytest.approx(2.0)
    text = "Minimize\n obj: x\nSubject To\n c1: x >= -3\nBounds\n x free\nEnd\n"
    assert solve_lp_text(text).objective == pytest.approx(-3.0)


def test_parse_bounds_forms():
    text = (
        "Minimize\n obj: u + v + w\n"
        "Subject To\n c1: u + v + w >= 0\n"
        "Bounds\n u = 2\n 1 <= v <= 5\n w >= 3\n w <= 7\n"
        "End\n"
    )
    problem = parse_lp(text)
    assert problem.bounds == {"u": (2.0, 2.0), "v": (1.0, 5.0), "w": (3.0, 7.0)}
    assert solve_problem(problem).objective == pytest.approx(6.0)


def test_parse_merges_repeated_terms():
    problem = parse_lp("Maximize\n obj: x + x - 2 x\nEnd\n")
    assert problem.objective["x"] == pytest.approx(0.0)


def test_parse_rejects_missing_objective():
    with pytest.raises(LpFormatError, match="no objective"):
        parse_lp("Subject To\n c1: x <= 1\nEnd\n")


def test_parse_rejects_unnamed_constraint():
    with pytest.raises(LpFormatError, match="without a name"):
        parse_lp("Maximize\n obj: x\nSubject To\n x + y <= 1\nEnd\n")


def test_parse_rejects_variable_on_rhs():
    with pytest.raises(LpFormatError, match="numeric right side"):
        parse_lp("Maximize\n obj: x\nSubject To\n c1: x <= y\nEnd\n")


def test_parse_rejects_content_before_header():
    with pytest.raises(LpFormatError, match="before any section"):
        parse_lp("x + y <= 1\nMaximize\n obj: x\nEnd\n")


def test_parse_rejects_double_numbers():
    with pytest.raises(LpFormatError, match="two numbers"):
        parse_lp("Maximize\n obj: 2 3 x\nEnd\n")
