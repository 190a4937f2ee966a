"""Domain types for the longest filled common subsequence problem.

An instance is a pair of strings ``a`` and ``b`` over a shared integer
alphabet plus a multiset ``m`` of fill symbols. Solutions are expressed
in the deletion view: a set of positions of ``a`` matched against the
multiset, scored as the deletion count plus the LCS of the remainder of
``a`` with ``b``.

Symbols are small integer ids so alphabets larger than the Latin letters
work; a glyph layer maps ids to ``a-zA-Z`` for readable examples.
"""

from __future__ import annotations

import os
import string
from dataclasses import dataclass
from typing import Iterable, Mapping, TextIO

from .lcs import lcs_length, lcs_traceback

Symbol = int
SymbolSeq = tuple[int, ...]
Multiset = dict[int, int]

MAX_ALPHABET = 1 << 16

GLYPHS = string.ascii_lowercase + string.ascii_uppercase
_GLYPH_TO_ID = {g: i for i, g in enumerate(GLYPHS)}


class InvalidInstanceError(ValueError):
    """The instance fields violate an invariant."""


class InvalidSolutionError(ValueError):
    """A deletion solution is malformed or exceeds multiset capacity."""


class InstanceFormatError(ValueError):
    """Text that does not parse as an instance file."""


def multiset(symbols: Iterable[Symbol]) -> Multiset:
    """Count symbols into a multiset mapping (no zero-count entries)."""
    counts: Multiset = {}
    for s in symbols:
        counts[s] = counts.get(s, 0) + 1
    return counts


def multiset_total(counts: Mapping[Symbol, int]) -> int:
    return sum(counts.values())


def symbol_counts(seq: Iterable[Symbol]) -> Multiset:
    """Per-symbol occurrence counts of a sequence."""
    return multiset(seq)


@dataclass(frozen=True)
class Instance:
    """Problem input: strings ``a`` and ``b`` and fill multiset ``m``.

    Every symbol id occurring in ``a``, ``b`` or ``m`` must lie in
    ``[0, alphabet_size)``. The multiset holds positive counts only.
    """

    a: SymbolSeq
    b: SymbolSeq
    m: Multiset
    alphabet_size: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "m", dict(self.m))
        if not 1 <= self.alphabet_size <= MAX_ALPHABET:
            raise InvalidInstanceError(
                f"alphabet_size must be in [1, {MAX_ALPHABET}], got {self.alphabet_size}"
            )
        for name, seq in (("a", self.a), ("b", self.b)):
            for s in seq:
                self._check_symbol(s, name)
        for s, c in self.m.items():
            self._check_symbol(s, "m")
            if c <= 0:
                raise InvalidInstanceError(f"multiset count for symbol {s} must be positive, got {c}")

    def _check_symbol(self, s: int, where: str) -> None:
        if not isinstance(s, int) or not 0 <= s < self.alphabet_size:
            raise InvalidInstanceError(
                f"symbol {s!r} in {where} outside alphabet [0, {self.alphabet_size})"
            )

    @classmethod
    def make(
        cls,
        a: Iterable[Symbol],
        b: Iterable[Symbol],
        m: Iterable[Symbol] | Mapping[Symbol, int],
        alphabet_size: int | None = None,
    ) -> "Instance":
        """Build an instance, counting ``m`` from an iterable and
        inferring a minimal alphabet when none is given."""
        a = tuple(a)
        b = tuple(b)
        counts = dict(m) if isinstance(m, Mapping) else multiset(m)
        if alphabet_size is None:
            used = set(a) | set(b) | set(counts)
            alphabet_size = max(used) + 1 if used else 1
        return cls(a, b, counts, alphabet_size)

    @property
    def n(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class DeletionSolution:
    """Positions of ``a`` matched with the fill multiset, strictly increasing."""

    deleted: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "deleted", tuple(self.deleted))
        prev = -1
        for d in self.deleted:
            if d <= prev:
                raise InvalidSolutionError(f"deleted indices must be strictly increasing, got {self.deleted}")
            if d < 0:
                raise InvalidSolutionError(f"negative index {d}")
            prev = d

    @classmethod
    def of(cls, indices: Iterable[int]) -> "DeletionSolution":
        """Sort loose indices into a solution; duplicates are an error."""
        return cls(tuple(sorted(indices)))


EMPTY_SOLUTION = DeletionSolution()


@dataclass(frozen=True)
class ScoredSolution:
    """A deletion solution with its objective value and an optional
    alignment witness (index pairs into the original ``a`` and ``b``)."""

    solution: DeletionSolution
    value: int
    alignment: tuple[tuple[int, int], ...] | None = None


def evaluate_solution(
    instance: Instance, sol: DeletionSolution, *, with_alignment: bool = True
) -> ScoredSolution:
    """Score a deletion solution: deletions plus the LCS of the remainder.

    Raises InvalidSolutionError if an index is out of range or a symbol
    is deleted more often than the multiset allows.
    """
    n = len(instance.a)
    used: Multiset = {}
    for d in sol.deleted:
        if d >= n:
            raise InvalidSolutionError(f"deleted index {d} out of range for |a|={n}")
        s = instance.a[d]
        used[s] = used.get(s, 0) + 1
    for s, c in used.items():
        cap = instance.m.get(s, 0)
        if c > cap:
            raise InvalidSolutionError(
                f"symbol {s} deleted {c} times but multiset holds only {cap}"
            )
    deleted_set = set(sol.deleted)
    kept = [i for i in range(n) if i not in deleted_set]
    remainder = tuple(instance.a[i] for i in kept)
    if with_alignment:
        pairs = lcs_traceback(remainder, instance.b)
        alignment = tuple((kept[i], j) for i, j in pairs)
        value = len(sol.deleted) + len(pairs)
        return ScoredSolution(sol, value, alignment)
    value = len(sol.deleted) + lcs_length(remainder, instance.b)
    return ScoredSolution(sol, value, None)


def fill_preview(instance: Instance, sol: DeletionSolution) -> SymbolSeq:
    """Debug helper: one filling of ``b`` equivalent to the deletion view
    (deleted symbols prepended to ``b``)."""
    return tuple(instance.a[d] for d in sol.deleted) + instance.b


# ---------------------------------------------------------------------------
# Text format
#
# Canonical 4-line form, one instance per file:
#   line 1: space-separated symbol ids of a
#   line 2: space-separated symbol ids of b
#   line 3: space-separated symbol ids of m (order-insensitive)
#   line 4: alphabet size
# Convenience 3-line form: a, b, m as ASCII-letter strings (a-zA-Z),
# alphabet size inferred as the largest mapped id plus one.
# ---------------------------------------------------------------------------


def seq_from_letters(text: str) -> SymbolSeq:
    """Map a-z to ids 0..25 and A-Z to 26..51."""
    try:
        return tuple(_GLYPH_TO_ID[ch] for ch in text)
    except KeyError as exc:
        raise InstanceFormatError(f"non-letter glyph {exc.args[0]!r}") from None


def seq_to_letters(seq: Iterable[Symbol]) -> str:
    out = []
    for s in seq:
        if not 0 <= s < len(GLYPHS):
            raise InvalidInstanceError(f"symbol id {s} has no letter glyph")
        out.append(GLYPHS[s])
    return "".join(out)


def instance_from_letters(a: str, b: str, m: str) -> Instance:
    return Instance.make(seq_from_letters(a), seq_from_letters(b), seq_from_letters(m))


def parse_instance(text: str) -> Instance:
    lines = text.split("\n")
    while lines and lines[-1].strip() == "":
        lines.pop()
    if len(lines) == 4:
        try:
            a = tuple(int(t) for t in lines[0].split())
            b = tuple(int(t) for t in lines[1].split())
            m = tuple(int(t) for t in lines[2].split())
            alphabet = int(lines[3])
        except ValueError as exc:
            raise InstanceFormatError(f"bad id-form instance: {exc}") from None
        try:
            return Instance.make(a, b, m, alphabet)
        except InvalidInstanceError as exc:
            raise InstanceFormatError(str(exc)) from None
    if len(lines) == 3:
        try:
            return instance_from_letters(lines[0].strip(), lines[1].strip(), lines[2].strip())
        except InvalidInstanceError as exc:
            raise InstanceFormatError(str(exc)) from None
    raise InstanceFormatError(
        f"expected 4 lines (ids) or 3 lines (letters), got {len(lines)}"
    )


def format_instance(instance: Instance) -> str:
    m_flat: list[int] = []
    for s in sorted(instance.m):
        m_flat.extend([s] * instance.m[s])
    return "\n".join(
        (
            " ".join(str(s) for s in instance.a),
            " ".join(str(s) for s in instance.b),
            " ".join(str(s) for s in m_flat),
            str(instance.alphabet_size),
        )
    ) + "\n"


def read_instance(source: str | os.PathLike | TextIO) -> Instance:
    if isinstance(source, (str, bytes, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fh:
            return parse_instance(fh.read())
    return parse_instance(source.read())


def write_instance(instance: Instance, sink: str | os.PathLike | TextIO) -> None:
    text = format_instance(instance)
    if isinstance(sink, (str, bytes, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sink.write(text)
