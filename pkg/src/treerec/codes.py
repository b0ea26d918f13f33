"""Record codes of rooted forests.

A forest on ``[n]`` (a tree on ``{0..n}`` planted at the virtual root 0) is
encoded as ``(r_1, ..., r_{n-1})`` over ``{0..n}``: a non-record ``i``
writes its parent, a record ``i`` writes the parent of the next larger
record.  Every sequence decodes, so there are ``(n+1)^(n-1)`` forests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .core import IntPartition, RootedForest, cycles_of
from .errors import InvalidK, InvalidLabel, ParseError
from .records import records_of_tree


@dataclass(frozen=True, order=True)
class RecordCode:
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        e = tuple(int(x) for x in self.entries)
        object.__setattr__(self, "entries", e)
        n = len(e) + 1
        for i, x in enumerate(e, 1):
            if not 0 <= x <= n:
                raise InvalidLabel(f"entry r_{i} = {x} outside [0, {n}]")

    @property
    def n(self) -> int:
        return len(self.entries) + 1

    def image(self) -> list[int]:
        """The code as a map on ``{0..n}`` with ``0`` and ``n`` fixed."""
        return [0, *self.entries, self.n]

    def __str__(self) -> str:
        return format_code(self)


def format_code(code: RecordCode) -> str:
    return ",".join(map(str, code.entries))


def parse_code(text: str, n: int | None = None) -> RecordCode:
    """Parse ``"2,3,1,7,3,0,4,7"``; ``0`` (or ``o``) stands for the virtual root."""
    text = text.strip()
    entries = []
    if text:
        for pos, tok in enumerate(text.split(","), 1):
            tok = tok.strip()
            if tok in ("o", "∘"):
                tok = "0"
            try:
                entries.append(int(tok))
            except ValueError as exc:
                raise ParseError(f"entry {pos}: {tok!r} is not an integer") from exc
    if n is not None and n != len(entries) + 1:
        raise ParseError(f"a code for n={n} has {n - 1} entries, got {len(entries)}")
    return RecordCode(tuple(entries))


def all_codes(n: int) -> Iterator[RecordCode]:
    """Every record code of order ``n`` in lexicographic order."""
    if n < 1:
        return
    for entries in itertools.product(range(n + 1), repeat=n - 1):
        yield RecordCode(entries)


def encode(forest: RootedForest) -> RecordCode:
    n = forest.n
    recs = records_of_tree(forest)
    next_rec = dict(zip(recs, recs[1:]))
    p = forest.parents
    return RecordCode(
        tuple(p[next_rec[i]] if i in next_rec else p[i] for i in range(1, n))
    )


def code_records(code: RecordCode) -> tuple[int, ...]:
    """Elements ``i`` with ``i >= r^m(i)`` for every ``m >= 1``."""
    r = code.image()
    out = []
    for i in range(1, code.n + 1):
        seen = set()
        x = r[i]
        while x <= i and x not in seen:
            seen.add(x)
            x = r[x]
        if x <= i:
            out.append(i)
    return tuple(out)


def decode(code: RecordCode) -> RootedForest:
    r = code.image()
    recs = code_records(code)
    p = [0] * (code.n + 1)
    is_rec = set(recs)
    for i in range(1, code.n + 1):
        if i not in is_rec:
            p[i] = r[i]
    for smaller, rec in zip(recs, recs[1:]):
        p[rec] = r[smaller]
    return RootedForest(tuple(p))


@dataclass(frozen=True)
class PhiEndofunction:
    """The record code read as a map on ``{0..n}`` fixing ``0`` and ``n``."""

    image: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.image) - 1

    @cached_property
    def cycles(self) -> list[tuple[int, ...]]:
        """All cycles, each listed from its largest element."""
        out = []
        for c in cycles_of(self.image, range(self.n + 1)):
            m = c.index(max(c))
            out.append(c[m:] + c[:m])
        return out

    @property
    def nontrivial_cycles(self) -> list[tuple[int, ...]]:
        return [c for c in self.cycles if c not in ((0,), (self.n,))]

    @property
    def cycle_type(self) -> IntPartition:
        return IntPartition.from_parts(len(c) for c in self.cycles)

    def records(self) -> tuple[int, ...]:
        """Records with the virtual root excluded."""
        return code_records(RecordCode(self.image[1:-1]))


def phi_endofunction(forest: RootedForest) -> PhiEndofunction:
    return PhiEndofunction(tuple(encode(forest).image()))


TRIVIAL_PAIR = IntPartition.from_parts([1, 1])


def _check_k(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise InvalidK(f"k={k} outside [1, {n}]")


def root_children_interval(n: int, k: int) -> tuple[RecordCode, RecordCode]:
    """Boundary codes ``o^(k-1) 1^(n-k)`` and ``o^(k-1) k n^(n-k-1)`` (cut to ``n - 1`` entries)."""
    _check_k(n, k)
    lower = (0,) * (k - 1) + (1,) * (n - k)
    upper = ((0,) * (k - 1) + (k,) + (n,) * max(n - k - 1, 0))[: n - 1]
    return RecordCode(lower), RecordCode(upper)


def in_lex_interval(code: RecordCode, k: int) -> bool:
    """``lower <= code <= upper`` in lexicographic order.

    This characterizes forests rooted at ``[k]`` only while ``n - k <= 1``;
    beyond that the interval also holds codes such as ``1,2,0`` (n=4, k=1)
    whose forests have extra roots.  Use ``is_rooted_at_prefix`` instead.
    """
    lower, upper = root_children_interval(code.n, k)
    return lower.entries <= code.entries <= upper.entries


def is_rooted_at_prefix(code: RecordCode, k: int) -> bool:
    """True iff the forest of ``code`` has roots exactly ``[k]``.

    The test is the same pair of bounds read entrywise: the first ``k - 1``
    entries are ``o``, entry ``k`` lies in ``[1, k]`` and no later entry is ``o``.
    """
    lower, upper = root_children_interval(code.n, k)
    return all(lo <= x <= up for lo, x, up in zip(lower.entries, code.entries, upper.entries))


def interval_codes(n: int, k: int) -> Iterator[RecordCode]:
    """Codes of the forests rooted at ``[k]``, in lexicographic order, without a full scan."""
    lower, upper = root_children_interval(n, k)
    ranges = [range(lo, up + 1) for lo, up in zip(lower.entries, upper.entries)]
    for entries in itertools.product(*ranges):
        yield RecordCode(entries)
