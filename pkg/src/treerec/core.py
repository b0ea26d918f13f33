"""Labeled trees, forests, endofunctions and partitions.

All label arrays are stored 1-indexed with a placeholder in slot 0, so
``parents[v]`` is the parent of ``v``.  Slot 0 always holds 0: for a
forest this is the virtual root (written ∘ in prose) mapping to itself,
which makes ``RootedForest.parents`` literally the parent function of the
planted tree on ``{0, 1, ..., n}``.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    CycleDetected,
    InvalidLabel,
    InvalidPartition,
    MultipleRoots,
    NoRoot,
    NotACatalyst,
    NotConnected,
    ParseError,
)

VIRTUAL_ROOT = 0


def _padded(values: Sequence[int]) -> tuple[int, ...]:
    return (0, *(int(x) for x in values))


def cycles_of(image: Sequence[int], domain: Iterable[int]) -> list[tuple[int, ...]]:
    """Cycles of the map ``i -> image[i]`` restricted to ``domain``.

    Each cycle is listed from its smallest element, cycles ordered by that
    element.  ``domain`` must be closed under the map.
    """
    state: dict[int, int] = {}  # 1 = on current walk, 2 = done
    found = []
    for start in domain:
        if start in state:
            continue
        walk = []
        x = start
        while x not in state:
            state[x] = 1
            walk.append(x)
            x = image[x]
        if state[x] == 1:
            cyc = walk[walk.index(x):]
            m = cyc.index(min(cyc))
            found.append(tuple(cyc[m:] + cyc[:m]))
        for y in walk:
            state[y] = 2
    found.sort(key=lambda c: c[0])
    return found


@dataclass(frozen=True)
class RootedTree:
    """Rooted tree on ``[n]``; the root is the unique ``r`` with ``parents[r] == r``."""

    parents: tuple[int, ...]
    root: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        p = tuple(self.parents)
        object.__setattr__(self, "parents", p)
        if not p or p[0] != 0:
            raise InvalidLabel("slot 0 of a padded parent array must hold 0")
        n = len(p) - 1
        for v in range(1, n + 1):
            if not 1 <= p[v] <= n:
                raise InvalidLabel(f"parent of {v} is {p[v]}, outside [1, {n}]")
        nontrivial = [c for c in cycles_of(p, range(1, n + 1)) if len(c) > 1]
        if nontrivial:
            raise CycleDetected(f"parent chain cycles through {nontrivial[0]}")
        roots = [v for v in range(1, n + 1) if p[v] == v]
        if not roots:
            raise NoRoot("no vertex is its own parent")
        if len(roots) > 1:
            raise MultipleRoots(f"several self-parented vertices: {roots}")
        object.__setattr__(self, "root", roots[0])

    @classmethod
    def from_parents(cls, parents: Sequence[int]) -> RootedTree:
        """Build from the unpadded list ``[p(1), ..., p(n)]``."""
        return cls(_padded(parents))

    @classmethod
    def from_dict(cls, mapping: Mapping[int, int]) -> RootedTree:
        n = len(mapping)
        if set(mapping) != set(range(1, n + 1)):
            raise InvalidLabel("tree labels must be exactly 1..n")
        return cls(_padded([mapping[v] for v in range(1, n + 1)]))

    @property
    def n(self) -> int:
        return len(self.parents) - 1

    def parent(self, v: int) -> int:
        return self.parents[v]

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in range(self.n + 1)]
        for v in range(1, self.n + 1):
            if v != self.root:
                kids[self.parents[v]].append(v)
        return tuple(tuple(k) for k in kids)

    def path_to_root(self, v: int) -> list[int]:
        """Vertices from ``v`` up to and including the root."""
        path = [v]
        while path[-1] != self.root:
            path.append(self.parents[path[-1]])
        return path

    def as_endofunction(self) -> Endofunction:
        """The parent map, a connected endofunction of girth 1."""
        return Endofunction(self.parents)

    def as_forest(self) -> RootedForest:
        p = list(self.parents)
        p[self.root] = 0
        return RootedForest(tuple(p))

    def to_json(self) -> dict:
        return {"n": self.n, "parents": list(self.parents[1:])}


def validate_tree(parents: Sequence[int] | Mapping[int, int]) -> RootedTree:
    """Validate an unpadded parent list (or a ``{vertex: parent}`` map)."""
    if isinstance(parents, Mapping):
        return RootedTree.from_dict(parents)
    return RootedTree.from_parents(parents)


@dataclass(frozen=True)
class RootedForest:
    """Rooted forest on ``[n]``; ``parents[v] == 0`` marks a component root."""

    parents: tuple[int, ...]

    def __post_init__(self) -> None:
        p = tuple(self.parents)
        object.__setattr__(self, "parents", p)
        if not p or p[0] != 0:
            raise InvalidLabel("slot 0 of a padded parent array must hold 0")
        n = len(p) - 1
        for v in range(1, n + 1):
            if not 0 <= p[v] <= n:
                raise InvalidLabel(f"parent of {v} is {p[v]}, outside [0, {n}]")
        if n and not any(p[v] == 0 for v in range(1, n + 1)):
            raise NoRoot("a nonempty forest needs at least one root")
        bad = [c for c in cycles_of(p, range(n + 1)) if c != (0,)]
        if bad:
            raise CycleDetected(f"parent chain cycles through {bad[0]}")

    @classmethod
    def from_parents(cls, parents: Sequence[int]) -> RootedForest:
        return cls(_padded(parents))

    @property
    def n(self) -> int:
        return len(self.parents) - 1

    def parent(self, v: int) -> int:
        return self.parents[v]

    @cached_property
    def roots(self) -> tuple[int, ...]:
        return tuple(v for v in range(1, self.n + 1) if self.parents[v] == 0)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        """``children[v]`` for ``v`` in ``0..n``; ``children[0]`` are the roots."""
        kids: list[list[int]] = [[] for _ in range(self.n + 1)]
        for v in range(1, self.n + 1):
            kids[self.parents[v]].append(v)
        return tuple(tuple(k) for k in kids)

    def path_to_root(self, v: int) -> list[int]:
        """Vertices from ``v`` up to its component root (``0`` excluded)."""
        path = [v]
        while self.parents[path[-1]] != 0:
            path.append(self.parents[path[-1]])
        return path

    def component_root(self, v: int) -> int:
        return self.path_to_root(v)[-1]

    def components(self) -> list[tuple[int, list[int]]]:
        """``(root, vertices)`` pairs ordered by root label."""
        members: dict[int, list[int]] = {r: [] for r in self.roots}
        for v in range(1, self.n + 1):
            members[self.component_root(v)].append(v)
        return [(r, members[r]) for r in self.roots]

    def to_json(self) -> dict:
        return {"n": self.n, "parents": list(self.parents[1:])}


@dataclass(frozen=True)
class PlantedTree:
    """A forest viewed as one tree on ``{0, ..., n}`` rooted at the virtual vertex 0."""

    parents: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.parents) - 1

    @property
    def root(self) -> int:
        return VIRTUAL_ROOT

    def root_children(self) -> tuple[int, ...]:
        return tuple(v for v in range(1, self.n + 1) if self.parents[v] == 0)


def attach_virtual_root(forest: RootedForest) -> PlantedTree:
    return PlantedTree(forest.parents)


def detach_virtual_root(tree: PlantedTree) -> RootedForest:
    return RootedForest(tree.parents)


@dataclass(frozen=True)
class Component:
    cycle: tuple[int, ...]
    vertices: frozenset[int]

    @property
    def girth(self) -> int:
        return len(self.cycle)


@dataclass(frozen=True)
class Orbit:
    tail: tuple[int, ...]
    cycle: tuple[int, ...]

    def as_set(self) -> frozenset[int]:
        return frozenset(self.tail) | frozenset(self.cycle)


@dataclass(frozen=True)
class Endofunction:
    """A map ``[n] -> [n]``, stored padded: ``image[i]`` is the image of ``i``."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        im = tuple(self.image)
        object.__setattr__(self, "image", im)
        if not im or im[0] != 0:
            raise InvalidLabel("slot 0 of a padded image array must hold 0")
        n = len(im) - 1
        for i in range(1, n + 1):
            if not 1 <= im[i] <= n:
                raise InvalidLabel(f"image of {i} is {im[i]}, outside [1, {n}]")

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Endofunction:
        return cls(_padded(images))

    @classmethod
    def from_dict(cls, mapping: Mapping[int, int]) -> Endofunction:
        n = len(mapping)
        if set(mapping) != set(range(1, n + 1)):
            raise InvalidLabel("endofunction domain must be exactly 1..n")
        return cls(_padded([mapping[i] for i in range(1, n + 1)]))

    @property
    def n(self) -> int:
        return len(self.image) - 1

    def __call__(self, i: int) -> int:
        return self.image[i]

    @cached_property
    def cycles(self) -> list[tuple[int, ...]]:
        return cycles_of(self.image, range(1, self.n + 1))

    @cached_property
    def cycle_successor(self) -> dict[int, int]:
        return {x: self.image[x] for c in self.cycles for x in c}

    @cached_property
    def cycle_predecessor(self) -> dict[int, int]:
        return {self.image[x]: x for c in self.cycles for x in c}

    @property
    def is_connected(self) -> bool:
        return len(self.cycles) == 1

    def with_value(self, i: int, value: int) -> Endofunction:
        im = list(self.image)
        im[i] = value
        return Endofunction(tuple(im))

    def to_json(self) -> dict:
        return {"n": self.n, "image": list(self.image[1:])}


def functional_components(f: Endofunction) -> list[Component]:
    """Connected components of the functional graph, ordered by smallest cycle element."""
    comp_of: dict[int, int] = {}
    for idx, c in enumerate(f.cycles):
        for x in c:
            comp_of[x] = idx
    for i in range(1, f.n + 1):
        walk = []
        x = i
        while x not in comp_of:
            walk.append(x)
            x = f.image[x]
        for y in walk:
            comp_of[y] = comp_of[x]
    members: list[set[int]] = [set() for _ in f.cycles]
    for i, idx in comp_of.items():
        members[idx].add(i)
    return [Component(c, frozenset(m)) for c, m in zip(f.cycles, members)]


def orbit(f: Endofunction, i: int) -> Orbit:
    """Split ``{f^k(i) : k >= 0}`` into the pre-periodic tail and the cycle."""
    seen: dict[int, int] = {}
    seq = []
    x = i
    while x not in seen:
        seen[x] = len(seq)
        seq.append(x)
        x = f.image[x]
    start = seen[x]
    return Orbit(tuple(seq[:start]), tuple(seq[start:]))


def girth(f: Endofunction) -> int:
    if not f.is_connected:
        raise NotConnected(f"endofunction has {len(f.cycles)} components")
    return len(f.cycles[0])


@dataclass(frozen=True)
class IntPartition:
    """Integer partition stored as sorted ``(part, multiplicity)`` pairs."""

    multiplicities: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        cleaned = {}
        for part, mult in self.multiplicities:
            if part < 1 or mult < 0:
                raise InvalidPartition(f"bad part/multiplicity ({part}, {mult})")
            if mult:
                cleaned[part] = cleaned.get(part, 0) + mult
        object.__setattr__(self, "multiplicities", tuple(sorted(cleaned.items())))

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> IntPartition:
        return cls(tuple(Counter(parts).items()))

    @property
    def parts(self) -> tuple[int, ...]:
        """Parts in weakly decreasing order."""
        return tuple(p for p, m in reversed(self.multiplicities) for _ in range(m))

    def multiplicity(self, part: int) -> int:
        return dict(self.multiplicities).get(part, 0)

    @property
    def weight(self) -> int:
        return sum(p * m for p, m in self.multiplicities)

    @property
    def length(self) -> int:
        return sum(m for _, m in self.multiplicities)

    @property
    def z(self) -> int:
        """Centralizer size ``prod p^m_p * m_p!``."""
        out = 1
        for p, m in self.multiplicities:
            out *= p**m * math.factorial(m)
        return out

    def without(self, other: IntPartition) -> IntPartition:
        """Multiset difference; ``other`` must be contained in ``self``."""
        mine = dict(self.multiplicities)
        for p, m in other.multiplicities:
            if mine.get(p, 0) < m:
                raise InvalidPartition(f"{other.parts} is not contained in {self.parts}")
            mine[p] -= m
        return IntPartition(tuple(mine.items()))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions(q: int, max_part: int | None = None) -> Iterator[IntPartition]:
    """All partitions of ``q`` with parts at most ``max_part``."""

    def gen(rest: int, cap: int) -> Iterator[list[int]]:
        if rest == 0:
            yield []
            return
        for part in range(min(rest, cap), 0, -1):
            for tail in gen(rest - part, part):
                yield [part, *tail]

    for parts in gen(q, q if max_part is None else max_part):
        yield IntPartition.from_parts(parts)


@dataclass(frozen=True, order=True)
class Catalyst:
    """A (descendant, ancestor) pair of distinct vertices."""

    descendant: int
    ancestor: int

    def check(self, tree: RootedTree) -> None:
        if self.descendant == self.ancestor or self.ancestor not in tree.path_to_root(
            self.descendant
        ):
            raise NotACatalyst(
                f"{self.ancestor} is not a proper ancestor of {self.descendant}"
            )

    def as_pair(self) -> tuple[int, int]:
        return (self.descendant, self.ancestor)


# JSON -------------------------------------------------------------------------


def _load(obj: str | Mapping) -> Mapping:
    if isinstance(obj, Mapping):
        return obj
    try:
        return json.loads(obj)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _array(data: Mapping, key: str) -> list[int]:
    try:
        values = [int(x) for x in data[key]]
        n = int(data.get("n", len(values)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"expected {{'n': int, '{key}': [int, ...]}}") from exc
    if n != len(values):
        raise ParseError(f"'n' is {n} but '{key}' has {len(values)} entries")
    return values


def tree_from_json(obj: str | Mapping) -> RootedTree:
    return RootedTree.from_parents(_array(_load(obj), "parents"))


def forest_from_json(obj: str | Mapping) -> RootedForest:
    return RootedForest.from_parents(_array(_load(obj), "parents"))


def endofunction_from_json(obj: str | Mapping) -> Endofunction:
    return Endofunction.from_images(_array(_load(obj), "image"))
