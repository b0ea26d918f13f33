"""Record statistics: record sets, heights, catalysts, bonsai decomposition,
doubly record-covering pairs and distance partitions."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Catalyst,
    Endofunction,
    IntPartition,
    RootedForest,
    RootedTree,
    orbit,
)

Tree = RootedTree | RootedForest


def _is_root(t: Tree, v: int) -> bool:
    return t.parents[v] == (v if isinstance(t, RootedTree) else 0)


def _top_down(t: Tree) -> list[int]:
    """Vertices ordered so that every parent precedes its children."""
    kids = t.children
    order = []
    stack = [t.root] if isinstance(t, RootedTree) else list(reversed(kids[0]))
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(reversed(kids[v]))
    return order


def records_of_tree(t: Tree) -> tuple[int, ...]:
    """Vertices carrying the largest label on their path to the root, ascending.

    For forests the virtual root is never a record, so every component root is.
    """
    best = [0] * (t.n + 1)  # max label strictly above v
    recs = []
    for v in _top_down(t):
        if not _is_root(t, v):
            u = t.parents[v]
            best[v] = max(best[u], u)
        if v > best[v]:
            recs.append(v)
    return tuple(sorted(recs))


def heights(t: Tree) -> list[int]:
    """``heights(t)[v]`` is the edge count from ``v`` to its component root."""
    h = [0] * (t.n + 1)
    for v in _top_down(t):
        if not _is_root(t, v):
            h[v] = h[t.parents[v]] + 1
    return h


def height(t: Tree, v: int) -> int:
    return len(t.path_to_root(v)) - 1


def total_height(t: Tree) -> int:
    return sum(heights(t))


def catalysts(t: RootedTree) -> frozenset[Catalyst]:
    """All (descendant, ancestor) pairs; as many as the total height."""
    out = set()
    for u in range(1, t.n + 1):
        for v in t.path_to_root(u)[1:]:
            out.add(Catalyst(u, v))
    return frozenset(out)


def endofunction_records(f: Endofunction) -> tuple[int, ...]:
    """Elements at least as large as everything in their forward orbit."""
    return tuple(i for i in range(1, f.n + 1) if i == max(orbit(f, i).as_set()))


@dataclass(frozen=True)
class Bonsai:
    record: int
    parents: tuple[tuple[int, int], ...]  # (vertex, parent) for the non-root vertices

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset([self.record, *(v for v, _ in self.parents)])


@dataclass(frozen=True)
class BonsaiDecomposition:
    n: int
    bonsais: tuple[Bonsai, ...]
    attachments: tuple[int, ...]  # parents of records 2nd-smallest upward; 0 = virtual root

    def reassemble(self) -> RootedForest:
        p = [0] * (self.n + 1)
        for b in self.bonsais:
            for v, u in b.parents:
                p[v] = u
        for b, att in zip(self.bonsais[1:], self.attachments):
            p[b.record] = att
        return RootedForest(tuple(p))


def bonsai_decomposition(forest: RootedForest) -> BonsaiDecomposition:
    """Cut every record from its parent; the pieces have one record each."""
    recs = records_of_tree(forest)
    is_rec = set(recs)
    owner = [0] * (forest.n + 1)
    pieces: dict[int, list[tuple[int, int]]] = {r: [] for r in recs}
    for v in _top_down(forest):
        if v in is_rec:
            owner[v] = v
        else:
            u = forest.parents[v]
            owner[v] = owner[u]
            pieces[owner[v]].append((v, u))
    bonsais = tuple(Bonsai(r, tuple(sorted(pieces[r]))) for r in recs)
    attachments = tuple(forest.parents[r] for r in recs[1:])
    return BonsaiDecomposition(forest.n, bonsais, attachments)


def doubly_covering_pairs(forest: RootedForest) -> list[tuple[int, int]]:
    """Pairs ``(R, R')`` of consecutive records with ``R`` an ancestor of ``R'``, sorted by ``R``."""
    recs = records_of_tree(forest)
    return [
        (a, b)
        for a, b in zip(recs, recs[1:])
        if a in forest.path_to_root(b)
    ]


def distance(forest: RootedForest, descendant: int, ancestor: int) -> int:
    return forest.path_to_root(descendant).index(ancestor)


def distance_partition(forest: RootedForest) -> IntPartition:
    return IntPartition.from_parts(
        distance(forest, b, a) for a, b in doubly_covering_pairs(forest)
    )


def record_count_per_component(forest: RootedForest) -> dict[int, int]:
    """Number of records in each component, keyed by component root."""
    counts = {r: 0 for r in forest.roots}
    for v in records_of_tree(forest):
        counts[forest.component_root(v)] += 1
    return counts
