"""Explicit bijections between marked trees, endofunctions and catalysts.

Every forward map has an inverse here; ``treerec.oracle.audit`` checks
each pair exhaustively on small orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import (
    Catalyst,
    Endofunction,
    RootedForest,
    RootedTree,
    girth,
)
from .errors import (
    GirthTooSmall,
    InvalidK,
    InvalidLabel,
    LabelOverlap,
    NotAMark,
    NotConnected,
    NotIncreasing,
    RNotNonRootRecord,
    TooFewRecords,
    VIsRoot,
    VirtualSubtreeHasRecord,
    WrongRecordCount,
)
from .records import endofunction_records, records_of_tree

# Joyal-style: marked trees <-> connected endofunctions ----------------------


@dataclass(frozen=True)
class MarkedTree:
    tree: RootedTree
    mark: int

    def __post_init__(self) -> None:
        if self.mark not in records_of_tree(self.tree):
            raise NotAMark(f"{self.mark} is not a record of the tree")


def joyal_forward(mt: MarkedTree) -> Endofunction:
    """Send the root to the mark; every other vertex to its parent."""
    return mt.tree.as_endofunction().with_value(mt.tree.root, mt.mark)


def joyal_inverse(f: Endofunction) -> MarkedTree:
    """Cut the cycle just before its largest element and root there."""
    if not f.is_connected:
        raise NotConnected(f"endofunction has {len(f.cycles)} components")
    mark = max(f.cycles[0])
    root = f.cycle_predecessor[mark]
    return MarkedTree(RootedTree(f.with_value(root, root).image), mark)


# Girth shift: E(m, k+1) <-> E(m+1, k) ----------------------------------------


def _check_shift_k(k: int) -> None:
    if k < 1:
        raise InvalidK(f"k must be at least 1, got {k}")


def girth_shift_forward(f: Endofunction, k: int) -> Endofunction:
    """Lengthen the cycle by one, keeping the ``k`` greatest records."""
    _check_shift_k(k)
    girth(f)
    recs = endofunction_records(f)
    if len(recs) < k + 1:
        raise TooFewRecords(f"need at least {k + 1} records, found {len(recs)}")
    v = recs[-k]
    sigma = f.cycle_successor
    w = v
    while f(w) not in sigma:
        w = f(w)
    x = f.cycle_predecessor[f(w)]
    return f.with_value(x, w)


def girth_shift_inverse(g: Endofunction, k: int) -> Endofunction:
    _check_shift_k(k)
    if girth(g) < 2:
        raise GirthTooSmall("girth must be at least 2 to shorten the cycle")
    recs = endofunction_records(g)
    if len(recs) < k:
        raise TooFewRecords(f"need at least {k} records, found {len(recs)}")
    v = recs[-k]
    pi = g.cycle_successor
    w = v
    while w not in pi:
        w = g(w)
    x = g.cycle_predecessor[w]
    return g.with_value(x, g(w))


def to_girth(f: Endofunction, target: int, level: int | None = None) -> Endofunction:
    """Chain girth shifts from ``E(m, level - m)`` to ``E(target, level - target)``.

    ``level`` is the invariant ``girth + records lower bound``; by default
    the larger end of the chain carries the bound 1.
    """
    m = girth(f)
    if target < 1:
        raise GirthTooSmall(f"target girth must be positive, got {target}")
    if level is None:
        level = max(m, target) + 1
    if level - max(m, target) < 1:
        raise TooFewRecords(f"level {level} leaves no record at girth {max(m, target)}")
    while m < target:
        f = girth_shift_forward(f, level - m - 1)
        m += 1
    while m > target:
        f = girth_shift_inverse(f, level - m)
        m -= 1
    return f


# Catalysts: [n] x (trees with a non-root record) <-> trees with a catalyst ---


def catalyst_forward(v: int, tree: RootedTree, r: int) -> tuple[RootedTree, Catalyst]:
    """Map ``(v, T, r)`` to a tree with a catalyst.

    When ``v`` lies off the cycle of the Joyal image the catalyst is at
    distance >= 2.  When ``v`` is on the cycle the tree is cut before ``v``
    and the catalyst is ``v`` with its parent, which accounts for exactly the
    distance-1 catalysts.
    """
    if r == tree.root or r not in records_of_tree(tree):
        raise RNotNonRootRecord(f"{r} is not a non-root record")
    if not 1 <= v <= tree.n:
        raise InvalidLabel(f"v={v} outside [1, {tree.n}]")
    f = joyal_forward(MarkedTree(tree, r))
    sigma = f.cycle_successor
    x = v
    while x not in sigma:
        x = f(x)
    if x == v:
        w = f.cycle_predecessor[v]
        cut = f.with_value(w, w)
        return RootedTree(cut.image), Catalyst(v, f(v))
    g = f.with_value(f.cycle_predecessor[x], v)
    w = g.cycle_predecessor[x]
    return RootedTree(g.with_value(w, w).image), Catalyst(x, v)


def catalyst_inverse(tree: RootedTree, c: Catalyst) -> tuple[int, RootedTree, int]:
    c.check(tree)
    path = tree.path_to_root(c.descendant)
    d = path.index(c.ancestor)
    w = tree.root
    f = tree.as_endofunction()
    if d == 1:
        v = c.descendant
        f = f.with_value(w, v)
    else:
        x, v = c.descendant, c.ancestor
        f = f.with_value(w, x).with_value(path[d - 1], x)
    mt = joyal_inverse(f)
    return v, mt.tree, mt.mark


# Riordan-Sloane: pairs of pointed trees <-> trees with a catalyst ------------


@dataclass(frozen=True)
class PointedTree:
    """A rooted tree on an arbitrary label set with one selected vertex."""

    parents: Mapping[int, int]
    selected: int

    @property
    def root(self) -> int:
        return _dict_root(self.parents)

    def to_json(self) -> dict:
        return {
            "parents": {str(k): v for k, v in sorted(self.parents.items())},
            "selected": self.selected,
        }


def _dict_root(parents: Mapping[int, int]) -> int:
    roots = [v for v, p in parents.items() if v == p]
    if len(roots) != 1:
        raise InvalidLabel(f"expected one self-parented root, found {roots}")
    return roots[0]


def _dict_path(parents: Mapping[int, int], v: int) -> list[int]:
    path = [v]
    while parents[path[-1]] != path[-1]:
        path.append(parents[path[-1]])
        if len(path) > len(parents):
            raise InvalidLabel("parent map contains a cycle")
    return path


def reroot(parents: Mapping[int, int], new_root: int) -> dict[int, int]:
    """Reverse the path from ``new_root`` to the old root."""
    out = dict(parents)
    path = _dict_path(parents, new_root)
    for child, parent in zip(path, path[1:]):
        out[parent] = child
    out[new_root] = new_root
    return out


def _subtree(parents: Mapping[int, int], top: int) -> set[int]:
    return {v for v in parents if top in _dict_path(parents, v)}


def riordan_sloane_forward(first: PointedTree, second: PointedTree) -> tuple[RootedTree, Catalyst]:
    """Join the roots, root at the first selection; catalyst (second selection, first root)."""
    if set(first.parents) & set(second.parents):
        raise LabelOverlap(f"shared labels {sorted(set(first.parents) & set(second.parents))}")
    n = len(first.parents) + len(second.parents)
    if set(first.parents) | set(second.parents) != set(range(1, n + 1)):
        raise InvalidLabel("the two label sets must partition 1..n")
    for t in (first, second):
        if t.selected not in t.parents:
            raise InvalidLabel(f"selected vertex {t.selected} is not in its tree")
    a, b = first.root, second.root
    joined = reroot(first.parents, first.selected)
    joined.update(second.parents)
    joined[b] = a
    return RootedTree.from_dict(joined), Catalyst(second.selected, a)


def riordan_sloane_inverse(tree: RootedTree, c: Catalyst) -> tuple[PointedTree, PointedTree]:
    c.check(tree)
    path = tree.path_to_root(c.descendant)
    a = c.ancestor
    r2 = path[path.index(a) - 1]
    parents = {v: tree.parents[v] for v in range(1, tree.n + 1)}
    below = _subtree(parents, r2)
    second = {v: parents[v] for v in below}
    second[r2] = r2
    first = {v: parents[v] for v in parents if v not in below}
    return (
        PointedTree(reroot(first, a), tree.root),
        PointedTree(second, c.descendant),
    )


# Weight of S_n: (non-root vertex, increasing forest) <-> forests with n-1 records


def sn_weight_forward(v: int, forest: RootedForest) -> RootedForest:
    n = forest.n
    if len(records_of_tree(forest)) != n:
        raise NotIncreasing("every vertex of the forest must be a record")
    if not 1 <= v <= n:
        raise InvalidLabel(f"v={v} outside [1, {n}]")
    p = forest.parents[v]
    if p == 0:
        raise VIsRoot(f"{v} is a root")
    chain = [forest.parents[p], *sorted(c for c in forest.children[p] if c < v), v, p]
    new = list(forest.parents)
    for lower, upper in zip(chain[1:], chain):
        new[lower] = upper
    return RootedForest(tuple(new))


def sn_weight_inverse(forest: RootedForest) -> tuple[int, RootedForest]:
    n = forest.n
    recs = set(records_of_tree(forest))
    if len(recs) != n - 1:
        raise WrongRecordCount(f"need exactly {n - 1} records, found {len(recs)}")
    (p,) = set(range(1, n + 1)) - recs
    climb = [p]
    while climb[-1] >= p:
        climb.append(forest.parents[climb[-1]])
    # climb = [p, v, x_l, ..., x_1, x_0]
    x0, v = climb[-1], climb[1]
    new = list(forest.parents)
    new[p] = x0
    for y in climb[1:-1]:
        new[y] = p
    return v, RootedForest(tuple(new))


# Marked forests <-> endofunctions --------------------------------------------


@dataclass(frozen=True)
class MarkedForest:
    forest: RootedForest
    marks: tuple[int, ...]  # one per component, ordered like forest.roots

    def __post_init__(self) -> None:
        if len(self.marks) != len(self.forest.roots):
            raise NotAMark("need exactly one mark per component")
        recs = set(records_of_tree(self.forest))
        for root, mark in zip(self.forest.roots, self.marks):
            if mark not in recs or self.forest.component_root(mark) != root:
                raise NotAMark(f"{mark} is not a record of the component rooted at {root}")


def marked_forest_to_endofunction(mf: MarkedForest) -> Endofunction:
    image = list(mf.forest.parents)
    for root, mark in zip(mf.forest.roots, mf.marks):
        image[root] = mark
    return Endofunction(tuple(image))


def endofunction_to_marked_forest(f: Endofunction) -> MarkedForest:
    parents = list(f.image)
    mark_of_root = {}
    for cyc in f.cycles:
        mark = max(cyc)
        root = f.cycle_predecessor[mark]
        parents[root] = 0
        mark_of_root[root] = mark
    forest = RootedForest(tuple(parents))
    return MarkedForest(forest, tuple(mark_of_root[r] for r in forest.roots))


# Virtual-node decomposition: R*_k <-> R*_{k-1} x rooted trees ----------------

VIRTUAL = -1


def _rank(x: int) -> float:
    return float("inf") if x == VIRTUAL else x


@dataclass(frozen=True)
class VirtualTree:
    """Rooted tree on labels plus one unlabeled node ``VIRTUAL`` that outranks every label."""

    parents: Mapping[int, int]

    def __post_init__(self) -> None:
        if VIRTUAL not in self.parents:
            raise InvalidLabel("tree has no virtual node")
        _dict_root(self.parents)
        for v in self.parents:
            _dict_path(self.parents, v)

    @property
    def size(self) -> int:
        return len(self.parents) - 1

    @property
    def labels(self) -> frozenset[int]:
        return frozenset(v for v in self.parents if v != VIRTUAL)

    def records(self) -> tuple[int, ...]:
        return dict_records(self.parents)

    def check_class(self) -> None:
        """Raise unless no record other than the virtual node sits below it."""
        for r in self.records():
            if r != VIRTUAL and VIRTUAL in _dict_path(self.parents, r):
                raise VirtualSubtreeHasRecord(f"record {r} lies below the virtual node")


def dict_records(parents: Mapping[int, int]) -> tuple[int, ...]:
    out = []
    for v in parents:
        if all(_rank(u) < _rank(v) for u in _dict_path(parents, v)[1:]):
            out.append(v)
    return tuple(sorted(out, key=_rank))


def virtualize(tree: RootedTree) -> VirtualTree:
    """Turn the largest label into the virtual node."""
    parents = {v: tree.parents[v] for v in range(1, tree.n + 1)}
    return VirtualTree(_relabel(parents, {tree.n: VIRTUAL}))


def devirtualize(vt: VirtualTree) -> RootedTree:
    n = vt.size + 1
    if vt.labels != frozenset(range(1, n)):
        raise InvalidLabel("labels must be 1..size to devirtualize")
    return RootedTree.from_dict(_relabel(vt.parents, {VIRTUAL: n}))


def _relabel(parents: Mapping[int, int], mapping: Mapping[int, int]) -> dict[int, int]:
    m = lambda x: mapping.get(x, x)  # noqa: E731
    return {m(v): m(p) for v, p in parents.items()}


def standardize(parents: Mapping[int, int]) -> tuple[dict[int, int], dict[int, int]]:
    """Order-preserving relabel onto ``1..m`` (the virtual node is left alone)."""
    labels = sorted(v for v in parents if v != VIRTUAL)
    mapping = {v: i for i, v in enumerate(labels, 1)}
    return _relabel(parents, mapping), mapping


def virtual_node_split(t: VirtualTree) -> tuple[VirtualTree, dict[int, int]]:
    """Cut above the virtual node; hand its parent's label to the cut-off subtree."""
    t.check_class()
    ell = t.parents[VIRTUAL]
    if ell == VIRTUAL:
        raise TooFewRecords("the virtual node is the root; the tree has a single record")
    below = _subtree(t.parents, VIRTUAL)
    cut = {v: p for v, p in t.parents.items() if v in below}
    cut[VIRTUAL] = VIRTUAL
    rest = {v: p for v, p in t.parents.items() if v not in below}
    bigger = sorted(v for v in rest if v > ell)
    shift = dict(zip([ell, *bigger], [*bigger, VIRTUAL]))
    return VirtualTree(_relabel(rest, shift)), _relabel(cut, {VIRTUAL: ell})


def virtual_node_join(s_bar: VirtualTree, s_prime: Mapping[int, int]) -> VirtualTree:
    if set(s_bar.labels) & set(s_prime):
        raise LabelOverlap("the two trees share labels")
    ell = _dict_root(s_prime)
    bigger = sorted(v for v in s_bar.labels if v > ell)
    unshift = dict(zip([*bigger, VIRTUAL], [ell, *bigger]))
    rest = _relabel(s_bar.parents, unshift)
    cut = _relabel(s_prime, {ell: VIRTUAL})
    joined = {**rest, **cut}
    joined[VIRTUAL] = ell
    return VirtualTree(joined)


def is_increasing(forest: RootedForest) -> bool:
    return len(records_of_tree(forest)) == forest.n


def non_root_vertices(forest: RootedForest) -> Iterable[int]:
    return (v for v in range(1, forest.n + 1) if forest.parents[v] != 0)
