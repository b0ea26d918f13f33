"""Exhaustive generators and brute-force counters."""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterator

import numpy as np

from ..codes import TRIVIAL_PAIR, all_codes, decode
from ..core import Endofunction, RootedForest, RootedTree
from ..errors import CapExceeded, UnknownStatistic
from ..records import (
    catalysts,
    distance_partition,
    doubly_covering_pairs,
    records_of_tree,
)
from .kernels import endofunction_blocks, orbit_stats

# Default caps keep the full suite fast; raise them explicitly for larger runs.
CAPS = {
    "endofunctions": 8,
    "connected endofunctions": 8,
    "rooted trees": 9,
    "rooted forests": 8,
    "increasing forests": 8,
    "permutations": 9,
}

KINDS = tuple(CAPS)


def _check_cap(kind: str, n: int, cap: int | None) -> None:
    if kind not in CAPS:
        raise UnknownStatistic(f"unknown enumeration kind {kind!r}")
    limit = CAPS[kind] if cap is None else cap
    if n > limit:
        raise CapExceeded(f"{kind} of order {n} exceeds the cap {limit}")


def _tree_blocks(n: int) -> Iterator[np.ndarray]:
    """Parent maps of rooted trees, as girth-1 connected endofunctions."""
    for block in endofunction_blocks(n):
        st = orbit_stats(block)
        yield block[(st.components == 1) & (st.cyclic == 1)]


def _trees_from_codes(n: int) -> Iterator[RootedTree]:
    """Trees on ``[n]``: a root plus a forest on the other labels hung below it."""
    for root in range(1, n + 1):
        others = [v for v in range(1, n + 1) if v != root]
        for code in all_codes(n - 1):
            f = decode(code)
            p = [0] * (n + 1)
            p[root] = root
            for i, v in enumerate(others, 1):
                q = f.parents[i]
                p[v] = root if q == 0 else others[q - 1]
            yield RootedTree(tuple(p))


def enumerate_objects(kind: str, n: int, cap: int | None = None) -> Iterator:
    """Yield every object of the given kind and order exactly once."""
    _check_cap(kind, n, cap)
    if kind == "endofunctions":
        for block in endofunction_blocks(n):
            for row in block:
                yield Endofunction(tuple(int(x) for x in row))
    elif kind == "connected endofunctions":
        for block in endofunction_blocks(n):
            st = orbit_stats(block)
            for row in block[st.components == 1]:
                yield Endofunction(tuple(int(x) for x in row))
    elif kind == "rooted trees":
        if n == 1:
            yield RootedTree((0, 1))
        elif n <= 7:
            for block in _tree_blocks(n):
                for row in block:
                    yield RootedTree(tuple(int(x) for x in row))
        else:
            yield from _trees_from_codes(n)
    elif kind == "rooted forests":
        if n == 0:
            yield RootedForest((0,))
        for code in all_codes(n):
            yield decode(code)
    elif kind == "increasing forests":
        for code in all_codes(n):
            f = decode(code)
            if len(records_of_tree(f)) == n:
                yield f
    elif kind == "permutations":
        for perm in itertools.permutations(range(1, n + 1)):
            yield Endofunction((0, *perm))


STATISTICS = (
    "records",
    "girth",
    "connected",
    "non-root-records",
    "total-height",
    "catalysts",
    "doubly-covering",
    "distance-partition",
    "forest-records",
    "reflection-length",
    "increasing-components",
    "spanning-forests",
    "root-children-prefix",
)


def _tree_stat_table(n: int) -> dict[str, Counter | int]:
    """Aggregate tree statistics with one kernel pass."""
    hist: Counter = Counter()
    nonroot = 0
    height = 0
    if n <= 7:
        for block in endofunction_blocks(n):
            st = orbit_stats(block)
            trees = (st.components == 1) & (st.cyclic == 1)
            hist.update(st.records[trees].tolist())
            nonroot += int((st.records[trees] - 1).sum())
            height += int(st.tail_total[trees].sum())
    else:
        from ..records import total_height

        for t in _trees_from_codes(n):
            r = len(records_of_tree(t))
            hist[r] += 1
            nonroot += r - 1
            height += total_height(t)
    return {"records": hist, "non-root-records": nonroot, "total-height": height}


def oracle_count(statistic: str, n: int, cap: int | None = None, **params) -> int:
    """Count by full enumeration.

    ``params`` carries ``k`` (records, girth, forest-records, spanning-forests,
    root-children-prefix), ``ell`` (doubly-covering), ``lam`` (distance-partition:
    the full cycle type of the record-code map, its two trivial fixed points
    included, as in ``counting.distance_partition_count``) or ``m``
    (increasing-components).
    """
    if statistic not in STATISTICS:
        raise UnknownStatistic(f"unknown statistic {statistic!r}")
    if statistic in ("records", "non-root-records", "total-height"):
        _check_cap("rooted trees", n, cap)
        table = _tree_stat_table(n)
        if statistic == "records":
            return table["records"][params["k"]]
        return table[statistic]
    if statistic in ("girth", "connected"):
        _check_cap("endofunctions", n, cap)
        total = 0
        for block in endofunction_blocks(n):
            st = orbit_stats(block)
            mask = st.components == 1
            if statistic == "girth":
                mask &= st.cyclic == params["k"]
            total += int(mask.sum())
        return total
    if statistic == "catalysts":
        return sum(len(catalysts(t)) for t in enumerate_objects("rooted trees", n, cap))
    if statistic == "reflection-length":
        return sum(n - len(p.cycles) for p in enumerate_objects("permutations", n, cap))
    if statistic == "increasing-components":
        return sum(
            1 for f in enumerate_objects("increasing forests", n, cap) if len(f.roots) == params["m"]
        )
    forests = enumerate_objects("rooted forests", n, cap)
    if statistic == "doubly-covering":
        return sum(1 for f in forests if len(doubly_covering_pairs(f)) == params["ell"])
    if statistic == "distance-partition":
        delta = params["lam"].without(TRIVIAL_PAIR)
        return sum(1 for f in forests if distance_partition(f) == delta)
    if statistic == "forest-records":
        return sum(1 for f in forests if len(records_of_tree(f)) == params["k"])
    if statistic == "spanning-forests":
        return sum(1 for f in forests if len(f.roots) == params["k"])
    if statistic == "root-children-prefix":
        k = params["k"]
        return sum(1 for f in forests if f.roots == tuple(range(1, k + 1)))
    raise UnknownStatistic(statistic)  # pragma: no cover


def forest_stat_histograms(n: int, cap: int | None = None) -> dict[str, Counter]:
    """One pass over all forests collecting every forest histogram at once."""
    out = {
        "forest-records": Counter(),
        "doubly-covering": Counter(),
        "distance-partition": Counter(),
        "spanning-forests": Counter(),
    }
    for f in enumerate_objects("rooted forests", n, cap):
        out["forest-records"][len(records_of_tree(f))] += 1
        out["doubly-covering"][len(doubly_covering_pairs(f))] += 1
        out["distance-partition"][distance_partition(f)] += 1
        out["spanning-forests"][len(f.roots)] += 1
    return out
