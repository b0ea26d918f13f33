"""Batch kernels over arrays of maps.

A batch is an ``(rows, n + 1)`` integer array; row ``b`` is a map on
``{0..n}`` with ``maps[b, i]`` the image of ``i`` and column 0 fixed at 0.
That covers endofunctions on ``[n]`` (column 0 is inert) and planted
forests (column 0 is the virtual root) with one code path.

Two interchangeable backends compute the same statistics: numba-compiled
loops, and pure numpy pointer jumping.  Set ``TREEREC_BACKEND=numpy`` to
force the fallback; it is also used when numba is not importable.
"""

from __future__ import annotations

import os
from typing import Iterator, NamedTuple

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

DEFAULT_BLOCK = 1 << 18


class OrbitStats(NamedTuple):
    records: np.ndarray  # elements >= everything in their orbit (column 0 excluded)
    components: np.ndarray  # number of cycles among 1..n
    cyclic: np.ndarray  # number of elements of 1..n lying on a cycle
    tail_total: np.ndarray  # sum over i of steps needed to reach a cycle


def endofunction_block(n: int, start: int, stop: int) -> np.ndarray:
    """Rows ``start..stop-1`` of all maps ``[n] -> [n]`` in lexicographic order."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((stop - start, n + 1), dtype=np.int64)
    for i in range(n, 0, -1):
        out[:, i] = idx % n + 1
        idx //= n
    return out


def endofunction_blocks(n: int, block: int = DEFAULT_BLOCK) -> Iterator[np.ndarray]:
    total = n**n
    for start in range(0, total, block):
        yield endofunction_block(n, start, min(start + block, total))


def orbit_stats_numpy(maps: np.ndarray) -> OrbitStats:
    rows, cols = maps.shape
    n = cols - 1
    ident = np.broadcast_to(np.arange(cols), (rows, cols))
    cur = ident.copy()
    best = ident.copy()
    for _ in range(n):
        cur = np.take_along_axis(maps, cur, axis=1)
        np.maximum(best, cur, out=best)
    on_cycle = np.zeros((rows, cols), dtype=bool)
    np.put_along_axis(on_cycle, cur, True, axis=1)
    is_record = best == ident
    records = is_record[:, 1:].sum(axis=1)
    components = (is_record & on_cycle)[:, 1:].sum(axis=1)
    cyclic = on_cycle[:, 1:].sum(axis=1)
    tail = np.zeros(rows, dtype=np.int64)
    cur = ident.copy()
    for _ in range(n):
        tail += (~np.take_along_axis(on_cycle, cur, axis=1))[:, 1:].sum(axis=1)
        cur = np.take_along_axis(maps, cur, axis=1)
    return OrbitStats(records, components, cyclic, tail)


if HAVE_NUMBA:

    @njit(cache=True)
    def _orbit_stats_loops(maps):
        rows, cols = maps.shape
        n = cols - 1
        records = np.zeros(rows, dtype=np.int64)
        components = np.zeros(rows, dtype=np.int64)
        cyclic = np.zeros(rows, dtype=np.int64)
        tail = np.zeros(rows, dtype=np.int64)
        on_cycle = np.zeros(cols, dtype=np.bool_)
        for b in range(rows):
            f = maps[b]
            on_cycle[:] = False
            for i in range(cols):
                x = i
                for _ in range(n):
                    x = f[x]
                on_cycle[x] = True
            for i in range(1, cols):
                x = i
                best = i
                steps = 0
                entered = on_cycle[i]
                for _ in range(n):
                    if not entered:
                        steps += 1
                    x = f[x]
                    if x > best:
                        best = x
                    if on_cycle[x]:
                        entered = True
                tail[b] += steps
                if best == i:
                    records[b] += 1
                    if on_cycle[i]:
                        components[b] += 1
                if on_cycle[i]:
                    cyclic[b] += 1
        return records, components, cyclic, tail

    def orbit_stats_numba(maps: np.ndarray) -> OrbitStats:
        return OrbitStats(*_orbit_stats_loops(np.ascontiguousarray(maps, dtype=np.int64)))

else:  # pragma: no cover
    orbit_stats_numba = None


def backend() -> str:
    choice = os.environ.get("TREEREC_BACKEND", "").strip().lower()
    if choice == "numpy" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


def orbit_stats(maps: np.ndarray) -> OrbitStats:
    if backend() == "numba":
        return orbit_stats_numba(maps)
    return orbit_stats_numpy(maps)
