from __future__ import annotations

import math

import pytest

from treerec import counting as c
from treerec.core import IntPartition
from treerec.errors import InvalidPartition, InvalidRange
from treerec.oracle import oracle_count


def test_tree_record_number():
    for n in range(1, 12):
        # a single record forces the root to be n: unrooted trees
        assert c.tree_record_number(n, 1) == (n ** (n - 2) if n > 1 else 1)
        assert c.tree_record_number(n, n) == math.factorial(n - 1)
        assert sum(c.tree_record_number(n, k) for k in range(1, n + 1)) == n ** (n - 1)
    assert c.tree_record_number(4, 2) == 24
    with pytest.raises(InvalidRange):
        c.tree_record_number(3, 4)
    with pytest.raises(InvalidRange):
        c.tree_record_number(3, 0)


def test_girth_count():
    assert [c.girth_count(3, k) for k in (1, 2, 3)] == [9, 6, 2]
    assert c.girth_count(4, 2) == 48
    for n in range(1, 9):
        assert c.girth_count(n, 1) == n ** (n - 1)
    for n in range(1, 7):
        for k in range(1, n + 1):
            assert c.girth_count(n, k) == oracle_count("girth", n, k=k)


def test_connected_and_genesis():
    assert [c.connected_endofunction_count(n) for n in range(1, 5)] == [1, 3, 17, 142]
    assert [c.genesis(n) for n in range(2, 6)] == [1, 8, 78, 944]
    assert c.genesis(1) == 0
    for n in range(1, 7):
        assert c.connected_endofunction_count(n) == oracle_count("connected", n)


def test_forest_counts():
    assert c.cayley_rooted_forest(3, 2) == 2
    assert c.cayley_rooted_forest(4, 1) == 16
    assert all(c.cayley_rooted_forest(n, n) == 1 for n in range(1, 8))
    assert c.spanning_forest_count(3, 2) == 6
    assert c.spanning_forest_count(4, 2) == 48
    for n in range(1, 6):
        for k in range(1, n + 1):
            assert c.spanning_forest_count(n, k) == oracle_count("spanning-forests", n, k=k)
            assert c.cayley_rooted_forest(n, k) == oracle_count("root-children-prefix", n, k=k)


def test_stirling_and_weight():
    assert c.stirling_first(3, 1) == 2
    assert c.stirling_first(4, 2) == 11
    assert c.stirling_first(0, 0) == 1
    assert [c.weight_sn(n) for n in (1, 3, 4)] == [0, 7, 46]
    for n in range(1, 7):
        for m in range(0, n + 1):
            assert c.stirling_first(n, m) == oracle_count("increasing-components", n, m=m)
    with pytest.raises(InvalidRange):
        c.stirling_first(2, 3)


def test_forest_record_number():
    assert c.forest_record_number(3, 3) == 6
    assert c.forest_record_number(3, 2) == 7
    assert c.forest_record_number(2, 1) == 1
    for n in range(1, 6):
        for k in range(1, n + 1):
            assert c.forest_record_number(n, k) == oracle_count("forest-records", n, k=k)


def test_doubly_cover_rows():
    assert c.doubly_cover_count(3, 0) == 8
    assert c.doubly_cover_count(3, 5) == 0
    for n in range(1, 9):
        assert sum(c.doubly_cover_count(n, ell) for ell in range(n)) == (n + 1) ** (n - 1)


def test_distance_partition_count():
    for n in range(2, 7):
        assert c.distance_partition_count(n, IntPartition.from_parts([1, 1])) == c.doubly_cover_count(n, 0)
        assert sum(c.distance_partition_count(n, lam) for lam in c.cycle_types_with_trivial_pair(n)) == (
            n + 1
        ) ** (n - 1)
    lam = IntPartition.from_parts([2, 1, 1])
    assert c.distance_partition_count(3, lam) == oracle_count("distance-partition", 3, lam=lam)
    with pytest.raises(InvalidPartition):
        c.distance_partition_count(3, IntPartition.from_parts([2, 1]))
    with pytest.raises(InvalidPartition):
        c.distance_partition_count(2, IntPartition.from_parts([1, 1, 1, 1]))


def test_tables():
    t = c.build_table("genesis", range(2, 6))
    assert t.values() == [1, 8, 78, 944]
    assert t.to_bfile() == "2 1\n3 8\n4 78\n5 944\n"
    assert t.to_tsv(["n"]).splitlines()[:2] == ["n\tvalue", "2\t1"]
    tri = c.build_table("tree-records", range(1, 4))
    assert tri.to_bfile() == "1 1\n2 1\n3 1\n4 3\n5 4\n6 2\n"
    assert c.build_table("stirling1", [2]).values() == [0, 1, 1]
    assert c.build_table("girth", range(2, 5), k=2).values() == [1, 6, 48]
    with pytest.raises(KeyError):
        c.build_table("nope", [1])


def test_identities_small():
    results = c.verify_identities(8)
    assert results and all(r.passed for r in results)
