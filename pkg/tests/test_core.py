from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from treerec.core import (
    Catalyst,
    Endofunction,
    IntPartition,
    RootedForest,
    attach_virtual_root,
    detach_virtual_root,
    endofunction_from_json,
    forest_from_json,
    functional_components,
    girth,
    orbit,
    partitions,
    tree_from_json,
    validate_tree,
)
from treerec.errors import (
    CycleDetected,
    InvalidLabel,
    InvalidPartition,
    MultipleRoots,
    NotACatalyst,
    NotConnected,
    ParseError,
)
from treerec.oracle import enumerate_objects


def endofunctions(max_n: int = 8):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.integers(1, n), min_size=n, max_size=n).map(Endofunction.from_images)
    )


class TestRootedTree:
    def test_single_vertex(self):
        t = validate_tree({1: 1})
        assert t.root == 1 and t.n == 1

    def test_path(self):
        t = validate_tree({1: 1, 2: 1, 3: 2})
        assert t.root == 1
        assert t.path_to_root(3) == [3, 2, 1]
        assert t.children[1] == (2,)

    def test_two_cycle_is_rejected(self):
        with pytest.raises(CycleDetected):
            validate_tree({1: 2, 2: 1})

    def test_cycle_with_tail(self):
        with pytest.raises(CycleDetected):
            validate_tree([2, 3, 2])

    def test_multiple_roots(self):
        with pytest.raises(MultipleRoots):
            validate_tree([1, 2])

    def test_bad_label(self):
        with pytest.raises(InvalidLabel):
            validate_tree([1, 5])

    def test_json_round_trip(self):
        t = validate_tree([3, 3, 3, 1])
        assert tree_from_json(json.dumps(t.to_json())) == t


class TestForest:
    def test_attach_detach(self):
        f = RootedForest.from_parents([0, 0])
        assert attach_virtual_root(f).root_children() == (1, 2)
        g = RootedForest.from_parents([0, 1])
        assert attach_virtual_root(g).root_children() == (1,)

    def test_attach_detach_identity_on_all_forests(self):
        for f in enumerate_objects("rooted forests", 3):
            assert detach_virtual_root(attach_virtual_root(f)) == f

    def test_components(self):
        f = RootedForest.from_parents([0, 1, 0, 3])
        assert f.roots == (1, 3)
        assert f.components() == [(1, [1, 2]), (3, [3, 4])]

    def test_json(self):
        f = RootedForest.from_parents([0, 1, 0])
        assert forest_from_json(f.to_json()) == f

    def test_json_errors_report_position(self):
        with pytest.raises(ParseError, match="line 1 column"):
            forest_from_json('{"n": 2, "parents": [0, }')
        with pytest.raises(ParseError):
            forest_from_json('{"n": 3, "parents": [0, 1]}')


class TestEndofunction:
    def test_identity_components(self):
        comps = functional_components(Endofunction.from_images([1, 2, 3]))
        assert len(comps) == 3 and all(c.girth == 1 for c in comps)

    def test_three_cycle(self):
        f = Endofunction.from_dict({1: 3, 3: 2, 2: 1})
        assert f.cycles == [(1, 3, 2)]
        assert girth(f) == 3

    def test_two_components(self):
        f = Endofunction.from_dict({1: 2, 2: 2, 3: 4, 4: 3})
        assert sorted(c.girth for c in functional_components(f)) == [1, 2]

    def test_orbits(self):
        assert orbit(Endofunction.from_images([1, 2]), 1).as_set() == {1}
        o = orbit(Endofunction.from_images([2, 2]), 1)
        assert o.tail == (1,) and o.cycle == (2,)
        o = orbit(Endofunction.from_dict({1: 3, 3: 2, 2: 1}), 1)
        assert o.tail == () and o.cycle == (1, 3, 2)

    def test_girth_disconnected(self):
        assert girth(Endofunction.from_images([1])) == 1
        with pytest.raises(NotConnected):
            girth(Endofunction.from_images([1, 2]))

    def test_json(self):
        f = Endofunction.from_images([2, 1, 1])
        assert endofunction_from_json(f.to_json()) == f

    @given(endofunctions())
    def test_components_partition_the_domain(self, f):
        comps = functional_components(f)
        seen = set()
        for c in comps:
            assert not seen & c.vertices
            seen |= c.vertices
            for x in c.vertices:
                assert f(x) in c.vertices
        assert seen == set(range(1, f.n + 1))

    @given(endofunctions())
    def test_cycle_maps_are_inverse(self, f):
        for x, y in f.cycle_successor.items():
            assert f(x) == y
            assert f.cycle_predecessor[y] == x


class TestPartitions:
    def test_basic(self):
        lam = IntPartition.from_parts([3, 1, 1])
        assert lam.parts == (3, 1, 1)
        assert lam.weight == 5 and lam.length == 3
        assert lam.z == 3 * 2
        assert str(lam) == "(3,1,1)"
        assert lam.without(IntPartition.from_parts([1, 1])) == IntPartition.from_parts([3])

    def test_without_requires_containment(self):
        with pytest.raises(InvalidPartition):
            IntPartition.from_parts([2]).without(IntPartition.from_parts([1]))

    def test_partition_counts(self):
        assert [sum(1 for _ in partitions(q)) for q in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


class TestCatalyst:
    def test_check(self):
        t = validate_tree({1: 1, 2: 1, 3: 2})
        Catalyst(3, 1).check(t)
        with pytest.raises(NotACatalyst):
            Catalyst(1, 3).check(t)
        with pytest.raises(NotACatalyst):
            Catalyst(2, 2).check(t)
