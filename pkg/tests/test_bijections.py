from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from treerec.bijections import (
    VIRTUAL,
    MarkedForest,
    MarkedTree,
    PointedTree,
    VirtualTree,
    catalyst_forward,
    catalyst_inverse,
    devirtualize,
    endofunction_to_marked_forest,
    girth_shift_forward,
    girth_shift_inverse,
    joyal_forward,
    joyal_inverse,
    marked_forest_to_endofunction,
    riordan_sloane_forward,
    riordan_sloane_inverse,
    sn_weight_forward,
    sn_weight_inverse,
    to_girth,
    virtual_node_join,
    virtual_node_split,
    virtualize,
)
from treerec.core import Catalyst, Endofunction, RootedForest, girth, validate_tree
from treerec.errors import (
    GirthTooSmall,
    LabelOverlap,
    NotACatalyst,
    NotAMark,
    NotIncreasing,
    RNotNonRootRecord,
    TooFewRecords,
    VIsRoot,
    WrongRecordCount,
)
from treerec.oracle import enumerate_objects
from treerec.records import endofunction_records, height, records_of_tree


def E(mapping: dict[int, int]) -> Endofunction:
    return Endofunction.from_dict(mapping)


def rooted_trees(max_n: int = 8):
    """An increasing tree shape relabeled by a random permutation."""

    def build(n: int):
        shape = st.tuples(*[st.integers(1, v - 1) for v in range(2, n + 1)])
        return st.tuples(shape, st.permutations(range(1, n + 1))).map(_relabel)

    return st.integers(1, max_n).flatmap(build)


def _relabel(args):
    shape, perm = args
    parents = {perm[0]: perm[0]}
    for v, p in enumerate(shape, 2):
        parents[perm[v - 1]] = perm[p - 1]
    return validate_tree(parents)


def connected_endofunctions(max_n: int = 8):
    return rooted_trees(max_n).flatmap(
        lambda t: st.sampled_from(records_of_tree(t)).map(lambda r: joyal_forward(MarkedTree(t, r)))
    )


class TestJoyal:
    def test_single_vertex(self):
        f = joyal_forward(MarkedTree(validate_tree({1: 1}), 1))
        assert f == E({1: 1}) and girth(f) == 1

    def test_path(self):
        t = validate_tree({1: 1, 2: 1, 3: 2})
        f = joyal_forward(MarkedTree(t, 3))
        assert f == E({1: 3, 2: 1, 3: 2})
        assert f.cycles == [(1, 3, 2)]
        assert joyal_inverse(f) == MarkedTree(t, 3)

    def test_not_a_mark(self):
        with pytest.raises(NotAMark):
            MarkedTree(validate_tree({1: 2, 2: 2}), 1)

    @given(connected_endofunctions())
    def test_round_trip(self, f):
        mt = joyal_inverse(f)
        assert joyal_forward(mt) == f
        assert girth(f) == height(mt.tree, mt.mark) + 1


class TestGirthShift:
    def test_examples(self):
        assert girth_shift_forward(E({1: 1, 2: 1}), 1) == E({1: 2, 2: 1})
        assert girth_shift_forward(E({1: 1, 2: 1, 3: 1}), 2) == E({1: 2, 2: 1, 3: 1})
        assert girth_shift_inverse(E({1: 2, 2: 1}), 1) == E({1: 1, 2: 1})

    def test_errors(self):
        with pytest.raises(TooFewRecords):
            girth_shift_forward(E({1: 2, 2: 2}), 1)
        with pytest.raises(GirthTooSmall):
            girth_shift_inverse(E({1: 1, 2: 1}), 1)

    def test_to_girth(self):
        g = to_girth(E({1: 1, 2: 1, 3: 1}), 3)
        assert girth(g) == 3
        assert len(endofunction_records(g)) >= 1
        assert to_girth(g, 1) == E({1: 1, 2: 1, 3: 1})

    @given(connected_endofunctions(7), st.integers(1, 3))
    def test_round_trip_keeps_top_records(self, f, k):
        recs = endofunction_records(f)
        if len(recs) < k + 1:
            return
        g = girth_shift_forward(f, k)
        assert girth(g) == girth(f) + 1
        assert endofunction_records(g)[-k:] == recs[-k:]
        assert girth_shift_inverse(g, k) == f


class TestCatalyst:
    def test_order_two(self):
        t1 = validate_tree({1: 1, 2: 1})
        outs = {catalyst_forward(v, t1, 2) for v in (1, 2)}
        assert outs == {
            (t1, Catalyst(2, 1)),
            (validate_tree({1: 2, 2: 2}), Catalyst(1, 2)),
        }
        for v in (1, 2):
            assert catalyst_inverse(*catalyst_forward(v, t1, 2)) == (v, t1, 2)

    def test_errors(self):
        t = validate_tree({1: 1, 2: 1, 3: 2})
        with pytest.raises(RNotNonRootRecord):
            catalyst_forward(1, t, 1)
        with pytest.raises(NotACatalyst):
            catalyst_inverse(t, Catalyst(1, 3))

    def test_total_catalysts_order_three(self):
        from treerec.records import catalysts

        assert sum(len(catalysts(t)) for t in enumerate_objects("rooted trees", 3)) == 24


class TestRiordanSloane:
    def test_singletons(self):
        tree, c = riordan_sloane_forward(PointedTree({1: 1}, 1), PointedTree({2: 2}, 2))
        assert tree == validate_tree({1: 1, 2: 1})
        assert c == Catalyst(2, 1)
        assert riordan_sloane_inverse(tree, c) == (PointedTree({1: 1}, 1), PointedTree({2: 2}, 2))

    def test_thirteen_vertices(self):
        first = PointedTree({5: 5, 3: 5, 2: 5, 11: 3, 7: 11, 1: 11, 10: 7}, 3)
        second = PointedTree({8: 8, 12: 8, 9: 8, 6: 12, 13: 12, 4: 12}, 13)
        tree, c = riordan_sloane_forward(first, second)
        assert tree.root == 3 and c == Catalyst(13, 5)
        assert tree.parents[5] == 3 and tree.parents[8] == 5
        assert riordan_sloane_inverse(tree, c) == (first, second)

    def test_overlap(self):
        with pytest.raises(LabelOverlap):
            riordan_sloane_forward(PointedTree({1: 1}, 1), PointedTree({1: 1}, 1))


class TestSnWeight:
    def test_order_two(self):
        f = RootedForest.from_parents([0, 1])
        out = sn_weight_forward(2, f)
        assert len(records_of_tree(out)) == 1
        assert sn_weight_inverse(out) == (2, f)

    def test_rotation_pattern(self):
        # 1 -> 4 -> {6, 8}: v = 8 gives the chain (1, 6, 8, 4)
        f = RootedForest.from_parents([0, 1, 1, 1, 1, 4, 1, 4])
        out = sn_weight_forward(8, f)
        assert (out.parents[6], out.parents[8], out.parents[4]) == (1, 6, 8)
        assert set(range(1, 9)) - set(records_of_tree(out)) == {4}
        assert sn_weight_inverse(out) == (8, f)

    def test_errors(self):
        with pytest.raises(VIsRoot):
            sn_weight_forward(1, RootedForest.from_parents([0, 1]))
        with pytest.raises(NotIncreasing):
            sn_weight_forward(1, RootedForest.from_parents([2, 0]))
        with pytest.raises(WrongRecordCount):
            sn_weight_inverse(RootedForest.from_parents([0, 1]))


class TestMarkedForest:
    def test_count_order_three(self):
        n = 3
        total = 0
        for f in enumerate_objects("rooted forests", n):
            recs = set(records_of_tree(f))
            per_root = [sum(1 for r in recs if f.component_root(r) == root) for root in f.roots]
            count = 1
            for c in per_root:
                count *= c
            total += count
        assert total == 27

    def test_round_trip_all_endofunctions(self):
        for f in enumerate_objects("endofunctions", 4):
            mf = endofunction_to_marked_forest(f)
            assert marked_forest_to_endofunction(mf) == f

    def test_bad_marks(self):
        with pytest.raises(NotAMark):
            MarkedForest(RootedForest.from_parents([0, 0]), (1,))


class TestVirtualSplit:
    def test_root_with_virtual_child(self):
        s_bar, s_prime = virtual_node_split(VirtualTree({1: 1, VIRTUAL: 1}))
        assert s_bar == VirtualTree({VIRTUAL: VIRTUAL})
        assert s_prime == {1: 1}
        assert virtual_node_join(s_bar, s_prime) == VirtualTree({1: 1, VIRTUAL: 1})

    def test_lone_virtual_node(self):
        with pytest.raises(TooFewRecords):
            virtual_node_split(VirtualTree({VIRTUAL: VIRTUAL}))

    def test_subtree_moves_with_the_label(self):
        t = VirtualTree({1: 1, 2: 1, VIRTUAL: 2, 3: VIRTUAL})
        s_bar, s_prime = virtual_node_split(t)
        assert s_bar == VirtualTree({1: 1, VIRTUAL: 1})
        assert s_prime == {2: 2, 3: 2}
        assert virtual_node_join(s_bar, s_prime) == t

    def test_virtualize_round_trip(self):
        for t in enumerate_objects("rooted trees", 4):
            assert devirtualize(virtualize(t)) == t
