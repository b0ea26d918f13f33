"""Acceptance gate: one ``criterion`` marker per item, summarized by conftest.

Run just this file with ``pytest tests/test_acceptance.py -v``; the terminal
summary prints one PASS/FAIL line per criterion.  All checks are exact.
"""

from __future__ import annotations

import time
from fractions import Fraction

import pytest

from treerec import counting, series
from treerec.cli import main
from treerec.codes import (
    all_codes,
    decode,
    in_lex_interval,
    interval_codes,
    is_rooted_at_prefix,
    phi_endofunction,
)
from treerec.core import IntPartition
from treerec.oeis import check_sequence, load_sequence
from treerec.oracle import bijection_audit, enumerate_objects, oracle_count
from treerec.oracle.kernels import endofunction_blocks, orbit_stats
from treerec.records import catalysts, distance_partition, records_of_tree

crit = pytest.mark.criterion


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# AC1 --------------------------------------------------------------------------


@crit("AC1")
def test_ac1_genesis_values_three_ways(capsys):
    start = time.perf_counter()
    code, out, _ = run(capsys, "count", "genesis", "2..5")
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines()[1:]]
    assert [int(v) for _, v in rows] == [1, 8, 78, 944]
    for n, expected in zip(range(2, 6), [1, 8, 78, 944]):
        height = oracle_count("total-height", n)
        assert height % n == 0 and height // n == expected
        assert oracle_count("non-root-records", n) == expected
        assert sum((k - 1) * counting.tree_record_number(n, k) for k in range(1, n + 1)) == expected
    assert time.perf_counter() - start < 10


# AC2 --------------------------------------------------------------------------


@crit("AC2")
def test_ac2_record_number_formula_matches_oracle():
    start = time.perf_counter()
    total = 0
    for n in range(1, 8):
        for k in range(1, n + 1):
            total += abs(counting.tree_record_number(n, k) - oracle_count("records", n, k=k))
    assert total == 0
    assert time.perf_counter() - start < 60


# AC3 --------------------------------------------------------------------------


@crit("AC3")
@pytest.mark.parametrize("n", range(1, 7))
def test_ac3_joyal_audit(n):
    report = bijection_audit("joyal", n)
    assert report.passed, report.failures
    assert report.instances == counting.connected_endofunction_count(n)
    assert report.codomain_size == counting.connected_endofunction_count(n)


# AC4 --------------------------------------------------------------------------


@crit("AC4")
@pytest.mark.parametrize("n", range(1, 6))
def test_ac4_girth_shift_audit(n):
    report = bijection_audit("girth_shift", n)
    assert report.passed, report.failures


@crit("AC4")
@pytest.mark.parametrize("n", range(1, 6))
def test_ac4_girth_record_table_depends_on_sum(n):
    """|E_{m,k}| (girth m, at least k records) is constant along m + k."""
    table: dict[tuple[int, int], int] = {}
    for block in endofunction_blocks(n):
        st = orbit_stats(block)
        conn = st.components == 1
        for m in range(1, n + 1):
            for k in range(1, n + 2):
                mask = conn & (st.cyclic == m) & (st.records >= k)
                table[m, k] = table.get((m, k), 0) + int(mask.sum())
    for s in range(2, 2 * n + 2):
        values = {table[m, s - m] for m in range(1, n + 1) if 1 <= s - m <= n + 1}
        assert len(values) <= 1, (s, values)


# AC5 --------------------------------------------------------------------------


@crit("AC5")
@pytest.mark.parametrize("n", range(1, 7))
def test_ac5_catalyst_audit(n):
    report = bijection_audit("catalyst", n)
    assert report.passed, report.failures


@crit("AC5")
@pytest.mark.parametrize("n", range(1, 7))
def test_ac5_catalysts_equal_n_times_marked_trees(n):
    trees = list(enumerate_objects("rooted trees", n))
    total_catalysts = sum(len(catalysts(t)) for t in trees)
    marked = sum(len(records_of_tree(t)) - 1 for t in trees)
    assert total_catalysts == n * marked


# AC6 --------------------------------------------------------------------------


@crit("AC6")
def test_ac6_thirteen_vertex_instance_byte_exact(capsys, golden):
    code, out, _ = run(capsys, "bij", "riordan-sloane", "apply", f"@{golden / 'riordan_sloane_13_input.json'}")
    assert code == 0
    assert out == (golden / "riordan_sloane_13_output.json").read_text()
    code, out, _ = run(capsys, "bij", "riordan-sloane", "invert", f"@{golden / 'riordan_sloane_13_output.json'}")
    assert code == 0
    assert out == (golden / "riordan_sloane_13_input.json").read_text()


@crit("AC6")
@pytest.mark.parametrize("n", range(1, 6))
def test_ac6_riordan_sloane_audit(n):
    report = bijection_audit("riordan_sloane", n)
    assert report.passed, report.failures


# AC7 --------------------------------------------------------------------------


@crit("AC7")
@pytest.mark.parametrize("n", range(1, 7))
def test_ac7_weight_sn_equals_forests_with_n_minus_1_records(n):
    expected = counting.weight_sn(n)
    assert expected == oracle_count("reflection-length", n)
    if n >= 2:
        assert expected == oracle_count("forest-records", n, k=n - 1)
        assert expected == counting.forest_record_number(n, n - 1)
    assert bijection_audit("sn_weight", n).passed


@crit("AC7")
def test_ac7_weight_of_s3_is_seven():
    assert counting.weight_sn(3) == 7


# AC8 --------------------------------------------------------------------------


@crit("AC8")
@pytest.mark.parametrize("n", range(1, 6))
def test_ac8_code_round_trip(n):
    report = bijection_audit("codes", n)
    assert report.passed, report.failures
    assert report.instances == (n + 1) ** (n - 1)


@crit("AC8")
def test_ac8_nine_vertex_code():
    from treerec.codes import parse_code

    forest = decode(parse_code("2,3,1,7,3,0,4,7"))
    assert set(records_of_tree(forest)) == {3, 5, 6, 7, 8, 9}
    phi = phi_endofunction(forest)
    assert set(phi.nontrivial_cycles) == {(3, 1, 2), (7, 4)}
    assert distance_partition(forest) == IntPartition.from_parts([3, 2])


# AC9 --------------------------------------------------------------------------


@crit("AC9")
@pytest.mark.parametrize("n", range(1, 7))
def test_ac9_lexicographic_interval(n):
    """Literal reading: the lexicographic interval between the boundary codes.

    Expected to fail for n >= 4: once n - k >= 2 the interval also contains
    codes whose forests have additional roots (e.g. 1,2,0 for n=4, k=1).
    """
    codes = list(all_codes(n))
    forests = [decode(c) for c in codes]
    for k in range(1, n + 1):
        inside = [in_lex_interval(c, k) for c in codes]
        rooted = [f.roots == tuple(range(1, k + 1)) for f in forests]
        assert sum(inside) == counting.forests_with_fixed_roots(n, k), f"k={k}"
        assert inside == rooted, f"k={k}"


@crit("AC9")
@pytest.mark.parametrize("n", range(1, 7))
def test_ac9_entrywise_bounds(n):
    codes = list(all_codes(n))
    forests = [decode(c) for c in codes]
    for k in range(1, n + 1):
        expected = counting.forests_with_fixed_roots(n, k)
        inside = [is_rooted_at_prefix(c, k) for c in codes]
        assert sum(inside) == expected
        assert inside == [f.roots == tuple(range(1, k + 1)) for f in forests]
        walked = list(interval_codes(n, k))
        assert len(walked) == expected
        assert walked == [c for c, flag in zip(codes, inside) if flag]


# AC10 -------------------------------------------------------------------------


@crit("AC10")
@pytest.mark.parametrize("n", range(1, 7))
def test_ac10_doubly_covering_counts(n):
    for ell in range(0, n):
        assert counting.doubly_cover_count(n, ell) == oracle_count("doubly-covering", n, ell=ell)
    assert counting.doubly_cover_count(n, 0) == 2 * Fraction(n + 1) ** (n - 2)


@crit("AC10")
@pytest.mark.parametrize("n", range(1, 6))
def test_ac10_distance_partition_counts(n):
    for lam in counting.cycle_types_with_trivial_pair(n):
        assert counting.distance_partition_count(n, lam) == oracle_count("distance-partition", n, lam=lam)


# AC11 -------------------------------------------------------------------------

ORDER = 20


@crit("AC11")
@pytest.mark.parametrize("k", range(1, 6))
def test_ac11_record_series(k):
    t = series.cayley_T(ORDER)
    ge = series.R_ge_k(ORDER, k)
    assert ge == t**k / k
    rk = series.R_k_series(ORDER, k)
    assert rk == t**k / k - t ** (k + 1) / (k + 1)
    assert rk == series.R_k_integral(ORDER, k)
    for n in range(k, ORDER + 1):
        assert ge.count(n) == sum(counting.tree_record_number(n, j) for j in range(k, n + 1))
    for n in range(1, 13):
        expected = counting.tree_record_number(n, k) if k <= n else 0
        assert rk.count(n) == expected


@crit("AC11")
@pytest.mark.parametrize("k", range(1, 6))
def test_ac11_record_derivative(k):
    prime = series.R_k_prime(ORDER, k)
    assert prime == series.R_k_series(ORDER + 1, k).derivative()
    assert prime == (series.cayley_T(ORDER + 1) ** k).divide_by_z()
    if k >= 2:
        assert prime == (series.cayley_T(ORDER) * series.R_k_prime(ORDER, k - 1)).truncate(ORDER)


@crit("AC11")
def test_ac11_endofunction_series():
    f = series.forest_series(ORDER, ORDER)
    c = series.connected_endo_series(ORDER, ORDER)
    assert c.exp() == f
    f1 = f.at_t_equals_one()
    assert [f1.count(n) for n in range(1, ORDER + 1)] == [n**n for n in range(1, ORDER + 1)]
    for n in range(1, ORDER + 1):
        for k in range(1, n + 1):
            assert c.count(n, k) == counting.girth_count(n, k)
    w = series.height_series_W(ORDER)
    assert [w.count(n) for n in range(1, ORDER + 1)] == [
        n * counting.genesis(n) for n in range(1, ORDER + 1)
    ]


# AC12 -------------------------------------------------------------------------


@crit("AC12")
def test_ac12_identity_suite():
    start = time.perf_counter()
    results = counting.verify_identities(30)
    elapsed = time.perf_counter() - start
    assert all(r.passed for r in results), [r for r in results if not r.passed][:3]
    names = {r.identity for r in results}
    assert {"connected-double-count", "fixed-point-free", "log-concave"} <= names
    assert elapsed < 5


# AC13 -------------------------------------------------------------------------

OEIS_CASES = [
    ("A000435", "genesis", range(1, 13)),
    ("A001865", "connected", range(1, 13)),
    ("A259334", "tree-records", range(1, 11)),
    ("A201685", "girth", range(1, 11)),
    ("A067318", "weight-sn", range(1, 13)),
    ("A007334", "doubly-cover-0", range(1, 13)),
]


@crit("AC13")
@pytest.mark.parametrize("oeis_id,generator,ns", OEIS_CASES, ids=[c[0] for c in OEIS_CASES])
def test_ac13_oeis_snapshots(oeis_id, generator, ns):
    report = check_sequence(load_sequence(oeis_id), generator, ns)
    assert report.compared >= 10
    assert report.mismatches == [] and report.missing == []


@crit("AC13")
def test_ac13_cli_exit_codes(capsys):
    code, out, _ = run(capsys, "oeis", "check", "A000435", "genesis", "2..12")
    assert code == 0 and "11 terms compared, ok" in out
    code, _, _ = run(capsys, "oeis", "check", "A007334", "doubly-cover-0", "--n", "2..12")
    assert code == 0

