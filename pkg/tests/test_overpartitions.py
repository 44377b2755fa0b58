from fractions import Fraction

import pytest

from qrank.errors import UnsupportedCase
from qrank.overpartitions import (
    Overpartition,
    deviation_by_definition,
    deviation_by_root_average,
    deviation_pair_by_formula,
    enumerate_overpartitions,
    enumeration_rank_counts,
    p_bar,
    p_bar_series,
    pair_by_definition,
    rank_tables,
    single_deviation,
)
from qrank.series import Monomial, QSeries

F = Fraction


def test_enumeration_counts():
    assert len(enumerate_overpartitions(0)) == 1
    assert len(enumerate_overpartitions(2)) == 4  # 2, 2~, 1+1, 1~+1
    assert len(enumerate_overpartitions(4)) == 14
    for n in range(9):
        assert len(enumerate_overpartitions(n)) == p_bar(n)


def test_enumeration_no_duplicates():
    for n in range(8):
        ops = enumerate_overpartitions(n)
        assert len(set(ops)) == len(ops)
        for p in ops:
            assert p.weight == n
            seen = set()
            for v, ov in p.parts:
                if ov:
                    assert v not in seen
                    seen.add(v)


def test_rank_values():
    assert Overpartition(((3, False), (1, False))).rank() == 1
    assert Overpartition(((1, True), (1, False), (1, False), (1, False))).rank() == -3
    assert Overpartition(()).rank() == 0


def test_m2_rank_values():
    assert Overpartition(((3, False),)).m2_rank() == 1
    assert Overpartition(((3, True),)).m2_rank() == 1
    assert Overpartition(()).m2_rank() == 0


def test_pbar_series_matches_enumeration():
    s = p_bar_series(9)
    for n in range(9):
        assert s.coeff(n).as_fraction() == len(enumerate_overpartitions(n))


@pytest.mark.parametrize("d", [1, 2])
def test_tables_match_enumeration(d):
    t = rank_tables(d, 10)
    e = enumeration_rank_counts(d, 10)
    for n in range(11):
        for m in range(-n, n + 1):
            assert t.count(m, n) == e.get((m, n), 0), (d, m, n)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_table_invariants(d):
    t = rank_tables(d, 10)
    for n in range(11):
        assert t.column_sum(n) == p_bar(n)
        for m in range(-n, n + 1):
            assert t.count(m, n) == t.count(-m, n)


def test_residue_counts_partition_everything():
    t = rank_tables(1, 8)
    for n in range(9):
        for M in (2, 3, 5):
            assert sum(t.residue_count(a, M, n) for a in range(M)) == p_bar(n)


def test_deviations_sum_to_zero():
    for d, M in [(1, 2), (2, 3), (3, 4)]:
        total = QSeries.zero(10)
        for a in range(M):
            total = total + deviation_by_definition(d, a, M, 10)
        assert total.is_zero_to(10)


def test_deviation_reflection_symmetry():
    for d, M in [(1, 3), (2, 4), (3, 5)]:
        for a in range(M + 1):
            lhs = deviation_by_definition(d, a, M, 10)
            rhs = deviation_by_definition(d, M - a, M, 10)
            assert lhs.agrees_with(rhs, 10)


def test_pair_formula_small_instances():
    for (d, a, M) in [(1, 2, 2), (1, 2, 3), (1, 3, 3), (2, 1, 2), (2, 1, 3)]:
        lhs = pair_by_definition(d, a, M, 10)
        rhs = deviation_pair_by_formula(d, a, M, 10)
        assert lhs.agrees_with(rhs, 10), (d, a, M)


def test_pair_formula_out_of_range_residues():
    # a = 0 and a = 1 are reached through the reflection symmetry
    for (d, a, M) in [(1, 0, 3), (1, 1, 3), (3, 1, 2), (2, 2, 2)]:
        lhs = pair_by_definition(d, a, M, 8)
        rhs = deviation_pair_by_formula(d, a, M, 8)
        assert lhs.agrees_with(rhs, 8), (d, a, M)


def test_pair_formula_parameter_independence():
    Z = Monomial.zeta
    a = deviation_pair_by_formula(1, 2, 3, 8, zp=Z(1, 7), zpp=Z(2, 7), z0=Z(3, 7))
    b = deviation_pair_by_formula(1, 2, 3, 8, zp=Z(1, 11), zpp=Z(5, 11), z0=Z(2, 11))
    assert a == b


def test_pair_formula_rejects_bad_shape():
    with pytest.raises(UnsupportedCase):
        deviation_pair_by_formula(1, 1, 1, 8)


def test_single_deviation_routes():
    for (d, M) in [(1, 3), (1, 2), (2, 2)]:
        for a in range(M):
            lhs = deviation_by_definition(d, a, M, 8)
            rhs = single_deviation(d, a, M, 8)
            assert lhs.agrees_with(rhs, 8), (d, M, a)


def test_single_deviation_even_modulus_with_inner_sum():
    # M = 4 exercises the nonempty root-of-unity sum of the even-M route
    for d in (1, 2):
        for a in (0, 1):
            lhs = deviation_by_definition(d, a, 4, 8)
            rhs = single_deviation(d, a, 4, 8)
            assert lhs.agrees_with(rhs, 8), (d, a)


def test_single_deviation_central_symmetry():
    # for odd M the two central deviations coincide
    for d, M in [(1, 3), (2, 5)]:
        hi = single_deviation(d, (M + 1) // 2, M, 8)
        lo = single_deviation(d, (M - 1) // 2, M, 8)
        assert hi.agrees_with(lo, 8)


def test_root_average_matches_definition():
    for (d, a, M) in [(1, 0, 2), (2, 1, 3), (1, 2, 4)]:
        lhs = deviation_by_definition(d, a, M, 8)
        rhs = deviation_by_root_average(d, a, M, 8)
        assert lhs.agrees_with(rhs, 8)


def test_csv_export(tmp_path):
    t = rank_tables(1, 4)
    path = tmp_path / "tables.csv"
    with open(path, "w") as fh:
        t.write_csv(fh)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "d,m,n,count"
    assert "1,0,1,2" in lines  # both overpartitions of 1 have rank 0
