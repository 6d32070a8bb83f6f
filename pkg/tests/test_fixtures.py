from __future__ import annotations

import pytest

from levelcomplex.fixtures import (
    compare_with_fixture,
    fact_checks,
    get_fixture,
    load_fixtures,
    minors_fixture,
    parse_fixture,
)
from levelcomplex.homology import BettiTable
from levelcomplex.orders import MatrixShape, ShapeMismatchError

EXPECTED = {
    "S/I2 (4,5)", "S/I (4,5)", "S/J (4,5)", "S/in'(I2) (4,5)", "random A (4,5)", "random B (4,5)",
    "S/I2 (2,10)", "S/I2 (3,3)", "S/I2 (3,4)", "S/I2 (4,4)",
}


def test_all_fixtures_present():
    fx = load_fixtures()
    assert set(fx) == EXPECTED
    assert all(f.provenance for f in fx.values())


def test_spot_entries():
    assert get_fixture("S/J (4,5)").entries[12, 15] == 4
    assert get_fixture("S/I (4,5)").entries[3, 5] == 240
    assert get_fixture("S/I2 (2,10)").entries[9, 10] == 9
    assert get_fixture("s_i2_3x3").entries[4, 6] == 1
    with pytest.raises(KeyError):
        get_fixture("nope")


def test_priority_parsed():
    fx = get_fixture("random A (4,5)")
    assert fx.priority[0] == (3, 2) and fx.priority[-1] == (4, 4) and len(fx.priority) == 20


@pytest.mark.parametrize("name", ["S/I (4,5)", "S/J (4,5)", "random A (4,5)", "random B (4,5)"])
def test_published_initial_tables_satisfy_facts(name):
    fx = get_fixture(name)
    ref = minors_fixture(fx.shape)
    rep = fact_checks(fx.entries, ref.entries, (fx.shape.m - 1) * (fx.shape.n - 1))
    assert rep.ok, rep.to_dict()


def test_diagonal_table_breaks_antidiagonal_sum():
    # the printed beta_{5,7} makes degree 7 disagree with the minors table
    fx = get_fixture("S/in'(I2) (4,5)")
    rep = fact_checks(fx.entries, minors_fixture(fx.shape).entries, 12)
    assert rep.antidiagonal_failures == [(7, -1962, -1980)]


def test_minors_tables_are_symmetric_in_gorenstein_case():
    for name in ("S/I2 (3,3)", "S/I2 (4,4)"):
        t = get_fixture(name).entries
        p, r = t.pdim, t.reg
        assert all(t[i, j] == t[p - i, p + r - j] for i, j in t.entries)


def test_compare_self_and_shape_guard():
    fx = get_fixture("S/I (4,5)")
    cmp = compare_with_fixture(fx.entries, fx, MatrixShape(4, 5))
    assert cmp.ok and not cmp.diff
    with pytest.raises(ShapeMismatchError):
        compare_with_fixture(fx.entries, fx, MatrixShape(3, 4))


def test_diff_reports_entries():
    fx = get_fixture("S/I2 (3,4)")
    altered = BettiTable(dict(fx.entries.entries) | {(3, 4): 61})
    cmp = compare_with_fixture(altered, fx)
    assert cmp.diff == [(3, 4, 61, 60)]


def test_parse_roundtrip():
    text = "# note\nname: t\nshape: 2 3\nideal: I2\n0: 1 0\n1: 0 3 2\n"
    fx = parse_fixture(text)
    assert fx.entries.grid() == [[1, 0, 0], [0, 3, 2]] and fx.provenance == ["note"]
