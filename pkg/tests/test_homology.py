from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import sympy_reduced_homology
from levelcomplex.complexes import SimplicialComplex, delta
from levelcomplex.homology import (
    BettiTable,
    FieldSpec,
    GuardExceeded,
    brute_force_betti,
    hochster_betti_table,
    reduced_homology_dims,
    relative_homology_dim,
    relative_homology_dims,
    star_relative_top,
)
from levelcomplex.orders import MatrixShape

Q = FieldSpec(None)
GF2 = FieldSpec(2)

# six-vertex projective plane
RP2 = [
    [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
    [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
]

complexes = st.lists(st.sets(st.integers(0, 6), min_size=1, max_size=4), min_size=1, max_size=7)


def as_complex(facets):
    return SimplicialComplex.from_faces(list(range(7)), facets)


@settings(max_examples=80, deadline=None)
@given(complexes)
def test_reduced_homology_matches_sympy(facets):
    c = as_complex(facets)
    got = reduced_homology_dims(c, Q)
    want = sympy_reduced_homology([frozenset(f) for f in facets])
    assert got[: len(want)] == want and not any(got[len(want):])


def test_projective_plane_field_dependence():
    c = SimplicialComplex.from_faces(list(range(1, 7)), RP2)
    assert reduced_homology_dims(c, Q) == [0, 0, 0, 0]
    assert reduced_homology_dims(c, GF2) == [0, 0, 1, 1]
    assert reduced_homology_dims(c, FieldSpec(3)) == [0, 0, 0, 0]


def test_exact_fallback_for_spread_homology():
    # circle plus an isolated point: homology in two degrees
    c = SimplicialComplex.from_faces(list(range(4)), [[0, 1], [1, 2], [0, 2], [3]])
    assert reduced_homology_dims(c, Q) == [0, 1, 1]


def test_void_and_empty():
    void = SimplicialComplex([1, 2], [])
    assert reduced_homology_dims(void) == []
    empty = SimplicialComplex([1, 2], [0])
    assert reduced_homology_dims(empty) == [1]


@pytest.mark.parametrize("mn", [(2, 2), (2, 3), (2, 5), (3, 3), (3, 4), (3, 5), (4, 4), (4, 5)])
def test_homology_of_path_complex(mn):
    shape = MatrixShape(*mn)
    dims = reduced_homology_dims(delta(shape))
    if shape.m < shape.n:
        assert not any(dims)
    else:
        assert dims[-1] == 1 and not any(dims[:-1])


def test_relative_homology_against_link():
    c = delta(MatrixShape(3, 4))
    # H_i(c, c) vanishes; H_i(c, void) is reduced homology
    assert not any(relative_homology_dims(c, c))
    void = c.with_facets([])
    assert relative_homology_dims(c, void) == reduced_homology_dims(c)
    v = c.mask([(3, 4)])
    assert star_relative_top(c, v) == 1
    assert star_relative_top(c, c.mask([(1, 2)])) == 0
    with pytest.raises(ValueError):
        relative_homology_dim(SimplicialComplex(c.vertices, [1]), c, 0)


@settings(max_examples=40, deadline=None)
@given(complexes)
def test_hochster_matches_bruteforce(facets):
    c = as_complex(facets)
    assert hochster_betti_table(c, Q) == brute_force_betti(c, Q)
    assert hochster_betti_table(c, GF2) == brute_force_betti(c, GF2)


def test_hochster_projective_plane_characteristic():
    c = SimplicialComplex.from_faces(list(range(1, 7)), RP2)
    q, two = hochster_betti_table(c, Q), hochster_betti_table(c, GF2)
    assert q == brute_force_betti(c, Q)
    assert two == brute_force_betti(c, GF2)
    assert q != two


def test_betti_3x4_path_complex():
    t = hochster_betti_table(delta(MatrixShape(3, 4)))
    assert t.grid() == [[1, 0, 0, 0, 0, 0, 0], [0, 18, 52, 61, 30, 4, 0], [0, 0, 1, 6, 14, 12, 3]]
    assert t.pdim == 6 and t.reg == 2


def test_threads_do_not_change_result():
    c = delta(MatrixShape(3, 5))
    assert hochster_betti_table(c, threads=1) == hochster_betti_table(c, threads=4)


def test_guard():
    c = delta(MatrixShape(3, 4))
    with pytest.raises(GuardExceeded):
        hochster_betti_table(c, guard=5)
    assert hochster_betti_table(c, guard=5, force=True).pdim == 6


def test_betti_table_formats():
    t = BettiTable.from_grid([[1, 0, 0], [0, 3, 2]])
    assert t[1, 2] == 3 and t[2, 3] == 2 and t[0, 0] == 1
    assert t.to_csv().splitlines() == ["row,0,1,2", "0,1,0,0", "1,0,3,2"]
    assert BettiTable.from_grid(t.grid()) == t
    assert t.antidiagonal_sums() == {0: 1, 2: -3, 3: 2}
    assert t.top_degree(1) == 2 and t.top_degree(5) is None
    with pytest.raises(ValueError):
        BettiTable({(0, 0): -1})


def test_field_parse():
    assert FieldSpec.parse("Q") == Q
    assert FieldSpec.parse("7").p == 7
    for bad in ("8", "x", str(2**31 + 11)):
        with pytest.raises(ValueError):
            FieldSpec.parse(bad)
