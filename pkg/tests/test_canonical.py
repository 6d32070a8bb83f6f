from __future__ import annotations

import itertools
from math import comb

import pytest

from levelcomplex import canonical as canon
from levelcomplex.complexes import SimplicialComplex, bits, boundary_faces, delta, f_vector
from levelcomplex.homology import FieldSpec
from levelcomplex.orders import MatrixShape, MonomialOrder


def test_c_set_examples():
    assert sorted(canon.c_set(MatrixShape(3, 4))) == [((1, 4),), ((2, 4),), ((3, 4),)]
    assert ((2, 6), (2, 7), (4, 8), (5, 9)) in canon.c_set(MatrixShape(5, 9))
    assert sorted(canon.c_set(MatrixShape(4, 5))) == [((i, 5),) for i in range(1, 5)]
    assert canon.c_set(MatrixShape(3, 3)) == [()]
    for m, n in [(2, 5), (3, 6), (4, 7)]:
        assert len(canon.c_set(MatrixShape(m, n))) == comb(n - 1, m - 1)


def test_d_sigma_examples():
    c = delta(MatrixShape(3, 4))
    assert all(canon.d_sigma(c, f) == 1 for f in c.facets)
    assert canon.d_sigma(c, c.mask([(1, 2)])) == 0
    assert canon.d_sigma(c, c.mask([(3, 4)])) == 1
    with pytest.raises(ValueError):
        canon.d_sigma(c, c.mask([(1, 2), (2, 1)]))


@pytest.mark.parametrize("mn", [(2, 3), (2, 4), (3, 4), (3, 5), (4, 5)])
def test_generators_are_c(mn):
    shape = MatrixShape(*mn)
    c = delta(shape)
    gens = canon.minimal_canonical_generators(c)
    assert sorted(tuple(c.cells(g)) for g in gens) == sorted(canon.c_set(shape))


@pytest.mark.parametrize("mn", [(2, 2), (3, 3)])
def test_square_case_generator_is_empty_face(mn):
    assert canon.minimal_canonical_generators(delta(MatrixShape(*mn))) == [0]


def test_gprime_equals_complement_of_boundary_star():
    shape = MatrixShape(3, 5)
    c = delta(shape)
    bd = boundary_faces(c, shape)
    gprime = set(canon.relative_top_dims(c))
    off_boundary = {f for f in c.faces if not any(f & b == f for b in bd)}
    assert gprime == off_boundary


def test_monotone_shortcut_matches_full_sweep():
    c = delta(MatrixShape(3, 5))
    assert canon.relative_top_dims(c, monotone=True) == canon.relative_top_dims(c, monotone=False)


def test_graded_dimensions_3x4():
    c = delta(MatrixShape(3, 4))
    gp = canon.gprime_by_size(c)
    assert gp == [0, 3, 12, 10]
    for rule in (canon.COMPOSITIONS, canon.PAPER_POWERS):
        assert [canon.graded_dimension(gp, i, rule) for i in (1, 2, 3)] == [3, 15, 37]
    assert canon.graded_dimension(gp, 4, canon.PAPER_POWERS) == 81
    assert canon.graded_dimension(gp, 4, canon.COMPOSITIONS) == 69
    assert canon.support_exact_count(c, 4) == 69
    assert canon.hs_duality(canon.hs_from_f_vector(f_vector(c)), 3, 4)[4] == 69
    with pytest.raises(ValueError):
        canon.graded_dimension(gp, 2, "other")


@pytest.mark.parametrize("mn", [(2, 3), (3, 3), (3, 4), (3, 5), (4, 5)])
def test_compositions_agree_with_duality(mn):
    shape = MatrixShape(*mn)
    c = delta(shape)
    gp = canon.gprime_by_size(c)
    dual = canon.hs_duality(canon.hs_from_f_vector(f_vector(c)), c.dim + 1, 2 * shape.n)
    assert all(canon.graded_dimension(gp, i) == dual[i] for i in range(2 * shape.n + 1))


def test_hilbert_series():
    c = delta(MatrixShape(3, 4))
    hs = canon.hs_from_f_vector(f_vector(c))
    assert hs.numerator == [1, 6, 3] and hs.denominator_power == 3
    # degree 2: nine squares and eighteen edge products
    assert hs.coefficients(2) == [1, 9, 27]
    trivial = canon.hs_from_f_vector([1])
    assert trivial.numerator == [1] and trivial.denominator_power == 0
    assert trivial.coefficients(3) == [1, 0, 0, 0]


def test_closed_formula_3x4():
    shape = MatrixShape(3, 4)
    assert [canon.gprime_closed_formula(shape, i) for i in (1, 2, 3)] == [3, 12, 10]


@pytest.mark.parametrize("mn", [(2, 3), (2, 4), (3, 4), (3, 5), (4, 5), (4, 6)])
def test_closed_formula_against_enumeration(mn):
    shape = MatrixShape(*mn)
    gp = canon.gprime_by_size(delta(shape))
    assert [canon.gprime_closed_formula(shape, i) for i in range(len(gp))] == gp


def test_generator_counts_on_non_level_ball():
    # a path of three edges: interior vertices carry generators in degree 1,
    # the middle edge is the only other nonzero piece and adds nothing
    c = SimplicialComplex.from_faces([0, 1, 2, 3], [[0, 1], [1, 2], [2, 3]])
    counts = canon.generator_counts(c)
    assert counts == {c.mask([1]): 1, c.mask([2]): 1}


def test_generator_counts_sphere():
    # boundary of a tetrahedron: Gorenstein, one generator in degree 0
    sphere = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
    c = SimplicialComplex.from_faces(list(range(4)), sphere)
    assert canon.generator_counts(c) == {0: 1}


@pytest.mark.parametrize(
    "mn,level,type_,degree",
    [((2, 3), True, 2, 1), ((2, 4), True, 3, 2), ((3, 4), True, 3, 1), ((3, 5), True, 6, 2), ((4, 5), True, 4, 1)],
)
def test_level_report_rows(mn, level, type_, degree):
    shape = MatrixShape(*mn)
    rep = canon.level_report(shape, MonomialOrder.paper_rows(shape), max_degree=4)
    assert rep.is_level is level and rep.cm_type == type_
    assert set(rep.generator_degrees) == {degree}
    assert rep.a_invariant == -(shape.n - shape.m)
    assert rep.a_invariant_ambient == -shape.n
    assert not rep.findings


@pytest.mark.parametrize("mn", [(2, 2), (3, 3)])
def test_gorenstein_square(mn):
    shape = MatrixShape(*mn)
    rep = canon.level_report(shape, MonomialOrder.paper_rows(shape))
    assert rep.is_gorenstein and rep.cm_type == 1 and rep.is_level


def test_paper_rule_discrepancy_is_noted():
    shape = MatrixShape(3, 4)
    rep = canon.level_report(shape, MonomialOrder.paper_rows(shape), max_degree=4)
    assert rep.omega_dims_paper_rule[4] == 81 and rep.omega_dims[4] == 69 == rep.omega_dims_duality[4]
    assert any("81" in note and "69" in note for note in rep.notes)


@pytest.mark.parametrize("mn", [(3, 4), (4, 5)])
def test_natural_order_not_level(mn):
    shape = MatrixShape(*mn)
    rep = canon.level_report(shape, MonomialOrder.natural(shape), max_degree=3)
    assert rep.cohen_macaulay and not rep.is_level


def test_natural_4x5_type_matches_last_betti_column():
    shape = MatrixShape(4, 5)
    rep = canon.level_report(shape, MonomialOrder.natural(shape), max_degree=2)
    # last column of the S/J table is 2, 9, 4 in internal degrees 13, 14, 15 of 20 variables;
    # the reduced complex drops two cone points
    assert rep.cm_type == 15
    assert sorted(rep.generator_degrees) == [3] * 4 + [4] * 9 + [5] * 2


def test_not_cohen_macaulay_flagged():
    # two triangles sharing a vertex: pure, connected, not CM
    c = SimplicialComplex.from_faces(list(range(5)), [[0, 1, 2], [0, 3, 4]])
    assert not canon.is_cohen_macaulay(c)
    assert canon.reisner_violations(c) == [(c.mask([0]), 0)]


@pytest.mark.parametrize("p", [None, 2, 3])
def test_reisner_on_path_complexes(p):
    for m in range(2, 5):
        for n in range(m, 5):
            assert canon.is_cohen_macaulay(delta(MatrixShape(m, n)), FieldSpec(p))


def test_link_relative_identity_all_faces_3x4():
    c = delta(MatrixShape(3, 4))
    for f in c.faces:
        assert all(a == b for _, a, b in canon.link_relative_dims(c, f))


def test_monotonicity_exhaustive_3x5():
    c = delta(MatrixShape(3, 5))
    d = {f: canon.d_sigma(c, f) for f in c.faces}
    for f in c.faces:
        for v in bits(f):
            assert d[f & ~(1 << v)] <= d[f]


def test_support_exact_count_small():
    c = delta(MatrixShape(2, 3))
    dims = canon.relative_top_dims(c)
    nv = len(c.vertices)
    for i in range(4):
        want = 0
        for u in itertools.product(range(i + 1), repeat=nv):
            if sum(u) == i:
                supp = sum(1 << k for k, e in enumerate(u) if e)
                want += dims.get(supp, 0)
        assert canon.support_exact_count(c, i) == want
