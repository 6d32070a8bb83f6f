from __future__ import annotations

import numpy as np
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from levelcomplex import linalg

matrices = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def sparse(rows):
    return [{k: v for k, v in enumerate(r) if v} for r in rows]


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_q_matches_sympy(rows):
    assert linalg.rank_q(sparse(rows)) == sympy.Matrix(rows).rank()


@settings(max_examples=150, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5, 7]))
def test_rank_mod_p_matches_dense(rows, p):
    dense = np.array(rows, dtype=np.int64) % p
    assert linalg.rank_mod_p(sparse(rows), p) == linalg.dense_rank_mod_p(dense.copy(), p)
    # never above the rational rank
    assert linalg.rank_mod_p(sparse(rows), p) <= sympy.Matrix(rows).rank()


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_nullspace_is_kernel(rows):
    ncols = len(rows[0])
    basis = linalg.nullspace(rows, ncols, None)
    assert len(basis) == ncols - sympy.Matrix(rows).rank()
    for vec in basis:
        assert all(sum(a * x for a, x in zip(r, vec)) == 0 for r in rows)


def test_mod_p_sees_torsion():
    # boundary-like matrix with a factor 2 in its Smith form
    rows = [[1, 1], [1, -1]]
    assert linalg.rank(sparse(rows), None) == 2
    assert linalg.rank(sparse(rows), 2) == 1


def test_large_prime():
    assert linalg.is_prime(linalg.LARGE_PRIME)
    assert not linalg.is_prime(1) and linalg.is_prime(2) and not linalg.is_prime(91)
