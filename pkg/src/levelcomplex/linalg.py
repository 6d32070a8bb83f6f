"""Exact rank and kernel computations over Q and GF(p).

Matrices come in as lists of sparse rows ``{col: int}`` (boundary matrices
are very sparse) or dense integer numpy arrays for the mod-p fast path.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np
import numba

# largest prime below 2**31; products of two residues fit in int64
LARGE_PRIME = 2147483647

SparseRow = dict[int, int]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _primitive(row: SparseRow) -> SparseRow:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {k: v // g for k, v in row.items()}


def rank_q(rows: list[SparseRow]) -> int:
    """Rank over Q by fraction-free sparse elimination.

    Rows are kept primitive (content divided out) so entries stay small.
    """
    pivots: dict[int, SparseRow] = {}
    rank = 0
    for row in rows:
        r = {k: v for k, v in row.items() if v}
        while r:
            col = min(r)
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = _primitive(r)
                rank += 1
                break
            a, b = piv[col], r[col]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * v for k, v in r.items()}
            for k, v in piv.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            r = _primitive(new) if new else new
    return rank


def rank_mod_p(rows: list[SparseRow], p: int) -> int:
    """Rank over GF(p), sparse rows."""
    pivots: dict[int, SparseRow] = {}
    rank = 0
    for row in rows:
        r = {k: v % p for k, v in row.items() if v % p}
        while r:
            col = min(r)
            piv = pivots.get(col)
            if piv is None:
                inv = pow(r[col], -1, p)
                pivots[col] = {k: v * inv % p for k, v in r.items()}
                rank += 1
                break
            f = r[col]
            for k, v in piv.items():
                nv = (r.get(k, 0) - f * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return rank


def rank(rows: list[SparseRow], p: int | None) -> int:
    """Rank over Q (``p is None``) or GF(p)."""
    return rank_q(rows) if p is None else rank_mod_p(rows, p)


@numba.njit(cache=True, nogil=True)
def dense_rank_mod_p(a: np.ndarray, p: int) -> int:
    """Rank of a dense int64 matrix over GF(p); ``a`` is overwritten."""
    nr, nc = a.shape
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = -1
        for i in range(r, nr):
            if a[i, c] % p != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(c, nc):
                t = a[r, k]
                a[r, k] = a[piv, k]
                a[piv, k] = t
        inv = 1
        base = a[r, c] % p
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for k in range(c, nc):
            a[r, k] = a[r, k] * inv % p
        for i in range(r + 1, nr):
            f = a[i, c] % p
            if f != 0:
                for k in range(c, nc):
                    a[i, k] = (a[i, k] - f * a[r, k]) % p
        r += 1
    return r


def nullspace(rows: list[list[int]], ncols: int, p: int | None) -> list[list]:
    """Basis of ``{x : A x = 0}`` for a small dense matrix ``A``.

    Entries are Fractions over Q or ints mod p.  Reduced row echelon form,
    one basis vector per free column.
    """
    if p is None:
        mat = [[Fraction(v) for v in row] for row in rows]
        inv = lambda x: 1 / x  # noqa: E731
        norm = lambda x: x  # noqa: E731
    else:
        mat = [[v % p for v in row] for row in rows]
        inv = lambda x: pow(x, -1, p)  # noqa: E731
        norm = lambda x: x % p  # noqa: E731
    pivcols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        s = inv(mat[r][c])
        mat[r] = [norm(v * s) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [norm(a - f * b) for a, b in zip(mat[i], mat[r])]
        pivcols.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in set(pivcols)]
    basis = []
    zero = Fraction(0) if p is None else 0
    one = Fraction(1) if p is None else 1
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for i, pc in enumerate(pivcols):
            vec[pc] = norm(-mat[i][fc])
        basis.append(vec)
    return basis


def dense_rank(rows: list[list], p: int | None) -> int:
    """Rank of a small dense matrix with Fraction/int entries."""
    sparse = []
    if p is None:
        for row in rows:
            # clear denominators to stay in the integer routine
            den = 1
            for v in row:
                den = den * Fraction(v).denominator // gcd(den, Fraction(v).denominator)
            sparse.append({k: int(Fraction(v) * den) for k, v in enumerate(row) if v})
        return rank_q(sparse)
    return rank_mod_p([{k: int(v) for k, v in enumerate(row) if v} for row in rows], p)
