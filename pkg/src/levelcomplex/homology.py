"""Reduced and relative simplicial homology over Q or GF(p); Hochster's formula.

Over Q the fast path computes ranks modulo a large prime first.  Rational
homology is bounded above, degree by degree, by mod-p homology and both
have the same Euler characteristic, so when the mod-p homology sits in a
single degree it *is* the rational homology.  Anything else is recomputed
with exact fraction-free elimination.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

import numba
import numpy as np

from . import linalg
from .complexes import SimplicialComplex, bits, minimal_nonfaces, popcount


@dataclass(frozen=True)
class FieldSpec:
    p: int | None = None  # None means Q

    def __post_init__(self) -> None:
        if self.p is not None:
            if not linalg.is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
            if self.p >= 2**31:
                raise ValueError("primes must be below 2**31")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip()
        if t.upper() in ("Q", "QQ"):
            return cls(None)
        try:
            return cls(int(t))
        except ValueError:
            raise ValueError(f"field must be Q or a prime, got {text!r}") from None

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"


Rationals = FieldSpec(None)


class GuardExceeded(RuntimeError):
    pass


# --- chain complexes -------------------------------------------------------


def _boundary_rows(top: list[int], below: dict[int, int]) -> list[dict[int, int]]:
    """Boundary of each face in ``top`` in the basis ``below`` (face -> column).

    Subfaces missing from ``below`` are dropped, which realises the
    quotient by a subcomplex.
    """
    rows = []
    for f in top:
        row = {}
        for t, v in enumerate(bits(f)):
            col = below.get(f & ~(1 << v))
            if col is not None:
                row[col] = -1 if t & 1 else 1
        rows.append(row)
    return rows


def _matrix_rank(rows: list[dict[int, int]], ncols: int, p: int | None) -> int:
    if not rows or not ncols:
        return 0
    if p is not None and len(rows) * ncols > 40000:
        dense = np.zeros((len(rows), ncols), dtype=np.int64)
        for r, row in enumerate(rows):
            for c, v in row.items():
                dense[r, c] = v % p
        return int(linalg.dense_rank_mod_p(dense, p))
    return linalg.rank(rows, p)


def chain_homology(levels: list[list[int]], field: FieldSpec = Rationals) -> list[int]:
    """Homology dims of the chain complex whose degree-k basis is ``levels[k+1]``.

    ``levels[s]`` holds the basis faces with ``s`` vertices; the result is
    indexed like ``levels`` (entry 0 is degree -1).
    """
    index = [{f: k for k, f in enumerate(lvl)} for lvl in levels]
    rows = [[]] + [_boundary_rows(levels[s], index[s - 1]) for s in range(1, len(levels))]

    def dims_for(p: int | None) -> list[int]:
        ranks = [0] * (len(levels) + 1)
        for s in range(1, len(levels)):
            ranks[s] = _matrix_rank(rows[s], len(levels[s - 1]), p)
        return [len(levels[s]) - ranks[s] - ranks[s + 1] for s in range(len(levels))]

    if field.p is not None:
        return dims_for(field.p)
    approx = dims_for(linalg.LARGE_PRIME)
    if sum(1 for d in approx if d) <= 1:
        return approx
    return dims_for(None)


def reduced_homology_dims(c: SimplicialComplex, field: FieldSpec = Rationals) -> list[int]:
    """dim H~_k(c) for k = -1 .. dim c (list index k + 1). Void complex -> []."""
    return chain_homology(c.faces_by_size, field)


def relative_homology_dim(
    c: SimplicialComplex, sub: SimplicialComplex, i: int, field: FieldSpec = Rationals
) -> int:
    """dim H_i(c, sub) from the chain complex C(c)/C(sub) (augmented)."""
    if any(f not in c for f in sub.facets):
        raise ValueError("sub is not a subcomplex")
    sub_faces = sub.faces
    levels = []
    for s in range(i, i + 3):  # degrees i-1, i, i+1
        if s < 0 or s >= len(c.faces_by_size):
            levels.append([])
        else:
            levels.append([f for f in c.faces_by_size[s] if f not in sub_faces])
    return chain_homology(levels, field)[1]


def relative_homology_dims(
    c: SimplicialComplex, sub: SimplicialComplex, field: FieldSpec = Rationals
) -> list[int]:
    sub_faces = sub.faces
    levels = [[f for f in lvl if f not in sub_faces] for lvl in c.faces_by_size]
    return chain_homology(levels, field)


def star_relative_top(c: SimplicialComplex, sigma: int, field: FieldSpec = Rationals) -> int:
    """dim H_d(c, cost(sigma)), d = dim c, via the faces containing sigma."""
    d = c.dim
    top = [f for f in c.faces_by_size[d + 1] if f & sigma == sigma]
    ridge = [f for f in c.faces_by_size[d] if f & sigma == sigma] if d + 1 >= 1 else []
    return chain_homology([ridge, top], field)[1]


# --- Betti tables ----------------------------------------------------------


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j}; zero entries are not stored."""

    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.entries = {k: v for k, v in self.entries.items() if v}
        if any(v < 0 for v in self.entries.values()):
            raise ValueError("negative Betti number")

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.entries == other.entries

    @property
    def pdim(self) -> int:
        return max(i for i, _ in self.entries)

    @property
    def reg(self) -> int:
        return max(j - i for i, j in self.entries)

    def top_degree(self, i: int) -> int | None:
        """t_i: the largest j with beta_{i,j} != 0."""
        js = [j for (a, j) in self.entries if a == i]
        return max(js) if js else None

    def row(self, r: int) -> list[int]:
        return [self[i, i + r] for i in range(self.pdim + 1)]

    def grid(self) -> list[list[int]]:
        """Rows j - i = 0..reg, columns i = 0..pdim."""
        return [self.row(r) for r in range(self.reg + 1)]

    def antidiagonal_sums(self) -> dict[int, int]:
        """sum_i (-1)^i beta_{i,j} for each internal degree j."""
        out: dict[int, int] = {}
        for (i, j), v in self.entries.items():
            out[j] = out.get(j, 0) + (-1) ** i * v
        return {j: v for j, v in sorted(out.items()) if v}

    def to_text(self) -> str:
        cols = self.pdim + 1
        grid = self.grid()
        width = max(len(str(v)) for row in grid for v in row + [cols - 1])
        head = "   |" + "".join(f" {i:>{width}}" for i in range(cols))
        lines = [head, "-" * len(head)]
        for r, row in enumerate(grid):
            lines.append(f"{r:>2} |" + "".join(f" {v:>{width}}" for v in row))
        return "\n".join(lines)

    def to_csv(self) -> str:
        cols = self.pdim + 1
        lines = ["row," + ",".join(str(i) for i in range(cols))]
        for r, row in enumerate(self.grid()):
            lines.append(f"{r}," + ",".join(str(v) for v in row))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "pdim": self.pdim,
            "reg": self.reg,
            "grid": self.grid(),
            "entries": [[i, j, v] for (i, j), v in sorted(self.entries.items())],
        }

    @classmethod
    def from_grid(cls, grid: Iterable[Iterable[int]]) -> "BettiTable":
        entries = {}
        for r, row in enumerate(grid):
            for i, v in enumerate(row):
                if v:
                    entries[i, i + r] = int(v)
        return cls(entries)


# --- Hochster sweep --------------------------------------------------------


@numba.njit(cache=True, nogil=True)
def _sweep(faces, sizes, subs, ws, p, out_dims, flags):
    """Mod-p reduced homology of every induced subcomplex in ``ws``.

    ``out_dims[t, s]`` receives dim H~ in degree s-1 for ``ws[t]``;
    ``flags[t]`` is set when more than one degree is nonzero.
    """
    nf = faces.shape[0]
    smax = out_dims.shape[1]
    local = np.empty(nf, dtype=np.int64)
    counts = np.zeros(smax + 1, dtype=np.int64)
    members = np.empty(nf, dtype=np.int64)
    starts = np.zeros(smax + 2, dtype=np.int64)
    ranks = np.zeros(smax + 2, dtype=np.int64)
    for t in range(ws.shape[0]):
        w = ws[t]
        for s in range(smax + 1):
            counts[s] = 0
        nm = 0
        for g in range(nf):
            if faces[g] & ~w == 0:
                members[nm] = g
                nm += 1
                local[g] = counts[sizes[g]]
                counts[sizes[g]] += 1
        # members are grouped by size because faces are sorted by size
        starts[0] = 0
        for s in range(smax + 1):
            starts[s + 1] = starts[s] + counts[s]
        for s in range(smax + 2):
            ranks[s] = 0
        for s in range(1, smax):
            nr = counts[s]
            nc = counts[s - 1]
            if nr == 0 or nc == 0:
                continue
            a = np.zeros((nr, nc), dtype=np.int64)
            for q in range(nr):
                g = members[starts[s] + q]
                for t2 in range(s):
                    col = local[subs[g, t2]]
                    a[q, col] = 1 if t2 % 2 == 0 else p - 1
            # inline elimination keeps the kernel self-contained
            r = 0
            for c in range(nc):
                if r == nr:
                    break
                piv = -1
                for i in range(r, nr):
                    if a[i, c] != 0:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != r:
                    for k in range(c, nc):
                        tmp = a[r, k]
                        a[r, k] = a[piv, k]
                        a[piv, k] = tmp
                base = a[r, c]
                inv = 1
                e = p - 2
                while e > 0:
                    if e & 1:
                        inv = inv * base % p
                    base = base * base % p
                    e >>= 1
                for k in range(c, nc):
                    a[r, k] = a[r, k] * inv % p
                for i in range(r + 1, nr):
                    f = a[i, c]
                    if f != 0:
                        for k in range(c, nc):
                            if a[r, k] != 0:
                                a[i, k] = (a[i, k] - f * a[r, k]) % p
                r += 1
            ranks[s] = r
        nonzero = 0
        for s in range(smax):
            d = counts[s] - ranks[s] - ranks[s + 1]
            out_dims[t, s] = d
            if d != 0:
                nonzero += 1
        flags[t] = 1 if nonzero > 1 else 0


def _face_arrays(c: SimplicialComplex):
    faces = [f for lvl in c.faces_by_size for f in lvl]
    pos = {f: k for k, f in enumerate(faces)}
    smax = len(c.faces_by_size)
    subs = np.full((len(faces), max(smax - 1, 1)), -1, dtype=np.int64)
    for g, f in enumerate(faces):
        for t, v in enumerate(bits(f)):
            subs[g, t] = pos[f & ~(1 << v)]
    sizes = np.array([popcount(f) for f in faces], dtype=np.int64)
    return np.array(faces, dtype=np.int64), sizes, subs, smax


def hochster_candidates(c: SimplicialComplex) -> np.ndarray:
    """Nonempty vertex sets W whose induced complex is not a cone.

    A vertex of W is a cone point of the restriction to W exactly when no
    minimal nonface inside W contains it, so only sets covered by their
    own minimal nonfaces can carry homology.
    """
    nv = len(c.vertices)
    ws = np.arange(1, 1 << nv, dtype=np.int64)
    covered = np.zeros_like(ws)
    for nf in minimal_nonfaces(c):
        inside = (ws & nf) == nf
        covered |= np.where(inside, np.int64(nf), np.int64(0))
    return ws[covered == ws]


def default_threads() -> int:
    env = os.environ.get("LEVELCOMPLEX_THREADS")
    return max(1, int(env)) if env else 1


def hochster_betti_table(
    c: SimplicialComplex,
    field: FieldSpec = Rationals,
    *,
    threads: int | None = None,
    guard: int = 24,
    force: bool = False,
) -> BettiTable:
    """beta_{i,j} = sum over |W| = j of dim H~_{j-i-1}(c restricted to W)."""
    nv = len(c.vertices)
    if nv > guard and not force:
        raise GuardExceeded(f"{nv} vertices exceeds the Hochster guard {guard}")
    if nv > 62:
        raise GuardExceeded("at most 62 vertices fit the sweep's bit masks")
    if c.is_void:
        raise ValueError("void complex")
    threads = threads or default_threads()
    faces, sizes, subs, smax = _face_arrays(c)
    ws = hochster_candidates(c)
    p = field.p or linalg.LARGE_PRIME
    shards = np.array_split(ws, max(1, threads * 8)) if len(ws) else [ws]

    def work(chunk: np.ndarray):
        dims = np.zeros((len(chunk), smax), dtype=np.int64)
        flags = np.zeros(len(chunk), dtype=np.int64)
        if len(chunk):
            _sweep(faces, sizes, subs, chunk, p, dims, flags)
        return chunk, dims, flags

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(work, shards))
    else:
        results = [work(s) for s in shards]

    entries: dict[tuple[int, int], int] = {(0, 0): 1}
    for chunk, dims, flags in results:
        if field.p is None:
            for t in np.nonzero(flags)[0]:
                w = int(chunk[t])
                exact = reduced_homology_dims(c.with_facets([f & w for f in c.facets]), field)
                dims[t, :] = 0
                dims[t, : len(exact)] = exact
        j_of = np.array([popcount(int(w)) for w in chunk], dtype=np.int64)
        for s in range(smax):
            col = dims[:, s]
            for t in np.nonzero(col)[0]:
                j = int(j_of[t])
                i = j - (s - 1) - 1
                entries[i, j] = entries.get((i, j), 0) + int(col[t])
    return BettiTable(entries)


def brute_force_betti(c: SimplicialComplex, field: FieldSpec = Rationals) -> BettiTable:
    """Hochster's formula over every vertex subset, exact homology throughout."""
    nv = len(c.vertices)
    entries: dict[tuple[int, int], int] = {}
    for w in range(1 << nv):
        sub = c.with_facets([f & w for f in c.facets])
        j = popcount(w)
        for k, d in enumerate(reduced_homology_dims(sub, field)):
            if d:
                i = j - (k - 1) - 1
                entries[i, j] = entries.get((i, j), 0) + d
    return BettiTable(entries)
