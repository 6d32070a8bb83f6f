"""Simplicial complexes on bit masks, Stanley-Reisner translation, path facets.

A face is an ``int`` whose bit ``k`` marks ``vertices[k]``.  A complex keeps
its facets; faces are derived on demand and cached.  The void complex (no
faces at all) has no facets, while ``{emptyset}`` has the single facet 0.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Hashable, Iterable, Sequence

from .orders import Cell, MatrixShape, Monomial


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def _maximal(masks: Iterable[int]) -> list[int]:
    uniq = sorted(set(masks), key=lambda f: -popcount(f))
    keep: list[int] = []
    for f in uniq:
        if not any(f & g == f for g in keep):
            keep.append(f)
    return sorted(keep)


class SimplicialComplex:
    """Immutable complex on an ordered vertex list."""

    def __init__(self, vertices: Sequence[Hashable], facets: Iterable[int]):
        self.vertices = tuple(vertices)
        self._index = {v: k for k, v in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise ValueError("repeated vertex")
        full = (1 << len(self.vertices)) - 1
        facets = list(facets)
        if any(f & ~full for f in facets):
            raise ValueError("facet uses an undeclared vertex")
        self.facets = tuple(_maximal(facets))

    @classmethod
    def from_faces(cls, vertices: Sequence[Hashable], faces: Iterable[Iterable[Hashable]]):
        index = {v: k for k, v in enumerate(vertices)}
        return cls(vertices, [sum(1 << index[v] for v in face) for face in faces])

    # -- conversions --------------------------------------------------------
    def mask(self, cells: Iterable[Hashable]) -> int:
        out = 0
        for c in cells:
            try:
                out |= 1 << self._index[c]
            except KeyError:
                raise ValueError(f"unknown vertex {c!r}") from None
        return out

    def cells(self, mask: int) -> list:
        return [self.vertices[k] for k in bits(mask)]

    # -- structure ----------------------------------------------------------
    @property
    def is_void(self) -> bool:
        return not self.facets

    @cached_property
    def dim(self) -> int:
        if not self.facets:
            return -2
        return max(popcount(f) for f in self.facets) - 1

    def is_pure(self) -> bool:
        return len({popcount(f) for f in self.facets}) <= 1

    @cached_property
    def faces(self) -> frozenset[int]:
        out: set[int] = set()
        for f in self.facets:
            if f in out:
                continue
            sub = f
            while True:
                out.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & f
        return frozenset(out)

    @cached_property
    def faces_by_size(self) -> list[list[int]]:
        """``faces_by_size[k]`` lists the faces with k vertices, sorted."""
        if self.is_void:
            return []
        out: list[list[int]] = [[] for _ in range(self.dim + 2)]
        for f in self.faces:
            out[popcount(f)].append(f)
        for lst in out:
            lst.sort()
        return out

    def __contains__(self, mask: int) -> bool:
        return any(mask & f == mask for f in self.facets)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.facet_sets() == other.facet_sets()

    def __hash__(self) -> int:
        return hash(frozenset(self.facet_sets()))

    def facet_sets(self) -> set[frozenset]:
        return {frozenset(self.cells(f)) for f in self.facets}

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self.facets)} facets, dim={self.dim})"

    def with_facets(self, facets: Iterable[int]) -> "SimplicialComplex":
        return SimplicialComplex(self.vertices, facets)

    def to_json(self, shape: MatrixShape | None = None) -> dict:
        out: dict = {}
        if shape is not None:
            out.update(m=shape.m, n=shape.n)
        out["vertices"] = [list(v) if isinstance(v, tuple) else v for v in self.vertices]
        out["facets"] = [bits(f) for f in self.facets]
        return out


@dataclass
class FVector:
    counts: list[int]

    def __post_init__(self) -> None:
        if self.counts and self.counts[0] != 1:
            raise ValueError("f_{-1} must be 1")

    @property
    def dim(self) -> int:
        return len(self.counts) - 2


def f_vector(c: SimplicialComplex) -> FVector:
    return FVector([len(lst) for lst in c.faces_by_size])


def h_vector_from_f(f: FVector | Sequence[int], dim_ring: int | None = None) -> list[int]:
    """h_k = sum_i (-1)^(k-i) C(d-i, k-i) f_{i-1}, d the Krull dimension."""
    counts = list(f.counts if isinstance(f, FVector) else f)
    d = len(counts) - 1 if dim_ring is None else dim_ring
    counts += [0] * (d + 1 - len(counts))
    return [
        sum((-1) ** (k - i) * comb(d - i, k - i) * counts[i] for i in range(k + 1))
        for k in range(d + 1)
    ]


# --- Stanley-Reisner translation --------------------------------------------


def _bron_kerbosch(adj: list[int], full: int) -> list[int]:
    """Maximal cliques of a graph given as neighbour masks (pivoting variant)."""
    out: list[int] = []
    stack = [(0, full, 0)]
    while stack:
        r, p, x = stack.pop()
        if not p and not x:
            out.append(r)
            continue
        if not p:
            continue
        pivot = max(bits(p | x), key=lambda u: popcount(p & adj[u]))
        for v in bits(p & ~adj[pivot]):
            stack.append((r | (1 << v), p & adj[v], x & adj[v]))
            p &= ~(1 << v)
            x |= 1 << v
    return out


def _independent_sets(nonfaces: list[int], full: int) -> list[int]:
    """Maximal sets containing no nonface (generic minimal-nonface fallback)."""
    nv = full.bit_length()
    out: list[int] = []

    def grow(face: int, start: int) -> None:
        extended = False
        for v in range(nv):
            b = 1 << v
            if face & b:
                continue
            cand = face | b
            if any(nf & cand == nf for nf in nonfaces):
                continue
            extended = True
            if v >= start:
                grow(cand, v + 1)
        if not extended:
            out.append(face)

    grow(0, 0)
    return out


def stanley_reisner_complex(
    generators: Iterable[Monomial | Iterable[Hashable]], vertex_universe: Sequence[Hashable]
) -> SimplicialComplex:
    """Complex of the square-free monomial ideal spanned by ``generators``."""
    index = {v: k for k, v in enumerate(vertex_universe)}
    nonfaces = []
    for g in generators:
        if isinstance(g, Monomial):
            if not g.is_square_free():
                raise ValueError(f"generator {g} is not square-free")
            cells = g.support()
        else:
            cells = list(g)
            if len(set(cells)) != len(cells):
                raise ValueError(f"generator {cells} is not square-free")
        if not cells:
            raise ValueError("the unit ideal has no Stanley-Reisner complex")
        nonfaces.append(sum(1 << index[c] for c in cells))
    nonfaces = _maximal_free(nonfaces)
    full = (1 << len(vertex_universe)) - 1
    if all(popcount(nf) <= 2 for nf in nonfaces):
        dead = 0
        adj = [full & ~(1 << k) for k in range(len(vertex_universe))]
        for nf in nonfaces:
            if popcount(nf) == 1:
                dead |= nf
            else:
                a, b = bits(nf)
                adj[a] &= ~(1 << b)
                adj[b] &= ~(1 << a)
        alive = full & ~dead
        adj = [a & alive for a in adj]
        facets = _bron_kerbosch(adj, alive)
    else:
        facets = _independent_sets(nonfaces, full)
    return SimplicialComplex(vertex_universe, facets)


def _maximal_free(masks: list[int]) -> list[int]:
    """Drop non-minimal nonfaces."""
    uniq = sorted(set(masks), key=popcount)
    keep: list[int] = []
    for f in uniq:
        if not any(g & f == g for g in keep):
            keep.append(f)
    return keep


def minimal_nonfaces(c: SimplicialComplex) -> list[int]:
    """Minimal vertex sets not in ``c`` (all vertices are assumed to be faces)."""
    out = []
    faces = c.faces
    for size in range(1, c.dim + 3):
        for f in faces_of_size_candidates(c, size):
            if f in faces:
                continue
            if all((f & ~(1 << v)) in faces for v in bits(f)):
                out.append(f)
    return sorted(out)


def faces_of_size_candidates(c: SimplicialComplex, size: int) -> Iterable[int]:
    """Sets of the given size all of whose codimension-one subsets are faces."""
    if size == 1:
        return [1 << k for k in range(len(c.vertices))]
    prev = c.faces_by_size[size - 1] if size - 1 < len(c.faces_by_size) else []
    out = set()
    for f in prev:
        for v in range(len(c.vertices)):
            if not f & (1 << v):
                out.add(f | (1 << v))
    return sorted(out)


def cone_points(c: SimplicialComplex) -> list:
    if not c.facets:
        return []
    common = c.facets[0]
    for f in c.facets[1:]:
        common &= f
    return c.cells(common)


def restrict(c: SimplicialComplex, keep: Iterable[Hashable]) -> SimplicialComplex:
    """Induced subcomplex on ``keep``, re-indexed over the kept vertices."""
    keep = set(keep)
    for v in keep:
        if v not in c._index:
            raise ValueError(f"unknown vertex {v!r}")
    verts = [v for v in c.vertices if v in keep]
    kmask = c.mask(verts)
    sub = SimplicialComplex(verts, [])
    facets = [sub.mask(c.cells(f & kmask)) for f in c.facets] if c.facets else []
    return SimplicialComplex(verts, facets)


def induced_mask(c: SimplicialComplex, w: int) -> SimplicialComplex:
    """Induced subcomplex on the vertex mask ``w``, keeping the vertex list."""
    return c.with_facets([f & w for f in c.facets])


def link(c: SimplicialComplex, sigma: int) -> SimplicialComplex:
    if sigma not in c:
        raise ValueError("link of a non-face")
    return c.with_facets([f & ~sigma for f in c.facets if f & sigma == sigma])


def contrastar(c: SimplicialComplex, sigma: int) -> SimplicialComplex:
    """Faces not containing ``sigma``; void when ``sigma`` is empty."""
    if sigma == 0:
        return c.with_facets([])
    return c.with_facets([f & ~(1 << v) for f in c.facets for v in bits(sigma & f)] + [
        f for f in c.facets if f & sigma != sigma
    ])


# --- the path complex ------------------------------------------------------


def row_set(cells: Iterable[Cell]) -> set[int]:
    return {i for i, _ in cells}


def col_set(cells: Iterable[Cell]) -> set[int]:
    return {j for _, j in cells}


def path_facets(shape: MatrixShape) -> list[tuple[Cell, ...]]:
    """Lattice-path facets, each as its vertex sequence from top-left.

    For every nonempty row set r with complementary column set c, every
    right/down monotone path through the |r| x |c| grid of those rows and
    columns is a facet.
    """
    out = []
    m, n = shape.m, shape.n
    for k in range(1, m + 1):
        for rows in itertools.combinations(range(1, m + 1), k):
            cols = [j for j in range(1, n + 1) if j not in rows]
            if not cols:
                continue
            a, b = len(rows), len(cols)
            for downs in itertools.combinations(range(a + b - 2), a - 1):
                ri = ci = 0
                path = [(rows[0], cols[0])]
                downs_set = set(downs)
                for step in range(a + b - 2):
                    if step in downs_set:
                        ri += 1
                    else:
                        ci += 1
                    path.append((rows[ri], cols[ci]))
                out.append(tuple(path))
    return out


def facet_count(shape: MatrixShape) -> int:
    return sum(comb(shape.m, k) * comb(shape.n - 2, k - 1) for k in range(1, shape.m + 1))


def delta(shape: MatrixShape) -> SimplicialComplex:
    """The path complex on the off-diagonal cells (bit order row-major)."""
    verts = shape.off_diagonal()
    return SimplicialComplex.from_faces(verts, path_facets(shape))


def compatible(a: Cell, b: Cell) -> bool:
    """Edge rule for two off-diagonal cells of the path complex."""
    (i, j), (k, l) = sorted([a, b])
    if i == k or j == l:
        return True
    return i < k and j < l and i != l and k != j


# --- quasimanifold and boundary --------------------------------------------


@dataclass
class QuasimanifoldReport:
    ok: bool
    dim: int
    bad_ridges: list[tuple[list, int]] = field(default_factory=list)
    disconnected_links: list[list] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "dim": self.dim,
            "bad_ridges": [[[list(v) for v in face], cnt] for face, cnt in self.bad_ridges],
            "disconnected_links": [[list(v) for v in face] for face in self.disconnected_links],
        }


def is_quasimanifold(c: SimplicialComplex, field=None) -> QuasimanifoldReport:
    from .homology import Rationals, reduced_homology_dims

    field = field or Rationals
    if not c.is_pure():
        raise ValueError("quasimanifold check needs a pure complex")
    d = c.dim
    bad_ridges = []
    for sigma in c.faces_by_size[d] if d >= 0 else []:
        cnt = sum(1 for f in c.facets if f & sigma == sigma)
        if cnt not in (1, 2):
            bad_ridges.append((c.cells(sigma), cnt))
    bad_links = []
    for size in range(0, d):
        for sigma in c.faces_by_size[size]:
            h = reduced_homology_dims(link(c, sigma), field)
            if h[1] != 0:  # index 0 is degree -1
                bad_links.append(c.cells(sigma))
    return QuasimanifoldReport(not bad_ridges and not bad_links, d, bad_ridges, bad_links)


def boundary_faces(c: SimplicialComplex, shape: MatrixShape) -> list[int]:
    """Ridges of the path complex lying in exactly one facet.

    Computed by incidence counting and cross-checked against the row/column
    description: the face misses exactly one index l > m of [n].
    """
    n, m = shape.n, shape.m
    ridges = c.faces_by_size[n - 2] if n - 2 < len(c.faces_by_size) else []
    by_count = {s for s in ridges if sum(1 for f in c.facets if f & s == s) == 1}
    by_rows = set()
    for s in ridges:
        cells = c.cells(s)
        missing = set(range(1, n + 1)) - row_set(cells) - col_set(cells)
        if len(missing) == 1 and min(missing) > m:
            by_rows.add(s)
    if by_count != by_rows:
        raise AssertionError(
            f"boundary characterisations disagree on {sorted(by_count ^ by_rows)} for {shape}"
        )
    return sorted(by_count)


def complex_text(c: SimplicialComplex) -> str:
    lines = [f"# {len(c.vertices)} vertices, {len(c.facets)} facets, dim {c.dim}"]
    for f in c.facets:
        lines.append(" ".join(f"({i},{j})" for i, j in c.cells(f)))
    return "\n".join(lines)


def complex_json(c: SimplicialComplex, shape: MatrixShape) -> str:
    return json.dumps(c.to_json(shape))
