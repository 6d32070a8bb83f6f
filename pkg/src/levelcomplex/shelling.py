"""The two-way shelling of the path complex.

Facets are grouped by their row set r, ordered first by r and then, inside
one grid, by the first step where the two paths diverge (right before
down).  Each vertex of a facet falls into exactly one of F+ (its deletion
lies in a later facet), F- (in an earlier one) or F* (in no other facet).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .complexes import SimplicialComplex, _maximal, bits, delta, path_facets, popcount
from .orders import Cell, MatrixShape

RIGHT, DOWN = 0, 1


class InvalidFacetError(ValueError):
    pass


def _as_path(face: Iterable[Cell], shape: MatrixShape) -> tuple[Cell, ...]:
    """Sort a facet into path order and check it is a monotone path covering [n]."""
    path = tuple(sorted(face))
    if not path:
        raise InvalidFacetError("empty face")
    for a, b in zip(path, path[1:]):
        if not (a[0] == b[0] and a[1] < b[1]) and not (a[1] == b[1] and a[0] < b[0]):
            raise InvalidFacetError(f"{a} -> {b} is not a single right or down move")
    rows = {i for i, _ in path}
    cols = {j for _, j in path}
    if rows & cols or rows | cols != set(range(1, shape.n + 1)) or max(rows) > shape.m:
        raise InvalidFacetError(f"{list(path)} is not a facet of the path complex {shape}")
    # consecutive cells in one row/column must be adjacent among the grid's rows/columns
    r_sorted, c_sorted = sorted(rows), sorted(cols)
    for a, b in zip(path, path[1:]):
        if a[0] == b[0] and c_sorted.index(b[1]) != c_sorted.index(a[1]) + 1:
            raise InvalidFacetError(f"{a} -> {b} skips a column")
        if a[1] == b[1] and r_sorted.index(b[0]) != r_sorted.index(a[0]) + 1:
            raise InvalidFacetError(f"{a} -> {b} skips a row")
    return path


def _steps(path: Sequence[Cell]) -> tuple[int, ...]:
    return tuple(RIGHT if a[0] == b[0] else DOWN for a, b in zip(path, path[1:]))


def facet_key(face: Iterable[Cell], shape: MatrixShape) -> tuple:
    path = _as_path(face, shape)
    return tuple(sorted({i for i, _ in path})), _steps(path)


def compare_facets(f: Iterable[Cell], g: Iterable[Cell], shape: MatrixShape) -> int:
    """-1, 0 or 1.  Row sets compare lexicographically (a proper prefix is
    smaller); equal row sets compare at the first step, right before down."""
    a, b = facet_key(f, shape), facet_key(g, shape)
    return (a > b) - (a < b)


def shelling_order(shape: MatrixShape) -> list[tuple[Cell, ...]]:
    return sorted(path_facets(shape), key=lambda f: facet_key(f, shape))


# --- vertex kinds and the partition -----------------------------------------


def vertex_kinds(path: Sequence[Cell]) -> list[set[str]]:
    """Kinds of each vertex from its incoming and outgoing steps."""
    steps = _steps(path)
    out = []
    for k in range(len(path)):
        prev = steps[k - 1] if k > 0 else None
        nxt = steps[k] if k < len(steps) else None
        kinds = set()
        if prev == RIGHT and nxt == DOWN:
            kinds.add("right")
        if prev == DOWN and nxt == RIGHT:
            kinds.add("left")
        if DOWN not in (prev, nxt):
            kinds.add("horizontal")
        if RIGHT not in (prev, nxt):
            kinds.add("vertical")
        out.append(kinds)
    return out


@dataclass(frozen=True)
class FacetPartition:
    plus: frozenset
    minus: frozenset
    star: frozenset

    def to_dict(self) -> dict:
        return {k: sorted(list(v) for v in getattr(self, k)) for k in ("plus", "minus", "star")}


def vertex_partition(face: Iterable[Cell], shape: MatrixShape) -> FacetPartition:
    path = _as_path(face, shape)
    top = max(i for i, _ in path)
    plus, minus, star = set(), set(), set()
    for v, kinds in zip(path, vertex_kinds(path)):
        i, j = v
        if "right" in kinds:
            plus.add(v)
        elif "left" in kinds:
            minus.add(v)
        # a lone vertex is both horizontal and vertical; the column rule decides it
        elif "horizontal" in kinds:
            if j > shape.m:
                star.add(v)
            elif j > top:
                plus.add(v)
            else:
                minus.add(v)
        elif "vertical" in kinds:
            (plus if i < top else minus).add(v)
        else:
            raise AssertionError(f"unclassified vertex {v}")
    return FacetPartition(frozenset(plus), frozenset(minus), frozenset(star))


# --- generic verification --------------------------------------------------


@dataclass
class ShellingReport:
    order: list[tuple[Cell, ...]]
    ok_forward: bool
    ok_backward: bool
    violations: list[tuple[str, int, list[Cell]]] = field(default_factory=list)
    restriction_sizes: dict[int, int] = field(default_factory=dict)
    restriction_faces: list[list[Cell]] = field(default_factory=list)
    restriction_faces_backward: list[list[Cell]] = field(default_factory=list)

    def to_dict(self, direction: str = "both") -> dict:
        out: dict = {"order": [[list(v) for v in f] for f in self.order]}
        if direction in ("forward", "both"):
            out["ok_forward"] = self.ok_forward
            out["restriction_faces"] = [[list(v) for v in r] for r in self.restriction_faces]
            out["restriction_sizes"] = {str(k): v for k, v in sorted(self.restriction_sizes.items())}
            out["h_vector"] = h_vector_from_shelling(self) if self.ok_forward else None
        if direction in ("backward", "both"):
            out["ok_backward"] = self.ok_backward
            out["restriction_faces_backward"] = [
                [list(v) for v in r] for r in self.restriction_faces_backward
            ]
        out["violations"] = [
            {"direction": d, "step": s, "face": [list(v) for v in f]} for d, s, f in self.violations
        ]
        return out


def _check(c: SimplicialComplex, masks: list[int], label: str, violations: list) -> tuple[bool, list[int]]:
    ok = True
    restrictions = []
    for k, f in enumerate(masks):
        if k == 0:
            restrictions.append(0)
            continue
        meets = _maximal(f & g for g in masks[:k])
        target = popcount(f) - 1
        for face in meets:
            if popcount(face) != target:
                ok = False
                violations.append((label, k, c.cells(face)))
        # minimal new face: vertices whose deletion lies in an earlier facet
        restrictions.append(sum(1 << v for v in bits(f) if (f & ~(1 << v)) in meets))
    return ok, restrictions


def verify_shelling(c: SimplicialComplex, order: Sequence[Iterable[Cell]]) -> ShellingReport:
    masks = [c.mask(f) for f in order]
    if sorted(masks) != sorted(c.facets) or len(set(masks)) != len(masks):
        raise ValueError("order is not a permutation of the facets")
    violations: list = []
    ok_f, fwd = _check(c, masks, "forward", violations)
    ok_b, bwd = _check(c, masks[::-1], "backward", violations)
    sizes = Counter(popcount(r) for r in fwd) if ok_f else Counter()
    return ShellingReport(
        order=[tuple(c.cells(m)) for m in masks],
        ok_forward=ok_f,
        ok_backward=ok_b,
        violations=violations,
        restriction_sizes=dict(sorted(sizes.items())),
        restriction_faces=[c.cells(r) for r in fwd],
        restriction_faces_backward=[c.cells(r) for r in bwd[::-1]],
    )


def h_vector_from_shelling(report: ShellingReport) -> list[int]:
    if not report.ok_forward:
        raise ValueError("not a shelling")
    d = max((len(f) for f in report.order), default=0)
    return [report.restriction_sizes.get(j, 0) for j in range(d + 1)]


def theorem_intersection_check(c: SimplicialComplex, shape: MatrixShape) -> bool:
    """Facet by facet: earlier intersections are cut out by F-, later ones by
    F+, and a deletion of a vertex of F* lies in F alone."""
    order = [c.mask(f) for f in shelling_order(shape)]
    for k, f in enumerate(order):
        part = vertex_partition(c.cells(f), shape)
        for others, side in ((order[:k], part.minus), (order[k + 1:], part.plus)):
            meets = set(_maximal(f & g for g in others)) if others else set()
            want = {f & ~c.mask([v]) for v in side}
            if meets != want:
                return False
        for v in part.star:
            ridge = f & ~c.mask([v])
            if any(g & ridge == ridge for g in order if g != f):
                return False
    return True


def restriction_matches_partition(shape: MatrixShape) -> bool:
    """Per-step restriction faces equal F- going up and F+ going down."""
    c = delta(shape)
    order = shelling_order(shape)
    rep = verify_shelling(c, order)
    if not (rep.ok_forward and rep.ok_backward):
        return False
    for f, fwd, bwd in zip(order, rep.restriction_faces, rep.restriction_faces_backward):
        part = vertex_partition(f, shape)
        if set(fwd) != part.minus or set(bwd) != part.plus:
            return False
    return True
