"""Canonical-module combinatorics of a Stanley-Reisner ring.

The canonical module of k[D] splits over exponent vectors U whose support
is a face; the piece at U is H_d(D, cost(supp U)) with d = dim D.  Every
statement here is derived from those relative homology groups: which
faces carry a nonzero piece, which of them are minimal generators, and
the resulting graded dimensions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from . import linalg
from .complexes import (
    SimplicialComplex,
    bits,
    cone_points,
    contrastar,
    f_vector,
    h_vector_from_f,
    is_quasimanifold,
    link,
    popcount,
    restrict,
    stanley_reisner_complex,
    FVector,
)
from .homology import FieldSpec, Rationals, reduced_homology_dims, relative_homology_dim, star_relative_top
from .orders import Cell, MatrixShape, MonomialOrder, OrderKind, initial_ideal_generators

COMPOSITIONS = "compositions"
PAPER_POWERS = "powers"


def c_set(shape: MatrixShape) -> list[tuple[Cell, ...]]:
    """Faces with one cell in each of the columns m+1..n, rows weakly increasing."""
    m, n = shape.m, shape.n
    return [
        tuple((i, m + 1 + k) for k, i in enumerate(rows))
        for rows in itertools.combinations_with_replacement(range(1, m + 1), n - m)
    ]


def d_sigma(c: SimplicialComplex, sigma: int, field: FieldSpec = Rationals) -> int:
    """Top reduced homology of the link of ``sigma``."""
    if sigma not in c:
        raise ValueError("sigma is not a face of the complex")
    lk = link(c, sigma)
    return reduced_homology_dims(lk, field)[-1]


def relative_top_dims(c: SimplicialComplex, field: FieldSpec = Rationals, monotone: bool = False) -> dict[int, int]:
    """dim H_d(c, cost(sigma)) for every face sigma with a nonzero value.

    With ``monotone`` set (connected quasimanifolds), a face over a face
    with a nonzero value is assigned 1 without computing anything.
    """
    out: dict[int, int] = {}
    for lvl in c.faces_by_size:
        for sigma in lvl:
            if monotone and any((sigma & ~(1 << v)) in out for v in bits(sigma)):
                out[sigma] = 1
                continue
            h = star_relative_top(c, sigma, field)
            if h:
                out[sigma] = h
    return out


def link_relative_dims(
    c: SimplicialComplex, sigma: int, field: FieldSpec = Rationals
) -> list[tuple[int, int, int]]:
    """(i, dim H~_(i-|sigma|)(lk sigma), dim H_i(c, cost sigma)) for i = -1..dim c.

    The two dimensions agree for every face; with sigma empty the
    contrastar is the void complex and both sides are reduced homology.
    """
    lk = reduced_homology_dims(link(c, sigma), field)
    cost = contrastar(c, sigma)
    k = popcount(sigma)
    out = []
    for i in range(-1, c.dim + 1):
        j = i - k + 1
        out.append((i, lk[j] if 0 <= j < len(lk) else 0, relative_homology_dim(c, cost, i, field)))
    return out


def minimal_canonical_generators(c: SimplicialComplex, field: FieldSpec = Rationals) -> list[int]:
    """Faces with nonzero top relative homology all of whose proper subfaces have none."""
    gprime = relative_top_dims(c, field, monotone=_is_connected_quasimanifold(c, field))
    out = []
    for sigma in sorted(gprime, key=lambda f: (popcount(f), f)):
        sub = (sigma - 1) & sigma
        minimal = True
        while True:
            if sub != sigma and sub in gprime:
                minimal = False
                break
            if sub == 0:
                break
            sub = (sub - 1) & sigma
        if minimal:
            out.append(sigma)
    return out


def _is_connected_quasimanifold(c: SimplicialComplex, field: FieldSpec) -> bool:
    if not c.is_pure() or c.dim < 0:
        return False
    if c.dim >= 1 and reduced_homology_dims(c, field)[1] != 0:
        return False
    return is_quasimanifold(c, field).ok


# --- exact generator counting ---------------------------------------------


def _top_cycles(c: SimplicialComplex, sigma: int, p: int | None) -> tuple[list[int], list[list]]:
    """Basis of H_d(c, cost(sigma)) in coordinates of the facets containing sigma."""
    d = c.dim
    tops = [f for f in c.faces_by_size[d + 1] if f & sigma == sigma]
    ridges = {f: k for k, f in enumerate(x for x in c.faces_by_size[d] if x & sigma == sigma)} if d >= 0 else {}
    mat = [[0] * len(tops) for _ in ridges]
    for col, f in enumerate(tops):
        for t, v in enumerate(bits(f)):
            r = ridges.get(f & ~(1 << v))
            if r is not None:
                mat[r][col] = -1 if t & 1 else 1
    return tops, linalg.nullspace(mat, len(tops), p)


def generator_counts(c: SimplicialComplex, field: FieldSpec = Rationals) -> dict[int, int]:
    """Number of minimal generators of the canonical module at each face.

    Only square-free degrees can hold generators: multiplying by a variable
    already in the support acts as the identity.  At a face sigma the count
    is dim H(sigma) minus the span of the restriction images from the faces
    sigma minus one vertex.
    """
    p = field.p
    out: dict[int, int] = {}
    cycles: dict[int, tuple[list[int], list[list]]] = {}
    for lvl in c.faces_by_size:
        for sigma in lvl:
            tops, basis = _top_cycles(c, sigma, p)
            cycles[sigma] = (tops, basis)
            if not basis:
                continue
            pos = {f: k for k, f in enumerate(tops)}
            images = []
            for v in bits(sigma):
                sub_tops, sub_basis = cycles[sigma & ~(1 << v)]
                for vec in sub_basis:
                    img = [0] * len(tops)
                    for f, x in zip(sub_tops, vec):
                        k = pos.get(f)
                        if k is not None:
                            img[k] = x
                    images.append(img)
            extra = len(basis) - (linalg.dense_rank(images, p) if images else 0)
            if extra:
                out[sigma] = extra
    return out


# --- graded dimensions -----------------------------------------------------


def gprime_by_size(c: SimplicialComplex, field: FieldSpec = Rationals) -> list[int]:
    """Sum of dim H_d(c, cost sigma) over faces sigma of each size."""
    sizes = [0] * (c.dim + 2)
    for sigma, h in relative_top_dims(c, field).items():
        sizes[popcount(sigma)] += h
    return sizes


def graded_dimension(gprime: Sequence[int], i: int, rule: str = COMPOSITIONS) -> int:
    """dim of the degree-i piece from the counts of nonzero faces per size.

    ``compositions``: a face of size k supports C(i-1, k-1) exponent vectors
    of total degree i.  ``powers``: the k^(i-k) multiplicity variant.
    """
    if i < 0:
        return 0
    if rule == COMPOSITIONS:
        if i == 0:
            return gprime[0] if gprime else 0
        return sum(comb(i - 1, k - 1) * g for k, g in enumerate(gprime) if 1 <= k <= i)
    if rule == PAPER_POWERS:
        return sum(k ** (i - k) * g for k, g in enumerate(gprime) if k <= i)
    raise ValueError(f"unknown multiplicity rule {rule!r}")


def canonical_graded_dimension(
    c: SimplicialComplex, i: int, field: FieldSpec = Rationals, rule: str = COMPOSITIONS
) -> int:
    return graded_dimension(gprime_by_size(c, field), i, rule)


def support_exact_count(c: SimplicialComplex, i: int, field: FieldSpec = Rationals) -> int:
    """Brute force: sum over exponent vectors U with |U| = i of dim H_d(c, cost supp U)."""
    dims = relative_top_dims(c, field)
    nv = len(c.vertices)
    total = 0
    for multiset in itertools.combinations_with_replacement(range(nv), i):
        supp = 0
        for v in multiset:
            supp |= 1 << v
        total += dims.get(supp, 0)
    return total


def gprime_closed_formula(shape: MatrixShape, i: int) -> int:
    """Closed double sum for the number of size-i faces off the boundary."""
    m, n = shape.m, shape.n
    total = Fraction(0)
    for cc in range(0, m + i - n + 1):
        for r in range(m + i + 1 - n - cc, min(m - cc, i) + 1):
            args = (r + cc + n - m - i - 1, m + i - n - cc, i - r)
            if i < 1 or min(args) < 0:
                continue
            total += Fraction(
                comb(m, r) * comb(m - r, cc) * factorial(i - 1),
                factorial(args[0]) * factorial(args[1]) * factorial(args[2]),
            )
    if total.denominator != 1:
        raise ArithmeticError(f"non-integral count {total} at {shape}, i={i}")
    return int(total)


@dataclass
class HilbertSeries:
    """numerator(t) / (1 - t)^denominator_power."""

    numerator: list[int]
    denominator_power: int

    def coefficients(self, upto: int) -> list[int]:
        out = []
        d = self.denominator_power
        for i in range(upto + 1):
            if d == 0:
                out.append(self.numerator[i] if i < len(self.numerator) else 0)
            else:
                out.append(
                    sum(a * comb(i - k + d - 1, d - 1) for k, a in enumerate(self.numerator) if k <= i)
                )
        return out


def hs_from_f_vector(f: FVector | Sequence[int]) -> HilbertSeries:
    counts = list(f.counts if isinstance(f, FVector) else f)
    d = len(counts) - 1
    h = h_vector_from_f(counts, d)
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    return HilbertSeries(h, d)


def hs_duality(hs: HilbertSeries, dim: int, upto: int | None = None) -> dict[int, int]:
    """Graded dims of the canonical module from (-1)^d HS(1/t).

    With HS = h(t)/(1-t)^d this is sum_k h_k t^(d-k) / (1-t)^d.
    """
    if hs.denominator_power != dim:
        raise ValueError("series must be written over (1 - t)^dim")
    num = [0] * (dim + 1)
    for k, a in enumerate(hs.numerator):
        num[dim - k] += a
    upto = 2 * dim + 2 if upto is None else upto
    coeffs = HilbertSeries(num, dim).coefficients(upto)
    return {i: v for i, v in enumerate(coeffs)}


# --- Cohen-Macaulay test and the level report -------------------------------


def reisner_violations(c: SimplicialComplex, field: FieldSpec = Rationals) -> list[tuple[int, int]]:
    """(face, degree) pairs with H~_i(lk face) != 0 below the link's top degree."""
    bad = []
    for lvl in c.faces_by_size:
        for sigma in lvl:
            dims = reduced_homology_dims(link(c, sigma), field)
            for k, h in enumerate(dims[:-1]):
                if h:
                    bad.append((sigma, k - 1))
    return bad


def is_cohen_macaulay(c: SimplicialComplex, field: FieldSpec = Rationals) -> bool:
    return not reisner_violations(c, field)


def reduced_complex(shape: MatrixShape, order: MonomialOrder) -> tuple[SimplicialComplex, list[Cell]]:
    """Stanley-Reisner complex of the initial ideal with its cone points removed."""
    full = stanley_reisner_complex(initial_ideal_generators(shape, order), shape.cells())
    cps = cone_points(full)
    keep = [v for v in shape.cells() if v not in cps]
    return restrict(full, keep), cps


@dataclass
class CanonicalReport:
    shape: MatrixShape
    order: str
    field: str
    cone_points: list[Cell]
    cohen_macaulay: bool
    minimal_generators: list[list[Cell]] = field(default_factory=list)
    generator_degrees: list[int] = field(default_factory=list)
    cm_type: int = 0
    a_invariant: int | None = None
    a_invariant_ambient: int | None = None
    omega_dims: dict[int, int] = field(default_factory=dict)
    omega_dims_paper_rule: dict[int, int] = field(default_factory=dict)
    omega_dims_duality: dict[int, int] = field(default_factory=dict)
    findings: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def applicable(self) -> bool:
        return self.cohen_macaulay

    @property
    def is_level(self) -> bool:
        return self.cohen_macaulay and len(set(self.generator_degrees)) == 1

    @property
    def is_gorenstein(self) -> bool:
        return self.cohen_macaulay and self.cm_type == 1

    def to_dict(self) -> dict:
        return {
            "m": self.shape.m,
            "n": self.shape.n,
            "order": self.order,
            "field": self.field,
            "applicable": self.applicable,
            "cone_points": [list(c) for c in self.cone_points],
            "generators": [[list(c) for c in g] for g in self.minimal_generators],
            "degrees": self.generator_degrees,
            "type": self.cm_type,
            "a_invariant": self.a_invariant,
            "a_invariant_ambient": self.a_invariant_ambient,
            "level": self.is_level,
            "gorenstein": self.is_gorenstein,
            "omega_dims": {str(k): v for k, v in self.omega_dims.items()},
            "omega_dims_paper_rule": {str(k): v for k, v in self.omega_dims_paper_rule.items()},
            "omega_dims_duality": {str(k): v for k, v in self.omega_dims_duality.items()},
            "findings": self.findings,
            "notes": self.notes,
        }


def level_report(
    shape: MatrixShape,
    order: MonomialOrder,
    field: FieldSpec = Rationals,
    max_degree: int | None = None,
) -> CanonicalReport:
    c, cps = reduced_complex(shape, order)
    report = CanonicalReport(shape, order.name, str(field), cps, is_cohen_macaulay(c, field))
    if not report.cohen_macaulay:
        report.notes.append("complex is not Cohen-Macaulay over this field; levelness not applicable")
        return report
    counts = generator_counts(c, field)
    gens = sorted(counts, key=lambda f: (popcount(f), f))
    report.minimal_generators = [c.cells(g) for g in gens]
    report.generator_degrees = [popcount(g) for g in gens for _ in range(counts[g])]
    report.cm_type = sum(counts.values())
    if report.generator_degrees:
        report.a_invariant = -min(report.generator_degrees)
        report.a_invariant_ambient = report.a_invariant - len(cps)

    max_degree = 2 * shape.n if max_degree is None else max_degree
    gp = gprime_by_size(c, field)
    report.omega_dims = {i: graded_dimension(gp, i, COMPOSITIONS) for i in range(max_degree + 1)}
    report.omega_dims_paper_rule = {i: graded_dimension(gp, i, PAPER_POWERS) for i in range(max_degree + 1)}
    report.omega_dims_duality = hs_duality(hs_from_f_vector(f_vector(c)), c.dim + 1, max_degree)
    for i in range(max_degree + 1):
        a, b, dual = report.omega_dims[i], report.omega_dims_paper_rule[i], report.omega_dims_duality[i]
        if a != dual:
            report.findings.append(f"degree {i}: composition count {a} disagrees with duality {dual}")
        if b != a:
            report.notes.append(
                f"degree {i}: k^(i-k) multiplicity rule gives {b}, composition count and duality give {a}"
            )

    if order.kind is OrderKind.PAPER_ROWS and shape.m < shape.n:
        want = comb(shape.n - 1, shape.m - 1)
        low = shape.n - shape.m
        if report.a_invariant != -low:
            report.findings.append(f"a-invariant {report.a_invariant} differs from -(n-m) = {-low}")
        if sorted(tuple(g) for g in report.minimal_generators) != sorted(c_set(shape)):
            report.findings.append("minimal generators differ from the column-sequence set C")
        if report.omega_dims.get(low) != want:
            report.findings.append(f"dim omega_(n-m) = {report.omega_dims.get(low)} differs from {want}")
    return report
