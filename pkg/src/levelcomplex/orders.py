"""Degrevlex orders on k[x_ij], leading terms of 2-minors and Groebner checks.

Variables are the cells ``(i, j)`` of an ``m x n`` grid, 1-based.  A
monomial is stored as an exponent tuple indexed by the row-major cell
position, so two monomials of the same shape compare by plain tuple work.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

Cell = tuple[int, int]


class ShapeMismatchError(ValueError):
    pass


class PermutationFileError(ValueError):
    """Raised for a malformed variable-priority file."""


@dataclass(frozen=True, order=True)
class MatrixShape:
    m: int
    n: int

    def __post_init__(self) -> None:
        if not (2 <= self.m <= self.n):
            raise ValueError(f"need 2 <= m <= n, got m={self.m}, n={self.n}")

    @property
    def nvars(self) -> int:
        return self.m * self.n

    def cells(self) -> list[Cell]:
        """All cells in row-major order."""
        return [(i, j) for i in range(1, self.m + 1) for j in range(1, self.n + 1)]

    def off_diagonal(self) -> list[Cell]:
        return [c for c in self.cells() if c[0] != c[1]]

    def diagonal(self) -> list[Cell]:
        return [(k, k) for k in range(1, self.m + 1)]

    def index(self, cell: Cell) -> int:
        i, j = cell
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise ValueError(f"cell {cell} outside a {self.m}x{self.n} grid")
        return (i - 1) * self.n + (j - 1)

    def cell(self, index: int) -> Cell:
        return divmod(index, self.n)[0] + 1, index % self.n + 1

    def minors(self) -> list["Minor2"]:
        rows = itertools.combinations(range(1, self.m + 1), 2)
        return [
            Minor2(self, r, c)
            for r in rows
            for c in itertools.combinations(range(1, self.n + 1), 2)
        ]

    def __str__(self) -> str:
        return f"({self.m},{self.n})"


def is_diagonal(cell: Cell) -> bool:
    return cell[0] == cell[1]


@dataclass(frozen=True)
class Monomial:
    shape: MatrixShape
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.exponents) != self.shape.nvars:
            raise ValueError("exponent vector length does not match the shape")
        if any(e < 0 for e in self.exponents):
            raise ValueError("negative exponent")

    @classmethod
    def from_cells(cls, shape: MatrixShape, cells: Iterable[Cell]) -> "Monomial":
        exps = [0] * shape.nvars
        for c in cells:
            exps[shape.index(c)] += 1
        return cls(shape, tuple(exps))

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def is_square_free(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def support(self) -> list[Cell]:
        return [self.shape.cell(k) for k, e in enumerate(self.exponents) if e]

    def cells(self) -> list[Cell]:
        """Cells with multiplicity, row-major."""
        out = []
        for k, e in enumerate(self.exponents):
            out.extend([self.shape.cell(k)] * e)
        return out

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: "Monomial") -> "Monomial":
        _same_shape(self, other)
        return Monomial(self.shape, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.shape, tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(self.shape, tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def __str__(self) -> str:
        parts = []
        for (i, j), e in ((self.shape.cell(k), e) for k, e in enumerate(self.exponents) if e):
            parts.append(f"x{i}{j}" if e == 1 else f"x{i}{j}^{e}")
        return "*".join(parts) or "1"


def _same_shape(a: Monomial, b: Monomial) -> None:
    if a.shape != b.shape:
        raise ShapeMismatchError(f"monomials over {a.shape} and {b.shape}")


@dataclass(frozen=True)
class Minor2:
    shape: MatrixShape
    rows: tuple[int, int]
    cols: tuple[int, int]

    def __post_init__(self) -> None:
        (i, k), (j, l) = self.rows, self.cols
        if not (1 <= i < k <= self.shape.m and 1 <= j < l <= self.shape.n):
            raise ValueError(f"invalid minor rows={self.rows} cols={self.cols} for {self.shape}")

    @property
    def diagonal(self) -> Monomial:
        (i, k), (j, l) = self.rows, self.cols
        return Monomial.from_cells(self.shape, [(i, j), (k, l)])

    @property
    def antidiagonal(self) -> Monomial:
        (i, k), (j, l) = self.rows, self.cols
        return Monomial.from_cells(self.shape, [(i, l), (k, j)])

    def polynomial(self) -> dict[Monomial, int]:
        return {self.diagonal: 1, self.antidiagonal: -1}


class OrderKind(enum.Enum):
    PAPER_ROWS = "rows"
    PAPER_DIAGONALS = "diag"
    NATURAL_ROW_MAJOR = "natural"
    CUSTOM = "perm"


@dataclass(frozen=True)
class MonomialOrder:
    """Degrevlex order induced by a priority list of cells, highest first."""

    shape: MatrixShape
    kind: OrderKind
    priority: tuple[Cell, ...]
    rank: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        cells = self.shape.cells()
        if len(self.priority) != len(cells) or set(self.priority) != set(cells):
            raise ValueError("priority must list every cell of the shape exactly once")
        rank = [0] * self.shape.nvars
        for pos, c in enumerate(self.priority):
            rank[self.shape.index(c)] = pos
        object.__setattr__(self, "rank", tuple(rank))

    @classmethod
    def paper_rows(cls, shape: MatrixShape) -> "MonomialOrder":
        return cls(shape, OrderKind.PAPER_ROWS, tuple(shape.off_diagonal() + shape.diagonal()))

    @classmethod
    def paper_diagonals(cls, shape: MatrixShape) -> "MonomialOrder":
        # diagonals left to right (i - j decreasing), lower cell first on a diagonal
        off = sorted(shape.off_diagonal(), key=lambda c: (-(c[0] - c[1]), -c[0]))
        return cls(shape, OrderKind.PAPER_DIAGONALS, tuple(off + shape.diagonal()))

    @classmethod
    def natural(cls, shape: MatrixShape) -> "MonomialOrder":
        return cls(shape, OrderKind.NATURAL_ROW_MAJOR, tuple(shape.cells()))

    @classmethod
    def custom(cls, shape: MatrixShape, priority: Sequence[Cell]) -> "MonomialOrder":
        return cls(shape, OrderKind.CUSTOM, tuple(tuple(c) for c in priority))

    @classmethod
    def from_permutation_file(cls, shape: MatrixShape, path: str | Path) -> "MonomialOrder":
        return cls.custom(shape, read_permutation_file(shape, path))

    @property
    def name(self) -> str:
        return self.kind.value

    def key(self, mono: Monomial) -> tuple:
        """Sort key: larger key means larger monomial."""
        if mono.shape != self.shape:
            raise ShapeMismatchError(f"monomial over {mono.shape}, order over {self.shape}")
        e = mono.exponents
        # scan from the lowest-priority variable; a smaller exponent there wins
        return (mono.degree, tuple(-e[self.shape.index(c)] for c in reversed(self.priority)))


def read_permutation_file(shape: MatrixShape, path: str | Path) -> list[Cell]:
    """Parse ``i j`` lines, highest priority first; blank lines and ``#`` comments skipped."""
    cells: list[Cell] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise PermutationFileError(f"{path}:{lineno}: expected 'i j', got {raw!r}")
        try:
            cell = (int(parts[0]), int(parts[1]))
        except ValueError:
            raise PermutationFileError(f"{path}:{lineno}: non-integer entry {raw!r}") from None
        if not (1 <= cell[0] <= shape.m and 1 <= cell[1] <= shape.n):
            raise PermutationFileError(f"{path}:{lineno}: cell {cell} outside {shape}")
        cells.append(cell)
    if len(cells) != shape.nvars:
        raise PermutationFileError(f"{path}: expected {shape.nvars} cells, found {len(cells)}")
    if len(set(cells)) != len(cells):
        raise PermutationFileError(f"{path}: repeated cell")
    return cells


def order_from_name(shape: MatrixShape, name: str) -> MonomialOrder:
    """``rows``, ``diag``, ``natural`` or ``perm:<path>``."""
    if name == "rows":
        return MonomialOrder.paper_rows(shape)
    if name == "diag":
        return MonomialOrder.paper_diagonals(shape)
    if name == "natural":
        return MonomialOrder.natural(shape)
    if name.startswith("perm:"):
        return MonomialOrder.from_permutation_file(shape, name[5:])
    raise ValueError(f"unknown order {name!r}")


def compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder) -> int:
    """-1, 0 or 1 as ``a`` is smaller, equal or larger than ``b``."""
    _same_shape(a, b)
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def leading_term(minor: Minor2, order: MonomialOrder) -> Monomial:
    d, a = minor.diagonal, minor.antidiagonal
    return d if compare_monomials(d, a, order) > 0 else a


def initial_ideal_generators(shape: MatrixShape, order: MonomialOrder) -> list[Monomial]:
    """Leading terms of all 2-minors, one per minor, in minor order."""
    if order.shape != shape:
        raise ShapeMismatchError(f"order over {order.shape}, shape {shape}")
    return [leading_term(mi, order) for mi in shape.minors()]


# --- Groebner basis verification -------------------------------------------

Poly = dict[Monomial, Fraction]


def _leading(poly: Poly, order: MonomialOrder) -> Monomial:
    return max(poly, key=order.key)


def _add_scaled(target: Poly, poly: Poly, coeff: Fraction, shift: Monomial) -> None:
    for mono, c in poly.items():
        key = mono * shift
        v = target.get(key, 0) + coeff * c
        if v:
            target[key] = v
        else:
            target.pop(key, None)


def s_polynomial(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    lf, lg = _leading(f, order), _leading(g, order)
    lcm = lf.lcm(lg)
    out: Poly = {}
    _add_scaled(out, f, Fraction(1) / f[lf], lcm / lf)
    _add_scaled(out, g, Fraction(-1) / g[lg], lcm / lg)
    return out


def reduce_polynomial(poly: Poly, basis: Sequence[Poly], order: MonomialOrder) -> Poly:
    """Multivariate division remainder; the first divisor in basis order is used."""
    leads = [(_leading(b, order), b) for b in basis]
    p = dict(poly)
    remainder: Poly = {}
    while p:
        lt = _leading(p, order)
        c = p[lt]
        for lb, b in leads:
            if lb.divides(lt):
                _add_scaled(p, b, -c / b[lb], lt / lb)
                break
        else:
            remainder[lt] = c
            del p[lt]
    return remainder


@dataclass
class GroebnerReport:
    shape: MatrixShape
    order: str
    pairs_checked: int
    failed_pairs: list[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return not self.failed_pairs

    def to_dict(self) -> dict:
        return {
            "m": self.shape.m,
            "n": self.shape.n,
            "order": self.order,
            "ok": self.ok,
            "pairs_checked": self.pairs_checked,
            "failed_pairs": [list(p) for p in self.failed_pairs],
        }


def verify_groebner_basis(shape: MatrixShape, order: MonomialOrder) -> GroebnerReport:
    """Check that every S-polynomial of two 2-minors reduces to zero."""
    basis = [{mono: Fraction(c) for mono, c in mi.polynomial().items()} for mi in shape.minors()]
    pairs = list(itertools.combinations(range(len(basis)), 2))
    failed = [
        (a, b)
        for a, b in pairs
        if reduce_polynomial(s_polynomial(basis[a], basis[b], order), basis, order)
    ]
    return GroebnerReport(shape, order.name, len(pairs), failed)
