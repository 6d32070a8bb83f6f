"""Bundled Betti tables and the comparisons run against them.

Each table is a small text file under ``data/``: ``#`` provenance comments,
``key: value`` headers, then one ``k: ...`` line per row listing
beta_{i,i+k} for i = 0, 1, ...
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .homology import BettiTable
from .orders import Cell, MatrixShape, ShapeMismatchError


@dataclass
class FixtureTable:
    name: str
    shape: MatrixShape
    entries: BettiTable
    ideal: str = "in(I2)"
    order: str | None = None
    priority: list[Cell] | None = None
    provenance: list[str] = field(default_factory=list)
    source: str = ""

    @property
    def is_minors(self) -> bool:
        return self.ideal == "I2"

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "m": self.shape.m,
            "n": self.shape.n,
            "ideal": self.ideal,
            "order": self.order,
            "provenance": self.provenance,
            "table": self.entries.to_dict(),
        }
        if self.priority is not None:
            out["priority"] = [list(c) for c in self.priority]
        return out


def parse_fixture(text: str, source: str = "") -> FixtureTable:
    meta: dict[str, str] = {}
    rows: dict[int, list[int]] = {}
    notes = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            notes.append(line.lstrip("# ").rstrip())
            continue
        key, _, value = line.partition(":")
        key = key.strip()
        if key.isdigit():
            rows[int(key)] = [int(x) for x in value.split()]
        else:
            meta[key] = value.strip()
    m, n = (int(x) for x in meta["shape"].split())
    priority = None
    if "priority" in meta:
        priority = [tuple(int(x) for x in tok.split(",")) for tok in meta["priority"].split()]
    grid = [rows.get(k, []) for k in range(max(rows) + 1)]
    return FixtureTable(
        name=meta["name"],
        shape=MatrixShape(m, n),
        entries=BettiTable.from_grid(grid),
        ideal=meta.get("ideal", "in(I2)"),
        order=meta.get("order"),
        priority=priority,
        provenance=notes,
        source=source,
    )


def load_fixtures() -> dict[str, FixtureTable]:
    out = {}
    for entry in sorted(resources.files(__package__).joinpath("data").iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".txt"):
            fx = parse_fixture(entry.read_text(), entry.name)
            out[fx.name] = fx
    return out


def get_fixture(name: str) -> FixtureTable:
    fixtures = load_fixtures()
    if name in fixtures:
        return fixtures[name]
    # also accept the file stem
    for fx in fixtures.values():
        if fx.source.removesuffix(".txt") == name:
            return fx
    raise KeyError(f"no fixture named {name!r}; known: {', '.join(fixtures)}")


def minors_fixture(shape: MatrixShape) -> FixtureTable | None:
    for fx in load_fixtures().values():
        if fx.is_minors and fx.shape == shape:
            return fx
    return None


# --- comparisons -----------------------------------------------------------


@dataclass
class FactReport:
    """Checks that any initial ideal of a homogeneous ideal must pass."""

    dominance_failures: list[tuple[int, int, int, int]] = field(default_factory=list)
    antidiagonal_failures: list[tuple[int, int, int]] = field(default_factory=list)
    diagonal_failures: list[int] = field(default_factory=list)
    top_degree_failures: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.dominance_failures or self.antidiagonal_failures or self.diagonal_failures or self.top_degree_failures
        )

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "dominance_failures": [list(x) for x in self.dominance_failures],
            "antidiagonal_failures": [list(x) for x in self.antidiagonal_failures],
            "diagonal_failures": self.diagonal_failures,
            "top_degree_failures": self.top_degree_failures,
        }


def fact_checks(initial: BettiTable, minors: BettiTable, height: int) -> FactReport:
    """(a) entrywise dominance over the minors table, (b) equal alternating
    anti-diagonal sums, (c) beta_{k,k} = 0 for k > 0, (d) t_i strictly
    increasing for i up to the height."""
    rep = FactReport()
    for key in sorted(set(initial.entries) | set(minors.entries)):
        if minors[key] > initial[key]:
            rep.dominance_failures.append((*key, minors[key], initial[key]))
    a, b = initial.antidiagonal_sums(), minors.antidiagonal_sums()
    for j in sorted(set(a) | set(b)):
        if a.get(j, 0) != b.get(j, 0):
            rep.antidiagonal_failures.append((j, a.get(j, 0), b.get(j, 0)))
    for table in (initial, minors):
        for k in range(1, table.pdim + 1):
            if table[k, k]:
                rep.diagonal_failures.append(k)
    for table in (initial, minors):
        for i in range(1, min(height, table.pdim) + 1):
            hi, lo = table.top_degree(i), table.top_degree(i - 1)
            if hi is None or lo is None or hi <= lo:
                rep.top_degree_failures.append(i)
    return rep


@dataclass
class FixtureComparison:
    fixture: str
    diff: list[tuple[int, int, int, int]]
    facts: FactReport | None = None

    @property
    def ok(self) -> bool:
        return not self.diff and (self.facts is None or self.facts.ok)

    def to_dict(self) -> dict:
        return {
            "fixture": self.fixture,
            "equal": not self.diff,
            "diff": [{"i": i, "j": j, "computed": c, "fixture": f} for i, j, c, f in self.diff],
            "facts": None if self.facts is None else self.facts.to_dict(),
        }


def table_diff(computed: BettiTable, expected: BettiTable) -> list[tuple[int, int, int, int]]:
    keys = sorted(set(computed.entries) | set(expected.entries))
    return [(i, j, computed[i, j], expected[i, j]) for i, j in keys if computed[i, j] != expected[i, j]]


def compare_with_fixture(
    computed: BettiTable, fixture: FixtureTable, shape: MatrixShape | None = None
) -> FixtureComparison:
    """Entrywise diff against ``fixture`` plus the fact checks against the
    bundled minors table of the same shape (when one exists)."""
    if shape is not None and shape != fixture.shape:
        raise ShapeMismatchError(f"computed table is for {shape}, fixture {fixture.name!r} is for {fixture.shape}")
    out = FixtureComparison(fixture.name, table_diff(computed, fixture.entries))
    ref = minors_fixture(fixture.shape)
    if ref is not None:
        height = (fixture.shape.m - 1) * (fixture.shape.n - 1)
        out.facts = fact_checks(computed, ref.entries, height)
    return out
