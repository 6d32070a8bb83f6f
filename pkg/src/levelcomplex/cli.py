"""Command-line front end.

Exit codes: 0 when every check passed, 1 when a verified property failed
(a finding), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import canonical as canon
from .complexes import (
    boundary_faces,
    complex_text,
    delta,
    f_vector,
    facet_count,
    h_vector_from_f,
    is_quasimanifold,
    path_facets,
)
from .fixtures import compare_with_fixture, fact_checks, get_fixture, load_fixtures, minors_fixture
from .homology import FieldSpec, GuardExceeded, default_threads, hochster_betti_table, reduced_homology_dims
from .orders import (
    MonomialOrder,
    MatrixShape,
    OrderKind,
    PermutationFileError,
    ShapeMismatchError,
    order_from_name,
    verify_groebner_basis,
)
from .shelling import shelling_order, theorem_intersection_check, verify_shelling, vertex_partition

HOCHSTER_GUARD = 20


class BadInput(Exception):
    pass


@dataclass
class RunConfig:
    shape: MatrixShape
    order: MonomialOrder
    field: FieldSpec
    threads: int
    output: Path | None
    format: str
    force: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        try:
            shape = MatrixShape(args.m, args.n)
            order = order_from_name(shape, args.order)
            fld = FieldSpec.parse(args.field)
        except (PermutationFileError, ShapeMismatchError, ValueError, OSError) as exc:
            raise BadInput(str(exc)) from exc
        threads = args.threads if args.threads is not None else default_threads()
        if threads < 1:
            raise BadInput("--threads must be at least 1")
        return cls(shape, order, fld, threads, args.output, args.format, args.force)


def _cells(cells) -> list[list[int]]:
    return [list(c) for c in cells]


def _complex(cfg: RunConfig):
    """Reduced Stanley-Reisner complex of the chosen initial ideal."""
    return canon.reduced_complex(cfg.shape, cfg.order)


def _header(cfg: RunConfig) -> dict:
    return {"m": cfg.shape.m, "n": cfg.shape.n, "order": cfg.order.name, "field": str(cfg.field)}


# --- subcommands -----------------------------------------------------------
# Each returns (payload dict, text rendering, ok flag).


def cmd_facets(cfg: RunConfig, args):
    c, cps = _complex(cfg)
    facets = [c.cells(f) for f in c.facets]
    payload = _header(cfg) | {"cone_points": _cells(cps), "count": len(facets), "facets": [_cells(f) for f in facets]}
    text = "\n".join(" ".join(f"({i},{j})" for i, j in f) for f in facets)
    ok = True
    if cfg.order.kind is OrderKind.PAPER_ROWS:
        # dual construction must agree with the lattice paths
        want = {frozenset(f) for f in path_facets(cfg.shape)}
        ok = {frozenset(f) for f in facets} == want and len(facets) == facet_count(cfg.shape)
        payload["matches_paths"] = ok
    return payload, text, ok


def cmd_complex(cfg: RunConfig, args):
    c, cps = _complex(cfg)
    f = f_vector(c)
    payload = _header(cfg) | {
        "cone_points": _cells(cps),
        "vertices": _cells(c.vertices),
        "facets": [_cells(c.cells(x)) for x in c.facets],
        "dim": c.dim,
        "f_vector": f.counts,
        "h_vector": h_vector_from_f(f),
        "reduced_homology": reduced_homology_dims(c, cfg.field),
    }
    text = complex_text(c) + f"\n# f = {f.counts}\n# h = {payload['h_vector']}"
    return payload, text, True


def cmd_gb_verify(cfg: RunConfig, args):
    rep = verify_groebner_basis(cfg.shape, cfg.order)
    payload = rep.to_dict()
    text = f"{rep.pairs_checked} S-pairs checked, {len(rep.failed_pairs)} failed: {'ok' if rep.ok else 'FAIL'}"
    return payload, text, rep.ok


def _betti(cfg: RunConfig):
    c, _ = _complex(cfg)
    try:
        return hochster_betti_table(c, cfg.field, threads=cfg.threads, guard=HOCHSTER_GUARD, force=cfg.force)
    except GuardExceeded as exc:
        raise BadInput(f"{exc}; pass --force to run anyway") from exc


def _fixture_for(cfg: RunConfig):
    """Bundled table computed with the same order, if any."""
    for fx in load_fixtures().values():
        if fx.shape != cfg.shape or fx.is_minors:
            continue
        if fx.order == cfg.order.name and cfg.order.kind is not OrderKind.CUSTOM:
            return fx
        if fx.priority is not None and tuple(fx.priority) == cfg.order.priority:
            return fx
    return None


def cmd_betti(cfg: RunConfig, args):
    table = _betti(cfg)
    payload = _header(cfg) | {"table": table.to_dict()}
    fx = get_fixture(args.fixture) if args.fixture else _fixture_for(cfg)
    ok = True
    if fx is not None:
        cmp = compare_with_fixture(table, fx, cfg.shape)
        payload["comparison"] = cmp.to_dict()
        ok = cmp.ok
    if cfg.format == "csv":
        text = table.to_csv()
    else:
        text = table.to_text()
        if fx is not None:
            text += f"\n# vs {fx.name}: {'equal' if not cmp.diff else f'{len(cmp.diff)} entries differ'}"
            for d in cmp.diff:
                text += f"\n#   beta_{{{d[0]},{d[1]}}}: computed {d[2]}, fixture {d[3]}"
    return payload, text, ok


def cmd_canonical(cfg: RunConfig, args):
    c, cps = _complex(cfg)
    gens = canon.minimal_canonical_generators(c, cfg.field)
    gp = canon.gprime_by_size(c, cfg.field)
    top = args.max_degree
    dims = {str(i): canon.graded_dimension(gp, i, canon.COMPOSITIONS) for i in range(top + 1)}
    powers = {str(i): canon.graded_dimension(gp, i, canon.PAPER_POWERS) for i in range(top + 1)}
    payload = _header(cfg) | {
        "generators": [_cells(c.cells(g)) for g in gens],
        "gprime_sizes": gp,
        "omega_dims": dims,
        "omega_dims_paper_rule": powers,
        "notes": [
            f"degree {i}: k^(i-k) rule gives {powers[i]}, composition count gives {dims[i]}"
            for i in dims
            if dims[i] != powers[i]
        ],
    }
    ok = True
    if cfg.order.kind is OrderKind.PAPER_ROWS:
        formula = [canon.gprime_closed_formula(cfg.shape, i) for i in range(len(gp))]
        payload["gprime_closed_formula"] = formula
        ok = formula == gp
    lines = ["G = " + "; ".join(" ".join(f"({i},{j})" for i, j in c.cells(g)) or "{}" for g in gens)]
    lines.append(f"|G'_i| = {gp}")
    lines += [f"dim omega_{i} = {dims[i]} (k^(i-k) rule: {powers[i]})" for i in dims]
    return payload, "\n".join(lines), ok


def cmd_level(cfg: RunConfig, args):
    rep = canon.level_report(cfg.shape, cfg.order, cfg.field, args.max_degree)
    payload = _header(cfg) | rep.to_dict()
    lines = [
        f"Cohen-Macaulay: {rep.cohen_macaulay}",
        f"generator degrees: {rep.generator_degrees}",
        f"type: {rep.cm_type}",
        f"a-invariant: {rep.a_invariant} (reduced complex), {rep.a_invariant_ambient} (ambient ring)",
        f"level: {rep.is_level}",
        f"Gorenstein: {rep.is_gorenstein}",
    ]
    lines += [f"note: {x}" for x in rep.notes]
    lines += [f"FINDING: {x}" for x in rep.findings]
    return payload, "\n".join(lines), not rep.findings


def cmd_hilbert(cfg: RunConfig, args):
    c, _ = _complex(cfg)
    hs = canon.hs_from_f_vector(f_vector(c))
    dual = canon.hs_duality(hs, c.dim + 1, args.max_degree)
    payload = _header(cfg) | {
        "numerator": hs.numerator,
        "denominator_power": hs.denominator_power,
        "ring_dims": {str(i): v for i, v in enumerate(hs.coefficients(args.max_degree))},
        "omega_dims_duality": {str(k): v for k, v in dual.items()},
    }
    num = " + ".join(f"{a}t^{k}" for k, a in enumerate(hs.numerator) if a)
    text = f"HS = ({num}) / (1-t)^{hs.denominator_power}\nomega dims: {dual}"
    return payload, text, True


def cmd_shelling(cfg: RunConfig, args):
    c = delta(cfg.shape)
    order = shelling_order(cfg.shape)
    rep = verify_shelling(c, order)
    payload = _header(cfg) | rep.to_dict(args.direction)
    payload["order"] = "shelling"
    parts_ok = all(
        set(fwd) == vertex_partition(f, cfg.shape).minus and set(bwd) == vertex_partition(f, cfg.shape).plus
        for f, fwd, bwd in zip(order, rep.restriction_faces, rep.restriction_faces_backward)
    )
    payload["restrictions_match_partition"] = parts_ok
    ok = parts_ok
    if args.direction in ("forward", "both"):
        ok &= rep.ok_forward
    if args.direction in ("backward", "both"):
        ok &= rep.ok_backward
    lines = [f"{len(order)} facets; forward {rep.ok_forward}, backward {rep.ok_backward}"]
    for k, f in enumerate(order):
        lines.append(
            f"{k:>4} " + " ".join(f"({i},{j})" for i, j in f)
            + "  R=" + (" ".join(f"({i},{j})" for i, j in rep.restriction_faces[k]) or "{}")
        )
    if rep.ok_forward:
        lines.append(f"h = {payload.get('h_vector')}")
    return payload, "\n".join(lines), bool(ok)


def cmd_report(cfg: RunConfig, args):
    """Run every check that applies to the shape and order."""
    shape, fld = cfg.shape, cfg.field
    checks: dict[str, bool] = {}
    c, cps = _complex(cfg)
    gb = verify_groebner_basis(shape, cfg.order) if shape.nvars <= 12 else None
    if gb is not None:
        checks["groebner"] = gb.ok
    checks["sr_complex_pure"] = c.is_pure()
    if cfg.order.kind is OrderKind.PAPER_ROWS:
        d = delta(shape)
        checks["facets_match_paths"] = c == d and len(d.facets) == facet_count(shape)
        checks["quasimanifold"] = is_quasimanifold(d, fld).ok
        checks["shelling_two_way"] = theorem_intersection_check(d, shape)
        if shape.m < shape.n:
            boundary_faces(d, shape)
    lvl = canon.level_report(shape, cfg.order, fld, args.max_degree)
    checks["cohen_macaulay"] = lvl.cohen_macaulay
    checks["canonical_consistent"] = not lvl.findings
    payload = _header(cfg) | {
        "cone_points": _cells(cps),
        "facet_count": len(c.facets),
        "f_vector": f_vector(c).counts,
        "level": lvl.is_level,
        "gorenstein": lvl.is_gorenstein,
        "type": lvl.cm_type,
        "degrees": lvl.generator_degrees,
        "a_invariant": lvl.a_invariant,
        "a_invariant_ambient": lvl.a_invariant_ambient,
        "notes": lvl.notes,
        "findings": lvl.findings,
    }
    if len(c.vertices) <= HOCHSTER_GUARD or cfg.force:
        table = hochster_betti_table(c, fld, threads=cfg.threads, force=True)
        payload["betti"] = table.to_dict()
        ref = minors_fixture(shape)
        if ref is not None:
            facts = fact_checks(table, ref.entries, (shape.m - 1) * (shape.n - 1))
            payload["facts"] = facts.to_dict()
            checks["betti_facts"] = facts.ok
        fx = _fixture_for(cfg)
        if fx is not None:
            cmp = compare_with_fixture(table, fx, shape)
            payload["comparison"] = cmp.to_dict()
            checks["fixture"] = cmp.ok
    payload["checks"] = checks
    ok = all(checks.values())
    payload["ok"] = ok
    lines = [f"{k}: {'pass' if v else 'FAIL'}" for k, v in checks.items()]
    lines.append(f"level: {lvl.is_level}, type {lvl.cm_type}, degrees {lvl.generator_degrees}")
    lines += [f"note: {x}" for x in lvl.notes]
    return payload, "\n".join(lines), ok


def cmd_fixtures(args) -> tuple[dict, str, bool]:
    fixtures = load_fixtures()
    if args.action == "list":
        payload = {"fixtures": [{"name": k, "m": v.shape.m, "n": v.shape.n, "ideal": v.ideal} for k, v in fixtures.items()]}
        return payload, "\n".join(f"{k}\t{v.shape}" for k, v in fixtures.items()), True
    if not args.name:
        raise BadInput("fixtures show needs a name")
    try:
        fx = get_fixture(args.name)
    except KeyError as exc:
        raise BadInput(str(exc)) from exc
    text = "\n".join(f"# {p}" for p in fx.provenance) + f"\n{fx.name}\n" + fx.entries.to_text()
    return fx.to_dict(), text, True


COMMANDS = {
    "facets": cmd_facets,
    "complex": cmd_complex,
    "gb-verify": cmd_gb_verify,
    "betti": cmd_betti,
    "canonical": cmd_canonical,
    "level": cmd_level,
    "hilbert": cmd_hilbert,
    "shelling": cmd_shelling,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="levelcomplex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, required=True)
    common.add_argument("--n", type=int, required=True)
    common.add_argument("--order", default="rows", help="rows, diag, natural or perm:<file>")
    common.add_argument("--field", default="Q", help="Q or a prime p")
    common.add_argument("--threads", type=int, default=None, help="default: $LEVELCOMPLEX_THREADS or 1")
    common.add_argument("--output", type=Path, default=None)
    common.add_argument("--force", action="store_true", help="lift the Hochster vertex guard")

    def add(name, formats=("json", "text"), default="json"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--format", choices=formats, default=default)
        return p

    add("facets")
    add("complex")
    add("gb-verify")
    p = add("betti", ("json", "text", "csv"), "text")
    p.add_argument("--fixture", default=None, help="compare with this bundled table")
    for name in ("canonical", "level", "hilbert", "report"):
        add(name).add_argument("--max-degree", type=int, default=None)
    add("shelling").add_argument("--direction", choices=("forward", "backward", "both"), default="both")

    p = sub.add_parser("fixtures")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--output", type=Path, default=None)
    return parser


def _emit(payload: dict, text: str, fmt: str, output: Path | None) -> None:
    body = json.dumps(payload, indent=2) if fmt == "json" else text
    if output is None:
        sys.stdout.write(body + "\n")
    else:
        output.write_text(body + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "fixtures":
            payload, text, ok = cmd_fixtures(args)
            _emit(payload, text, args.format, args.output)
            return 0 if ok else 1
        cfg = RunConfig.from_args(args)
        if getattr(args, "max_degree", None) is None and hasattr(args, "max_degree"):
            args.max_degree = 2 * cfg.shape.n
        payload, text, ok = COMMANDS[args.command](cfg, args)
    except BadInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(payload, text, cfg.format, cfg.output)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
