"""Command-line interface: ``surftile <command> ...``.

Exit status is 0 on success, 1 on a domain error (bad input file,
inadmissible parameters) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, FORMAT_SCHEMA_VERSION
from .convert import (VertexSetError, check_pair_conditions, check_vertexset, diagram_to_vertexset,
                      serialize_vertexset, vertexset_from_obj, vertexset_to_diagram)
from .diagram import DiagramError, diagram_from_obj, serialize_diagram
from .distinctlen import two_tile_distinct_family
from .enumeration import (GENERAL, ORIENTABLE, BudgetExceeded, CountTable, EnumerationError, EnumSpec,
                          enumerate_tilings, table_from_records)
from .geomfilter import build_angle_system, check_positive_solution, edge_classes
from .render import render_svg
from .topology import TopologyError, classify_surface, connectivity, parse_surface


class CLIError(Exception):
    pass


def _read_input(path):
    """Load a diagram or a vertex set; returns ``(diagram, vertexset)``."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CLIError(f"{path}: malformed JSON: {exc}") from None
    if isinstance(obj, dict) and "diagram" in obj:  # a TilingRecord line
        obj = obj["diagram"]
    if isinstance(obj, dict) and "vertices" in obj and "pairs" not in obj:
        vs = vertexset_from_obj(obj)
        return vertexset_to_diagram(vs), vs
    d = diagram_from_obj(obj)
    return d, None


def _write(data: bytes, out):
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def cmd_enumerate(args):
    split = args.split
    if args.mode == ORIENTABLE and split is None:
        raise CLIError("--mode orientable needs --split")
    spec = EnumSpec(args.n, args.f, args.mode, split if args.mode == ORIENTABLE else None,
                    args.surface, require_angle_feasible=not args.no_angle_filter)
    records = enumerate_tilings(spec, workers=args.threads)
    lines = b"".join(json.dumps(r.to_obj(), separators=(",", ":")).encode() + b"\n" for r in records)
    _write(lines, args.out)
    print(f"{len(records)} tilings", file=sys.stderr)


def _table_specs(n, f, surface, modes):
    surf = parse_surface(surface)
    specs = []
    if surf.orientable:
        for s in range(f, (f + 1) // 2 - 1, -1):
            if 2 * s >= f:
                specs.append(EnumSpec(n, f, ORIENTABLE, s, surface))
        if modes == "all":
            specs.append(EnumSpec(n, f, GENERAL, None, surface))
    else:
        specs.append(EnumSpec(n, f, GENERAL, None, surface))
    return specs


def cmd_table(args):
    table = CountTable()
    for spec in _table_specs(args.n, args.f, args.surface, args.modes):
        table.rows[(spec.target, spec.n, spec.mode, spec.split)] = [0] * (spec.n + 1)
        table_from_records(enumerate_tilings(spec, workers=args.threads), table)
    sys.stdout.write(table.to_csv())


def cmd_convert(args):
    d, _ = _read_input(args.inp)
    if args.to == "vertexset":
        data = serialize_vertexset(diagram_to_vertexset(d))
    else:
        data = serialize_diagram(d)
    _write(data + b"\n", args.out)


def cmd_check(args):
    d, vs = _read_input(args.inp)
    lines = []
    if vs is not None:
        lines += ["vertex-set conditions:"] + ["  " + s for s in check_vertexset(vs).lines()]
    vs = diagram_to_vertexset(d)
    rep = check_pair_conditions(d)
    lines += ["pair conditions:"] + ["  " + s for s in rep.lines()]
    lines.append(f"connected: {'yes' if connectivity(d) else 'no'}")
    lines.append(f"vertex degrees: {' '.join(str(k) for k in sorted(vs.degrees))}")
    lines.append(f"valid: {'yes' if rep.ok and connectivity(d) else 'no'}")
    if args.angles:
        verdict = check_positive_solution(build_angle_system(vs))
        if verdict.feasible:
            lines.append("angles: feasible")
            lines.append("witness (units of 2pi): " + " ".join(verdict.witness_strings()))
        else:
            lines.append("angles: infeasible (no strictly positive solution)")
    print("\n".join(lines))


def cmd_classify(args):
    d, _ = _read_input(args.inp)
    surf = classify_surface(d)
    orient = "orientable" if surf.orientable else "nonorientable"
    print(f"{surf.name}, chi={surf.chi}, {orient}, edge_classes={len(edge_classes(d))}")


def cmd_distinct(args):
    if args.n < 7:
        raise CLIError("--n must be at least 7")
    rows = ["tau,indices,surface,chi"]
    for ks, _d, surf in two_tile_distinct_family(args.n):
        rows.append(f"{ks.tau},{';'.join(map(str, ks.indices))},{surf.name},{surf.chi}")
    print("\n".join(rows))


def cmd_render(args):
    d, _ = _read_input(args.inp)
    title = None
    if connectivity(d):
        title = f"{classify_surface(d).name}, n={d.n}, f={d.f}"
    Path(args.out).write_text(render_svg(d, title), encoding="utf-8")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="surftile", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version",
                    version=f"surftile {__version__} (format schema {FORMAT_SCHEMA_VERSION})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list all tilings as JSON lines")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", type=int, default=2)
    p.add_argument("--mode", choices=[GENERAL, ORIENTABLE], default=GENERAL)
    p.add_argument("--split", type=int)
    p.add_argument("--surface")
    p.add_argument("--no-angle-filter", action="store_true")
    p.add_argument("--out")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("table", help="counts by number of edge lengths (CSV)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", type=int, default=2)
    p.add_argument("--surface", required=True)
    p.add_argument("--modes", choices=["default", "all"], default="default")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("convert", help="diagram <-> vertex set")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--to", choices=["vertexset", "diagram"], required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("check", help="validity report")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--angles", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="surface, chi, orientability, edge classes")
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("distinct-lengths", help="two-tile tilings with all lengths distinct (CSV)")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_distinct)

    p = sub.add_parser("render", help="SVG chord schematic")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be positive")
    try:
        args.func(args)
    except (CLIError, DiagramError, VertexSetError, TopologyError, EnumerationError, BudgetExceeded) as exc:
        print(f"surftile: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
