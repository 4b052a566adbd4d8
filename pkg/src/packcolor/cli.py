"""Command-line entry point: ``packcolor <command> ...``."""
from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Sequence

from .appendix import AppendixParseError, parse_appendix
from .claws import BIG, SMALL, dump_catalog
from .configs import ConfigError, get_config, verify
from .discharge import audit
from .graph import GraphError, parse_edge_list, parse_rotation
from .sharpness import sharpness_search
from .solver import UNCOLORED, extend, format_coloring, parse_spec, solve

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_UNSAT = 3


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _parse_partial(text: str, n: int, spec) -> list[int]:
    """Lines ``v color`` (0-based vertex, color as integer or name)."""
    col = [UNCOLORED] * n
    for i, ln in enumerate(text.splitlines(), 1):
        ln = ln.split("#")[0].strip()
        if not ln:
            continue
        parts = ln.replace("=", " ").split()
        if len(parts) != 2 or not parts[0].isdigit():
            raise ValueError(f"partial line {i}: expected 'vertex color'")
        v = int(parts[0])
        if v >= n:
            raise ValueError(f"partial line {i}: vertex {v} out of range")
        col[v] = spec.parse_color(parts[1])
    return col


def cmd_solve(a) -> int:
    g = parse_edge_list(_read(a.graph))
    spec = parse_spec(a.spec)
    if a.partial:
        res = extend(g, spec, _parse_partial(_read(a.partial), g.n, spec))
    else:
        res = solve(g, spec)
    status = "SAT" if res.sat else "UNSAT"
    if a.tsv:
        print(f"status\t{status}\nspec\t{spec}\nnodes\t{res.nodes}")
        if res.sat:
            for v, c in enumerate(res.coloring):
                print(f"{v}\t{c}\t{spec.color_name(c)}")
    else:
        print(f"{status} spec=({spec}) nodes={res.nodes}")
        if res.sat:
            sys.stdout.write(format_coloring(g, spec, res.coloring))
    return EXIT_OK if res.sat else EXIT_UNSAT


def _load_config(ref: str):
    if os.path.exists(ref):
        return parse_appendix(_read(ref))
    return get_config(ref)


def cmd_verify(a) -> int:
    cfg = _load_config(a.config)
    rep = verify(cfg, parse_spec(a.spec), workers=a.workers)
    if a.tsv:
        print(f"configuration\t{rep.name}\nboundary\t{rep.boundary_size}\n"
              f"catalog_small\t{rep.catalog_sizes[SMALL]}\ncatalog_big\t{rep.catalog_sizes[BIG]}\n"
              f"consistent\t{rep.consistent}\nbad_raw\t{rep.raw_bad}\nbad_concrete\t{rep.concrete_orbits}\n"
              f"bad\t{rep.bad_count}")
        for b in rep.bad:
            print("case\t" + "\t".join(map(str, b)))
    else:
        sys.stdout.write(rep.format(a.expect))
    if a.expect is not None and a.expect != rep.bad_count:
        print(f"expected {a.expect} bad cases, found {rep.bad_count}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_claws(a) -> int:
    text = dump_catalog(a.kind)
    if a.tsv:
        text = "".join(ln.replace(" ", "\t") + "\n" if not ln.startswith("#") else ln + "\n"
                       for ln in text.splitlines())
    sys.stdout.write(text)
    return EXIT_OK


def cmd_discharge(a) -> int:
    e = parse_rotation(_read(a.embedding))
    rep = audit(e, a.theorem)
    sys.stdout.write(rep.format(tsv=a.tsv))
    return EXIT_OK


def cmd_sharpness(a) -> int:
    cert = sharpness_search()
    sys.stdout.write(cert.format())
    return EXIT_OK if cert.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="packcolor", description="Packing (1^j, 2^k)-coloring toolkit")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("solve", help="color a graph or extend a partial coloring")
    s.add_argument("graph", help="edge list file: 'n m' then 'u v' lines")
    s.add_argument("--spec", required=True, help="e.g. 1^2,2^7")
    s.add_argument("--partial", help="file of 'vertex color' lines")
    s.set_defaults(fn=cmd_solve)

    s = sub.add_parser("verify-config", help="enumerate boundary colorings of a configuration")
    s.add_argument("config", help="builtin name (see README) or input file")
    s.add_argument("--spec", default="1^2,2^7", help="catalogs need 1^2,2^k with k >= 3 (default 1^2,2^7)")
    s.add_argument("--expect", type=int, help="exit nonzero unless this many canonical bad cases")
    s.add_argument("--workers", type=int, default=None)
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("claws", help="dump a claw catalog")
    s.add_argument("--kind", choices=(SMALL, BIG), required=True)
    s.set_defaults(fn=cmd_claws)

    s = sub.add_parser("discharge", help="audit a plane embedding")
    s.add_argument("embedding", help="rotation file: 'v: a b c' lines")
    s.add_argument("--theorem", type=int, choices=(1, 2), default=1)
    s.set_defaults(fn=cmd_discharge)

    s = sub.add_parser("sharpness", help="search and certify the 8-vertex extremal graph")
    s.set_defaults(fn=cmd_sharpness)

    for sp in sub.choices.values():
        sp.add_argument("--tsv", action="store_true", help="tab-separated output")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    p = build_parser()
    try:
        a = p.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(message)s")
    try:
        return a.fn(a)
    except (OSError, ValueError, GraphError, ConfigError, AppendixParseError) as exc:
        print(f"packcolor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
