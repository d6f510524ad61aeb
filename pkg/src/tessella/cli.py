"""``tessella`` command line.

Exit codes: 0 tileable / success, 1 untileable (or invalid tiling),
2 usage or format error, 3 budget or cap exceeded.
"""
from __future__ import annotations

import argparse
from dataclasses import asdict
import json
import sys

from .bench import SOLVERS, bench_run
from .dominol import Untileable, alg_decide, alg_tile
from .enumeration import MAX_ENUMERATION_SIZE, enumerate_fixed_polyominoes, gen_random_polyomino
from .formats import (
    FormatError,
    emit_region,
    emit_tileset,
    emit_tiling,
    parse_region,
    parse_tileset,
    parse_tiling,
    region_to_obj,
)
from .fountain import CapExceeded, NoSeed, alg2_tile, count_subtiles_by_spokes, fsgen, plus_subtile_set
from .lattice import DOMINO_L, S2, SA, DimensionError, Tile, TileSet, is_connected, validate_tiling
from .oracle import BudgetExceeded, find_tiling
from .render import render
from .sa import sa_decide, sa_tile

EXIT_OK, EXIT_UNTILEABLE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
BUILTIN_TILESETS = {"domino-l": DOMINO_L, "s2": S2, "sa": SA}


class _Usage(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise _Usage(f"cannot read {path}: {e.strerror}") from None


def _write(path: str, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise _Usage(f"cannot write {path}: {e.strerror}") from None


def _tileset(args) -> tuple[str, TileSet]:
    name = args.tileset
    if name in BUILTIN_TILESETS:
        return name, BUILTIN_TILESETS[name]
    return "file", parse_tileset(_read(name))


def _fmt(args) -> str:
    return "json" if args.json else "ascii"


def _solve(kind: str, ts: TileSet, region, args):
    """A tiling, or None when untileable."""
    try:
        if args.exact or kind == "file":
            return find_tiling(region, ts)
        if kind == "domino-l":
            return alg_tile(region, search=args.search)
        if kind == "s2":
            return alg2_tile(region, S2)
        return sa_tile(region)
    except (Untileable, NoSeed):
        return None


def _decide(kind: str, ts: TileSet, region, args) -> bool:
    if args.exact or kind == "file":
        return find_tiling(region, ts) is not None
    if kind == "domino-l":
        return alg_decide(region, search=args.search)
    if kind == "s2":
        return len(region) >= 2  # every connected region of two or more cells
    return sa_decide(region)


def cmd_tile(args) -> int:
    kind, ts = _tileset(args)
    region = parse_region(_read(args.inp), _fmt(args))
    tiling = _solve(kind, ts, region, args)
    if tiling is None:
        print("untileable", file=sys.stderr)
        return EXIT_UNTILEABLE
    _write(args.out, emit_tiling(tiling, _fmt(args)))
    return EXIT_OK


def cmd_check(args) -> int:
    kind, ts = _tileset(args)
    text = _read(args.inp)
    if args.validate:
        tiling = parse_tiling(text, ts, _fmt(args))
        v = validate_tiling(tiling)
        _write(args.out, "valid" if v is None else f"invalid: {v.kind}: {v.message}")
        return EXIT_OK if v is None else EXIT_UNTILEABLE
    region = parse_region(text, _fmt(args))
    if kind == "s2" and not args.exact and not is_connected(region):
        raise _Usage("the s2 decision needs a connected region")
    ok = _decide(kind, ts, region, args)
    _write(args.out, "tileable" if ok else "untileable")
    return EXIT_OK if ok else EXIT_UNTILEABLE


def cmd_fsgen(args) -> int:
    if args.inp is not None:
        gens = parse_tileset(_read(args.inp)).tiles
    else:
        gens = [Tile(((0,) * args.dim, (1,) + (0,) * (args.dim - 1)), name="domino")]
    try:
        ts = fsgen(gens, args.dim)
    except CapExceeded as e:
        print(f"{e}", file=sys.stderr)
        if e.partial is not None:
            _write(args.out, emit_tileset(e.partial))
        return EXIT_BUDGET
    _write(args.out, emit_tileset(ts))
    return EXIT_OK


def cmd_subtiles(args) -> int:
    if args.dim < 1:
        raise _Usage("--dim must be at least 1")
    if args.size is not None:
        _write(args.out, str(count_subtiles_by_spokes(args.dim, args.size)))
    elif args.count:
        _write(args.out, str(len(plus_subtile_set(args.dim))))
    else:
        _write(args.out, emit_tileset(plus_subtile_set(args.dim)))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    n = args.size
    if n is None or not 1 <= n <= MAX_ENUMERATION_SIZE:
        raise _Usage(f"--size must be in 1..{MAX_ENUMERATION_SIZE}")
    polys = enumerate_fixed_polyominoes(n)
    if args.count:
        _write(args.out, str(len(polys)))
    elif args.json:
        _write(args.out, "\n".join(json.dumps(region_to_obj(p)) for p in polys))
    else:
        _write(args.out, "\n\n".join(emit_region(p) for p in polys))
    return EXIT_OK


def cmd_random(args) -> int:
    if args.size is None or args.size < 1:
        raise _Usage("--size must be a positive integer")
    p = gen_random_polyomino(args.size, seed=args.seed)
    _write(args.out, emit_region(p, _fmt(args)))
    return EXIT_OK


def cmd_bench(args) -> int:
    solver = args.tileset if args.tileset in SOLVERS else None
    if solver is None:
        raise _Usage(f"bench --tileset must be one of {', '.join(SOLVERS)}")
    top = args.size or 100_000
    sizes = []
    n = 1000
    while n <= top:
        sizes.append(n)
        n *= 10
    if not sizes:
        raise _Usage("--size must be at least 1000")
    report = bench_run(sizes, solver, repetitions=args.count_value or 3, seed=args.seed)
    if args.json:
        obj = {
            "solver": solver,
            "records": [asdict(r) for r in report.records],
            "medians": {str(k): v for k, v in report.medians.items()},
            "exponent": report.exponent,
        }
        _write(args.out, json.dumps(obj))
    else:
        lines = [f"{n:>9}  {t:.4f} s" for n, t in report.medians.items()]
        if report.exponent is not None:
            lines.append(f"exponent b = {report.exponent:.3f}")
        _write(args.out, "\n".join(lines))
    return EXIT_OK


def cmd_render(args) -> int:
    _, ts = _tileset(args)
    tiling = parse_tiling(_read(args.inp), ts, _fmt(args))
    _write(args.out, render(tiling, args.format))
    return EXIT_OK


COMMANDS = {
    "tile": cmd_tile, "check": cmd_check, "fsgen": cmd_fsgen, "subtiles": cmd_subtiles,
    "enumerate": cmd_enumerate, "random": cmd_random, "bench": cmd_bench, "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tessella", description="Polyomino tiling engine.")
    p.add_argument("command", choices=list(COMMANDS))
    p.add_argument("--tileset", default="domino-l",
                   help="domino-l, s2, sa, or a JSON tile set file (default domino-l)")
    p.add_argument("--in", dest="inp", default=None, help="input file, - for stdin")
    p.add_argument("--out", default="-", help="output file, - for stdout")
    p.add_argument("--json", action="store_true", help="JSON instead of ASCII, both ways")
    p.add_argument("--exact", action="store_true", help="use the exact-cover oracle")
    p.add_argument("--search", action="store_true",
                   help="domino-l: backtrack over L positions instead of the pure greedy")
    p.add_argument("--validate", action="store_true", help="check: validate a tiling")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", nargs="?", type=int, const=-1, default=None, dest="count_raw",
                   help="print counts only; for bench, the number of repetitions")
    p.add_argument("--format", choices=("ascii", "svg"), default="svg", help="render format")
    return p


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    args.count = args.count_raw is not None
    args.count_value = args.count_raw if args.count_raw and args.count_raw > 0 else None
    if args.inp is None and args.command in ("tile", "check", "render"):
        args.inp = "-"
    try:
        return COMMANDS[args.command](args)
    except (BudgetExceeded, CapExceeded) as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (_Usage, FormatError, DimensionError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
