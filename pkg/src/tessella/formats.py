"""Text encodings for regions, tilings and tile sets.

ASCII region: lines over ``#`` / ``.``; the first line is the top row.
JSON region: ``{"dim": d, "cells": [[...], ...]}``.
JSON tiling: ``{"region": <region>, "tiles": [{"name": ..., "cells": [...]}, ...]}``.
ASCII tiling: the region grid with each tile drawn in one character from
``a-z A-Z 0-9``, face-adjacent tiles never sharing a character.
JSON tile set: ``{"dim": d, "symmetry": ..., "tiles": [{"name": ..., "cells": ...}]}``.
"""
from __future__ import annotations

import json
import string

from .lattice import (
    DimensionError,
    Placement,
    Polyomino,
    Symmetry,
    Tile,
    TileSet,
    Tiling,
    cell_order_key,
    make_placement,
)

TILE_CHARS = string.ascii_lowercase + string.ascii_uppercase + string.digits


class FormatError(ValueError):
    pass


# ---------------------------------------------------------------- regions

def _grid_lines(text: str) -> list[str]:
    lines = [ln.rstrip() for ln in text.replace("\r\n", "\n").split("\n")]
    while lines and not lines[0]:
        lines.pop(0)
    while lines and not lines[-1]:
        lines.pop()
    return lines


def parse_region(text: str, format: str = "ascii") -> Polyomino:
    if format == "json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise FormatError(f"bad JSON: {e}") from None
        return region_from_obj(obj)
    if format != "ascii":
        raise FormatError(f"unknown region format {format!r}")
    lines = _grid_lines(text)
    if not lines:
        raise FormatError("empty region")
    top = len(lines) - 1
    cells = []
    for r, line in enumerate(lines):
        for c, ch in enumerate(line):
            if ch == "#":
                cells.append((c, top - r))
            elif ch not in ". ":
                raise FormatError(f"unexpected character {ch!r} at line {r + 1}")
    if not cells:
        raise FormatError("empty region")
    return Polyomino(2, frozenset(cells))


def region_from_obj(obj) -> Polyomino:
    try:
        dim = int(obj["dim"])
        cells = [tuple(int(v) for v in c) for c in obj["cells"]]
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"malformed region object: {e}") from None
    if not cells:
        raise FormatError("empty region")
    if any(len(c) != dim for c in cells):
        raise FormatError(f"cell with dimension other than {dim}")
    if len(set(cells)) != len(cells):
        raise FormatError("duplicate cell")
    return Polyomino(dim, frozenset(cells))


def region_to_obj(p: Polyomino) -> dict:
    return {"dim": p.dim, "cells": [list(c) for c in sorted(p.cells)]}


def _bbox2(cells):
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    return min(xs), max(xs), min(ys), max(ys)


def emit_region(p: Polyomino, format: str = "ascii") -> str:
    if format == "json":
        return json.dumps(region_to_obj(p))
    if format != "ascii":
        raise FormatError(f"unknown region format {format!r}")
    if p.dim != 2:
        raise DimensionError("ASCII regions are 2D only")
    if not p.cells:
        raise FormatError("empty region")
    x0, x1, y0, y1 = _bbox2(p.cells)
    rows = []
    for y in range(y1, y0 - 1, -1):
        rows.append("".join("#" if (x, y) in p.cells else "." for x in range(x0, x1 + 1)))
    return "\n".join(rows)


# ---------------------------------------------------------------- tile sets

def tileset_to_obj(ts: TileSet) -> dict:
    return {
        "dim": ts.dim,
        "symmetry": ts.symmetry.value,
        "tiles": [{"name": t.name or f"t{i}", "cells": [list(c) for c in t.cells]}
                  for i, t in enumerate(ts.tiles)],
    }


def tileset_from_obj(obj) -> TileSet:
    try:
        sym = Symmetry(obj.get("symmetry", "rotations"))
        tiles = [Tile(tuple(tuple(int(v) for v in c) for c in t["cells"]), name=t.get("name", ""))
                 for t in obj["tiles"]]
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"malformed tile set: {e}") from None
    if not tiles:
        raise FormatError("tile set has no tiles")
    if "dim" in obj and any(t.dim != int(obj["dim"]) for t in tiles):
        raise FormatError("tile dimension disagrees with 'dim'")
    try:
        return TileSet(tuple(tiles), sym)
    except ValueError as e:
        raise FormatError(str(e)) from None


def emit_tileset(ts: TileSet) -> str:
    return json.dumps(tileset_to_obj(ts))


def parse_tileset(text: str) -> TileSet:
    try:
        return tileset_from_obj(json.loads(text))
    except json.JSONDecodeError as e:
        raise FormatError(f"bad JSON: {e}") from None


# ---------------------------------------------------------------- tilings

def tiling_to_obj(t: Tiling) -> dict:
    return {
        "region": region_to_obj(t.region),
        "tiles": [{"name": t.tileset.tiles[p.tile_index].name or f"t{p.tile_index}",
                   "cells": [list(c) for c in sorted(p.cells())]}
                  for p in t.placements],
    }


def _placements_from_blocks(blocks, tileset: TileSet) -> list[Placement]:
    out = []
    for cells in blocks:
        try:
            out.append(make_placement(tileset, cells))
        except ValueError as e:
            raise FormatError(str(e)) from None
    return out


def tiling_from_obj(obj, tileset: TileSet) -> Tiling:
    region = region_from_obj(obj.get("region") if isinstance(obj, dict) else None)
    try:
        blocks = [[tuple(int(v) for v in c) for c in tile["cells"]] for tile in obj["tiles"]]
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"malformed tiling: {e}") from None
    return Tiling(region, tileset, tuple(_placements_from_blocks(blocks, tileset)))


def assign_tile_chars(t: Tiling) -> list[str]:
    """Greedy colouring in placement order: each tile takes the first
    character not used by an already-coloured face-adjacent tile."""
    owner = {}
    for i, p in enumerate(t.placements):
        for c in p.cells():
            owner[c] = i
    chars: list[str] = []
    for i, p in enumerate(t.placements):
        used = set()
        for c in p.cells():
            for k in range(len(c)):
                for step in (-1, 1):
                    nb = c[:k] + (c[k] + step,) + c[k + 1:]
                    j = owner.get(nb)
                    if j is not None and j < i:
                        used.add(chars[j])
        for ch in TILE_CHARS:
            if ch not in used:
                chars.append(ch)
                break
        else:
            raise FormatError("ran out of tile characters")
    return chars


def emit_tiling(t: Tiling, format: str = "ascii") -> str:
    if format == "json":
        return json.dumps(tiling_to_obj(t))
    if format != "ascii":
        raise FormatError(f"unknown tiling format {format!r}")
    if t.region.dim != 2:
        raise DimensionError("ASCII tilings are 2D only")
    chars = assign_tile_chars(t)
    grid = {}
    for i, p in enumerate(t.placements):
        for c in p.cells():
            grid[c] = chars[i]
    cells = t.region.cells
    x0, x1, y0, y1 = _bbox2(cells)
    rows = []
    for y in range(y1, y0 - 1, -1):
        rows.append("".join(grid.get((x, y), "#" if (x, y) in cells else ".")
                            for x in range(x0, x1 + 1)))
    return "\n".join(rows)


def parse_tiling(text: str, tileset: TileSet, format: str = "ascii") -> Tiling:
    """Read a tiling back.  In ASCII each tile is a face-connected group of
    equal characters."""
    if format == "json":
        try:
            return tiling_from_obj(json.loads(text), tileset)
        except json.JSONDecodeError as e:
            raise FormatError(f"bad JSON: {e}") from None
    if format != "ascii":
        raise FormatError(f"unknown tiling format {format!r}")
    lines = _grid_lines(text)
    if not lines:
        raise FormatError("empty tiling")
    top = len(lines) - 1
    chars = {}
    for r, line in enumerate(lines):
        for c, ch in enumerate(line):
            if ch in ". ":
                continue
            if ch not in TILE_CHARS:
                raise FormatError(f"unexpected character {ch!r} at line {r + 1}")
            chars[(c, top - r)] = ch
    if not chars:
        raise FormatError("empty tiling")
    seen = set()
    blocks = []
    for start in sorted(chars, key=cell_order_key):
        if start in seen:
            continue
        ch = chars[start]
        block = [start]
        seen.add(start)
        todo = [start]
        while todo:
            x, y = todo.pop()
            for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                if nb not in seen and chars.get(nb) == ch:
                    seen.add(nb)
                    block.append(nb)
                    todo.append(nb)
        blocks.append(block)
    region = Polyomino(2, frozenset(chars))
    return Tiling(region, tileset, tuple(_placements_from_blocks(blocks, tileset)))


__all__ = [
    "FormatError", "parse_region", "emit_region", "region_from_obj", "region_to_obj",
    "parse_tileset", "emit_tileset", "tileset_from_obj", "tileset_to_obj",
    "parse_tiling", "emit_tiling", "tiling_from_obj", "tiling_to_obj", "assign_tile_chars",
]
