"""Fountain sets: tile sets where any tile plus one adjacent cell is again
tileable by the set.

Includes the fountain/minimality check, the FSGEN closure, retiling tables,
the incremental ALG2 tiler and the plus-subtile combinatorics in dimension d.
"""
from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .lattice import (
    Placement,
    Polyomino,
    Symmetry,
    Tile,
    TileSet,
    Tiling,
    canonical_tile_form,
    cell_order_key,
    neighbors,
    normalize,
    tile_orbit,
)
from .oracle import DEFAULT_BUDGET, OracleBudget, enumerate_tilings, is_tileable


class CapExceeded(RuntimeError):
    def __init__(self, message: str, partial: TileSet | None = None):
        super().__init__(message)
        self.partial = partial


class NoSeed(Exception):
    """No generating tile fits in the region."""


class InconsistentTable(RuntimeError):
    pass


def adjacent_cells(cells) -> list:
    """Cells outside ``cells`` sharing a face with one of them, sorted."""
    cs = set(cells)
    out = {nb for c in cs for nb in neighbors(c) if nb not in cs}
    return sorted(out)


def _obligations(tile: Tile, symmetry: Symmetry) -> list:
    """(adjacent cell, canonical union) for each adjacent cell of ``tile``,
    keeping one cell per distinct union shape."""
    seen = set()
    out = []
    for u in adjacent_cells(tile.cells):
        union = canonical_tile_form(Tile(tile.cells + (u,)), symmetry)
        if union.cells not in seen:
            seen.add(union.cells)
            out.append((u, union))
    return out


# ---------------------------------------------------------------- fountain check

@dataclass
class FountainReport:
    is_fountain: bool
    witnesses: list  # (tile, adjacent cell) whose union S cannot tile
    is_minimal: bool | None = None
    removal_witnesses: dict = field(default_factory=dict)  # tile index -> witnesses of S minus it


def _fountain_witnesses(S: TileSet, budget: OracleBudget, first_only: bool = False) -> list:
    out = []
    for t in S.tiles:
        for u, union in _obligations(t, S.symmetry):
            if not is_tileable(union.as_polyomino(), S, budget):
                out.append((t, u))
                if first_only:
                    return out
    return out


def is_fountain_set(S: TileSet, budget: OracleBudget = DEFAULT_BUDGET,
                    check_minimal: bool = True) -> FountainReport:
    """Check the fountain property of ``S`` with the exact oracle.

    With ``check_minimal`` each single-tile removal is checked as well; the
    set is minimal when every removal breaks the property, and
    ``removal_witnesses`` records one failing (tile, cell) per removal.
    """
    witnesses = _fountain_witnesses(S, budget)
    report = FountainReport(not witnesses, witnesses)
    if check_minimal and len(S) > 1:
        minimal = True
        for i in range(len(S)):
            w = _fountain_witnesses(S.without(i), budget, first_only=True)
            report.removal_witnesses[i] = w
            if not w:
                minimal = False
        report.is_minimal = minimal
    elif check_minimal:
        report.is_minimal = report.is_fountain
    return report


def fits_inside(small: Tile, big: Tile, symmetry: Symmetry) -> bool:
    """Whether some admissible image of ``small`` translates into ``big``."""
    bigset = set(big.cells)
    for v in tile_orbit(small, symmetry):
        for anchor in big.cells:
            base = v.cells[0]
            shifted = [tuple(a + c - b for a, b, c in zip(cell, base, anchor)) for cell in v.cells]
            if all(c in bigset for c in shifted):
                return True
    return False


@lru_cache(maxsize=64)
def generating_tiles(S: TileSet) -> tuple:
    """Tiles of S inside which no other tile of S fits."""
    return tuple(b for i, b in enumerate(S.tiles)
                 if not any(fits_inside(t, b, S.symmetry) for j, t in enumerate(S.tiles) if j != i))


# ---------------------------------------------------------------- FSGEN

def fsgen(generators, dim: int | None = None, *, symmetry: Symmetry = Symmetry.ROTATIONS,
          max_tile_size: int = 32, max_set_size: int = 256,
          budget: OracleBudget = DEFAULT_BUDGET) -> TileSet:
    """Close a set of generating tiles into a fountain set.

    Obligations (tile, adjacent cell) are handled smallest tile first, then
    by canonical cell list, then by cell; whenever a union is not tileable
    by the current set, its canonical form joins the set.
    """
    gens = [canonical_tile_form(g if isinstance(g, Tile) else Tile(g), symmetry) for g in generators]
    if not gens:
        raise ValueError("need at least one generating tile")
    if dim is not None and any(g.dim != dim for g in gens):
        raise ValueError("generator dimension disagrees with dim")
    for a, b in itertools.permutations(gens, 2):
        if fits_inside(a, b, symmetry):
            raise ValueError(f"generator {a.cells} fits inside {b.cells}")
    tiles = list(dict.fromkeys(gens))
    heap: list = []

    def push(t: Tile) -> None:
        for u, union in _obligations(t, symmetry):
            heapq.heappush(heap, (t.size, t.cells, u, union.cells))

    for g in tiles:
        push(g)
    S = TileSet(tuple(tiles), symmetry)
    present = {t.cells for t in tiles}
    while heap:
        _, _, _, union_cells = heapq.heappop(heap)
        if union_cells in present:
            continue
        union = Tile(union_cells)
        if is_tileable(union.as_polyomino(), S, budget):
            continue
        if union.size > max_tile_size or len(tiles) >= max_set_size:
            raise CapExceeded(f"FSGEN passed its caps with {len(tiles)} tiles", S)
        tiles.append(union)
        present.add(union_cells)
        S = TileSet(tuple(tiles), symmetry)
        push(union)
    return S


# ---------------------------------------------------------------- retiling

@dataclass(frozen=True)
class RetileTable:
    """(tile image, adjacent cell) -> placements tiling their union.

    Keys use the tile image's own normalized coordinates, and every
    admissible image of every tile has entries, canonical ones included.
    """

    tileset: TileSet
    entries: dict

    def lookup(self, variant: Tile, u) -> tuple:
        return self.entries[(variant.cells, tuple(u))]

    def __len__(self) -> int:
        return len(self.entries)


def build_retile_table(S: TileSet, budget: OracleBudget = DEFAULT_BUDGET) -> RetileTable:
    """Oracle-generated retiling rules; for each union the tiling with the
    fewest tiles is kept (first in search order among those)."""
    entries = {}
    for variants in S.variants:
        for v in variants:
            for u in adjacent_cells(v.cells):
                union = Polyomino(S.dim, frozenset(v.cells + (u,)))
                best = None
                for t in enumerate_tilings(union, S, budget):
                    if best is None or len(t) < len(best):
                        best = t
                if best is None:
                    raise InconsistentTable(f"{v.cells} plus {u} is not tileable: not a fountain set")
                entries[(v.cells, u)] = best.placements
    return RetileTable(S, entries)


_table_cache: dict = {}


def retile_table_for(S: TileSet) -> RetileTable:
    table = _table_cache.get(S)
    if table is None:
        table = _table_cache[S] = build_retile_table(S)
    return table


# ---------------------------------------------------------------- ALG2

class _CompiledTable(NamedTuple):
    variants: list
    vid_of: dict
    tile_of: list
    rules: list  # (vid, u, [(vid2, offset), ...])
    ext: int  # padding that keeps every relative offset inside the grid


def _compile(table: RetileTable) -> _CompiledTable:
    hit = _compiled_cache.get(id(table))
    if hit is not None and hit[0] is table:
        return hit[1]
    S = table.tileset
    variants = [v for vs in S.variants for v in vs]
    vid_of = {v.cells: i for i, v in enumerate(variants)}
    tile_of = [S.index_of_shape(v.cells) for v in variants]
    rules = [(vid_of[vcs], u, [(vid_of[p.variant.cells], p.offset) for p in placements])
             for (vcs, u), placements in table.entries.items()]
    ext = max(abs(x) for v in variants for c in v.cells for x in c) + 2
    for _, u, repl in rules:
        ext = max(ext, max(abs(x) for x in u) + 2, max(abs(x) for _, o in repl for x in o) + 2)
    compiled = _CompiledTable(variants, vid_of, tile_of, rules, ext)
    _compiled_cache[id(table)] = (table, compiled)
    return compiled


_compiled_cache: dict = {}


def _find_seed(arr, gens: list, S: TileSet):
    cells = None
    shapes = []
    for g in gens:
        idx = S.index_of_shape(g.cells)
        if idx is None:
            raise ValueError(f"generator {g.cells} is not a tile of the set")
        for v in S.variants[idx]:
            first = min(v.cells, key=cell_order_key)
            shapes.append((idx, v, first))
    dim = arr.shape[1]
    cols = [arr[:, i] for i in range(dim - 1, 1, -1)] + [arr[:, 0]]
    if dim > 1:
        cols.append(arr[:, 1])
    for row in arr[np.lexsort(cols)].tolist():
        if cells is None:
            cells = set(map(tuple, arr.tolist()))
        c = tuple(row)
        for idx, v, first in shapes:
            off = tuple(a - b for a, b in zip(c, first))
            if all(tuple(a + b for a, b in zip(vc, off)) in cells for vc in v.cells):
                return Placement(idx, v, off)
    return None


def alg2_tile(region: Polyomino, S: TileSet, generators=None,
              table: RetileTable | None = None) -> Tiling:
    """Tile a connected region by growing from one generating tile and
    retiling locally as each new cell joins (breadth-first).

    The seed is the first generating-tile placement in scan order.  Each new
    cell is absorbed by its adjacent placement with the smallest id, whose
    tile plus the cell is replaced by the table's tiling of that union.

    Raises NoSeed when no generating tile fits in the region, and
    ValueError when the region is not connected.
    """
    if generators is None:
        generators = generating_tiles(S)
    if table is None:
        table = retile_table_for(S)
    cells = region.cells
    if not cells:
        raise ValueError("empty region")
    dim = region.dim
    if dim != S.dim:
        raise ValueError("region and tile set have different dimensions")
    arr = np.fromiter(itertools.chain.from_iterable(cells), dtype=np.int64).reshape(len(cells), dim)
    seed = _find_seed(arr, list(generators), S)
    if seed is None:
        raise NoSeed("no generating tile fits in the region")
    ct = _compile(table)

    # pack cells into integer keys; padding keeps every relative offset unique
    ext = ct.ext
    lo = arr.min(axis=0) - ext
    sizes = arr.max(axis=0) - lo + 1 + ext
    strides = [1] * dim
    for i in range(1, dim):
        strides[i] = strides[i - 1] * int(sizes[i - 1])
    if strides[-1] * int(sizes[-1]) >= 1 << 62:
        raise ValueError("region too spread out to encode")
    lo_t = [int(v) for v in lo]

    def rel(c) -> int:
        return sum(a * s for a, s in zip(c, strides))

    def enc(c) -> int:
        return sum((a - b) * s for a, b, s in zip(c, lo_t, strides))

    vcells = [[rel(c) for c in v.cells] for v in ct.variants]
    ktable = {(vid, rel(u)): [(vid2, rel(o)) for vid2, o in repl] for vid, u, repl in ct.rules}
    steps = strides + [-s for s in strides]

    keys = set(((arr - lo) @ np.array(strides, dtype=np.int64)).tolist())
    owner: dict = {}
    pvid: list = []
    panchor: list = []

    anchor0 = enc(seed.offset)
    vid0 = ct.vid_of[seed.variant.cells]
    pvid.append(vid0)
    panchor.append(anchor0)
    for d in vcells[vid0]:
        owner[anchor0 + d] = 0
    queued = set(owner)
    queue = deque()
    for c in sorted(seed.cells(), key=cell_order_key):
        k = enc(c)
        for st in steps:
            nb = k + st
            if nb in keys and nb not in queued:
                queued.add(nb)
                queue.append(nb)
    get = owner.get
    popleft, push = queue.popleft, queue.append
    while queue:
        u = popleft()
        best = -1
        for st in steps:
            p = get(u + st)
            if p is not None and (best < 0 or p < best):
                best = p
        vid, anchor = pvid[best], panchor[best]
        repl = ktable.get((vid, u - anchor))
        if repl is None:
            raise InconsistentTable(f"no retiling rule for variant {ct.variants[vid].cells}")
        pvid[best] = -1
        for vid2, da in repl:
            a2 = anchor + da
            pid = len(pvid)
            pvid.append(vid2)
            panchor.append(a2)
            for d in vcells[vid2]:
                owner[a2 + d] = pid
        for st in steps:
            nb = u + st
            if nb in keys and nb not in queued:
                queued.add(nb)
                push(nb)

    if len(queued) != len(keys):
        raise ValueError("region is not connected")
    live = [(v, a) for v, a in zip(pvid, panchor) if v >= 0]
    coords = np.empty((len(live), dim), dtype=np.int64)
    rest = np.array([a for _, a in live], dtype=np.int64)
    for i in range(dim - 1, -1, -1):
        coords[:, i], rest = np.divmod(rest, strides[i])
    coords += lo
    variants, tile_of = ct.variants, ct.tile_of
    placements = tuple(Placement(tile_of[v], variants[v], tuple(c))
                       for (v, _), c in zip(live, coords.tolist()))
    return Tiling(region, S, placements)


# ---------------------------------------------------------------- plus subtiles

def plus_tile(d: int) -> Tile:
    if d < 1:
        raise ValueError("dimension must be at least 1")
    center = (0,) * d
    cells = [center]
    for i in range(d):
        for s in (-1, 1):
            c = [0] * d
            c[i] = s
            cells.append(tuple(c))
    return Tile(tuple(cells), name=f"plus{d}")


def _spokes(d: int) -> list:
    out = []
    for i in range(d):
        for s in (-1, 1):
            c = [0] * d
            c[i] = s
            out.append(tuple(c))
    return out


def _subtile_orbits(d: int) -> list:
    """Orbits of nonempty spoke subsets under the signed permutations of the
    axes, found by closing each subset under the group's generators."""
    spokes = _spokes(d)
    index = {s: i for i, s in enumerate(spokes)}
    gens = []
    for i in range(d):  # flip axis i
        gens.append([index[tuple(-v if j == i else v for j, v in enumerate(s))] for s in spokes])
    for i in range(d - 1):  # swap axes i, i+1
        def swap(s, i=i):
            t = list(s)
            t[i], t[i + 1] = t[i + 1], t[i]
            return tuple(t)
        gens.append([index[swap(s)] for s in spokes])
    seen = set()
    orbits = []
    for mask in range(1, 1 << (2 * d)):
        if mask in seen:
            continue
        orbit = [mask]
        seen.add(mask)
        todo = [mask]
        while todo:
            m = todo.pop()
            for g in gens:
                img = 0
                for j in range(2 * d):
                    if m >> j & 1:
                        img |= 1 << g[j]
                if img not in seen:
                    seen.add(img)
                    orbit.append(img)
                    todo.append(img)
        orbits.append(orbit)
    return orbits, spokes


def plus_subtiles(d: int) -> set:
    """Connected subsets of the d-dimensional plus that contain the centre,
    except the lone centre, one per rotation/reflection class.

    Each tile is returned in canonical form: the least normalized cell list
    over its orbit.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    orbits, spokes = _subtile_orbits(d)
    center = (0,) * d
    out = set()
    for orbit in orbits:
        forms = []
        for m in orbit:
            cells = [center] + [spokes[j] for j in range(2 * d) if m >> j & 1]
            forms.append(normalize(cells))
        out.add(Tile(min(forms)))
    return out


def spoke_count(t: Tile) -> int:
    """Spokes of a plus-subtile: cells other than the one touching all others."""
    return t.size - 1


def count_subtiles_by_spokes(d: int, k: int) -> int:
    if d < 1 or not 1 <= k <= 2 * d:
        raise ValueError(f"need d >= 1 and 1 <= k <= 2d, got d={d}, k={k}")
    return sum(1 for t in plus_subtiles(d) if spoke_count(t) == k)


def sd_size(d: int) -> int:
    """Size of the d-dimensional plus-subtile fountain set, d(d+3)/2."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    return d * (d + 3) // 2


def plus_subtile_set(d: int, symmetry: Symmetry = Symmetry.ROTATIONS) -> TileSet:
    """The plus-subtiles as a tile set, smallest first."""
    tiles = sorted(plus_subtiles(d), key=lambda t: (t.size, t.cells))
    return TileSet(tuple(tiles), symmetry)


__all__ = [
    "CapExceeded", "NoSeed", "InconsistentTable", "FountainReport", "RetileTable",
    "adjacent_cells", "is_fountain_set", "fits_inside", "generating_tiles", "fsgen",
    "build_retile_table", "retile_table_for", "alg2_tile", "plus_tile", "plus_subtiles",
    "count_subtiles_by_spokes", "sd_size", "plus_subtile_set",
]
