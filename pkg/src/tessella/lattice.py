"""Cells, regions, tiles, symmetry and tiling validation on Z^d.

A cell is a plain tuple of ints.  In 2D the first coordinate is x (rightward)
and the second is y (upward).  Adjacency is face adjacency only.
"""
from __future__ import annotations

import enum
import functools
import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

Cell = tuple  # tuple[int, ...]


class DimensionError(ValueError):
    pass


class Symmetry(str, enum.Enum):
    FIXED = "fixed"
    ROTATIONS = "rotations"
    ROTATIONS_AND_REFLECTIONS = "rotations-and-reflections"


# ---------------------------------------------------------------- geometry

def neighbors(cell: Cell):
    """The 2d face neighbours of ``cell``."""
    for i in range(len(cell)):
        for step in (-1, 1):
            nb = list(cell)
            nb[i] += step
            yield tuple(nb)


def normalize(cells: Iterable[Cell]) -> tuple:
    """Translate so the coordinatewise minimum is the origin; return sorted."""
    cells = list(cells)
    if not cells:
        return ()
    lo = [min(c[i] for c in cells) for i in range(len(cells[0]))]
    return tuple(sorted(tuple(a - b for a, b in zip(c, lo)) for c in cells))


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@functools.lru_cache(maxsize=None)
def symmetry_group(dim: int, mode: Symmetry) -> tuple:
    """Group elements as (perm, signs): cell -> (signs[i] * cell[perm[i]])_i.

    The identity is always the first element.
    """
    mode = Symmetry(mode)
    identity = (tuple(range(dim)), (1,) * dim)
    if mode is Symmetry.FIXED:
        return (identity,)
    elements = [identity]
    for perm in itertools.permutations(range(dim)):
        psign = _perm_sign(perm)
        for signs in itertools.product((1, -1), repeat=dim):
            g = (perm, signs)
            if g == identity:
                continue
            det = psign
            for s in signs:
                det *= s
            if mode is Symmetry.ROTATIONS and det != 1:
                continue
            elements.append(g)
    return tuple(elements)


def apply_symmetry(g, cells: Iterable[Cell]) -> list:
    perm, signs = g
    return [tuple(s * c[p] for p, s in zip(perm, signs)) for c in cells]


# ---------------------------------------------------------------- value types

@dataclass(frozen=True)
class Polyomino:
    """A finite set of lattice cells of one dimension."""

    dim: int
    cells: frozenset

    @classmethod
    def from_cells(cls, cells: Iterable[Sequence[int]], dim: int | None = None) -> "Polyomino":
        cs = frozenset(tuple(int(v) for v in c) for c in cells)
        dims = {len(c) for c in cs}
        if len(dims) > 1:
            raise DimensionError(f"cells of mixed dimension {sorted(dims)}")
        if dims:
            (found,) = dims
            if dim is not None and dim != found:
                raise DimensionError(f"expected dimension {dim}, cells have {found}")
            dim = found
        if dim is None or dim < 1:
            raise DimensionError("dimension must be given for an empty region")
        return cls(dim, cs)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __contains__(self, cell) -> bool:
        return cell in self.cells

    def sorted_cells(self) -> list:
        return sorted(self.cells, key=cell_order_key)

    def translate(self, offset: Cell) -> "Polyomino":
        return Polyomino(self.dim, frozenset(tuple(a + b for a, b in zip(c, offset)) for c in self.cells))

    def normalized(self) -> "Polyomino":
        return Polyomino(self.dim, frozenset(normalize(self.cells)))


def cell_order_key(cell: Cell) -> tuple:
    """Scan order used everywhere a deterministic cell order is needed:
    smallest y first, then x, then the higher coordinates."""
    if len(cell) < 2:
        return cell
    return (cell[1], cell[0]) + tuple(cell[2:])


@dataclass(frozen=True)
class Tile:
    """A tile shape, stored normalized (min corner at the origin) and sorted."""

    cells: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cells", normalize(self.cells))
        if not self.cells:
            raise ValueError("a tile needs at least one cell")

    @property
    def dim(self) -> int:
        return len(self.cells[0])

    @property
    def size(self) -> int:
        return len(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def as_polyomino(self) -> Polyomino:
        return Polyomino(self.dim, frozenset(self.cells))


def canonical_tile_form(t: Tile, symmetry: Symmetry) -> Tile:
    """Lexicographically least normalized image of ``t`` under the group."""
    best = min(normalize(apply_symmetry(g, t.cells)) for g in symmetry_group(t.dim, symmetry))
    return Tile(best, name=t.name)


def tile_orbit(t: Tile, symmetry: Symmetry) -> set:
    return {Tile(normalize(apply_symmetry(g, t.cells)), name=t.name)
            for g in symmetry_group(t.dim, symmetry)}


@dataclass(frozen=True)
class TileSet:
    tiles: tuple
    symmetry: Symmetry = Symmetry.FIXED

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(self.tiles))
        object.__setattr__(self, "symmetry", Symmetry(self.symmetry))
        dims = {t.dim for t in self.tiles}
        if len(dims) > 1:
            raise DimensionError(f"tiles of mixed dimension {sorted(dims)}")
        forms = [canonical_tile_form(t, self.symmetry).cells for t in self.tiles]
        if len(set(forms)) != len(forms):
            raise ValueError("tile set contains two equivalent tiles")

    @property
    def dim(self) -> int:
        return self.tiles[0].dim

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    @cached_property
    def variants(self) -> tuple:
        """Per tile, the admissible images sorted by cell list."""
        return tuple(tuple(sorted(tile_orbit(t, self.symmetry), key=lambda v: v.cells))
                     for t in self.tiles)

    @cached_property
    def _variant_lookup(self) -> dict:
        return {v.cells: i for i, vs in enumerate(self.variants) for v in vs}

    def index_of_shape(self, cells: Iterable[Cell]) -> int | None:
        """Index of the tile whose admissible images include this shape."""
        return self._variant_lookup.get(normalize(cells))

    def canonical_forms(self) -> frozenset:
        return frozenset(canonical_tile_form(t, self.symmetry).cells for t in self.tiles)

    def without(self, index: int) -> "TileSet":
        return TileSet(self.tiles[:index] + self.tiles[index + 1:], self.symmetry)


class Placement(NamedTuple):
    tile_index: int
    variant: Tile
    offset: Cell

    def cells(self) -> tuple:
        off = self.offset
        return tuple(tuple(a + b for a, b in zip(c, off)) for c in self.variant.cells)


def make_placement(tileset: TileSet, cells: Iterable[Cell]) -> Placement:
    """Placement covering exactly ``cells``; ValueError if no tile fits that shape."""
    cells = list(cells)
    idx = tileset.index_of_shape(cells)
    if idx is None:
        raise ValueError(f"no admissible tile has shape {sorted(cells)}")
    offset = tuple(min(c[i] for c in cells) for i in range(len(cells[0])))
    return Placement(idx, Tile(cells, name=tileset.tiles[idx].name), offset)


@dataclass(frozen=True)
class Tiling:
    region: Polyomino
    tileset: TileSet
    placements: tuple

    def __post_init__(self):
        object.__setattr__(self, "placements", tuple(self.placements))

    def __len__(self) -> int:
        return len(self.placements)

    def blocks(self) -> frozenset:
        """The tiling as a set of covered-cell blocks; two tilings are the
        same tiling iff their blocks agree."""
        return frozenset(frozenset(p.cells()) for p in self.placements)

    def tile_counts(self) -> dict:
        counts: dict = {}
        for p in self.placements:
            counts[p.tile_index] = counts.get(p.tile_index, 0) + 1
        return counts


@dataclass(frozen=True)
class Violation:
    kind: str  # bad-index | inadmissible | outside | overlap | uncovered
    message: str
    cell: Cell | None = None
    placement: int | None = None


def validate_tiling(t: Tiling) -> Violation | None:
    """None when ``t`` is a valid tiling of its region, else the first problem found."""
    covered: dict = {}
    region = t.region.cells
    ts = t.tileset
    for i, p in enumerate(t.placements):
        if not 0 <= p.tile_index < len(ts.tiles):
            return Violation("bad-index", f"placement {i} names tile {p.tile_index}", placement=i)
        if p.variant not in ts.variants[p.tile_index]:
            return Violation("inadmissible",
                             f"placement {i} uses an image of tile {p.tile_index} not allowed "
                             f"under symmetry {ts.symmetry.value}", placement=i)
        for c in p.cells():
            if c not in region:
                return Violation("outside", f"placement {i} covers {c} outside the region",
                                 cell=c, placement=i)
            if c in covered:
                return Violation("overlap", f"cell {c} covered by placements {covered[c]} and {i}",
                                 cell=c, placement=i)
            covered[c] = i
    if len(covered) != len(region):
        missing = min(region - covered.keys(), key=cell_order_key)
        return Violation("uncovered", f"cell {missing} is not covered", cell=missing)
    return None


def is_valid_tiling(t: Tiling) -> bool:
    return validate_tiling(t) is None


# ---------------------------------------------------------------- connectivity

def is_connected(p: Polyomino | Iterable[Cell]) -> bool:
    cells = p.cells if isinstance(p, Polyomino) else set(p)
    if not cells:
        raise ValueError("connectivity of the empty region is undefined")
    start = next(iter(cells))
    seen = {start}
    todo = [start]
    while todo:
        c = todo.pop()
        for nb in neighbors(c):
            if nb in cells and nb not in seen:
                seen.add(nb)
                todo.append(nb)
    return len(seen) == len(cells)


def is_simply_connected(p: Polyomino) -> bool:
    """Connected, and the complement inside the one-ring-padded bounding box
    is a single face-connected component."""
    if p.dim != 2:
        raise DimensionError("simple connectivity is only defined here for dim = 2")
    if not is_connected(p):
        return False
    cells = p.cells
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    outside = (x1 - x0 + 1) * (y1 - y0 + 1) - len(cells)
    start = (x0, y0)
    seen = {start}
    todo = deque([start])
    while todo:
        x, y = todo.popleft()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if (x0 <= nb[0] <= x1 and y0 <= nb[1] <= y1
                    and nb not in cells and nb not in seen):
                seen.add(nb)
                todo.append(nb)
    return len(seen) == outside


# ---------------------------------------------------------------- named shapes

DOMINO = Tile(((0, 0), (1, 0)), name="domino")
L_TROMINO = Tile(((0, 0), (1, 0), (1, 1)), name="L")
BAR3 = Tile(((0, 0), (1, 0), (2, 0)), name="bar3")
T_TETROMINO = Tile(((0, 0), (1, 0), (2, 0), (1, 1)), name="T")
PLUS = Tile(((1, 0), (0, 1), (1, 1), (2, 1), (1, 2)), name="plus")

#: the fixed-orientation domino + L set
DOMINO_L = TileSet((DOMINO, L_TROMINO), Symmetry.FIXED)
#: domino, L, 3-bar, T and plus with rotations: the 2D fountain set
S2 = TileSet((DOMINO, L_TROMINO, BAR3, T_TETROMINO, PLUS), Symmetry.ROTATIONS)
#: S2 without the plus
SA = TileSet((DOMINO, L_TROMINO, BAR3, T_TETROMINO), Symmetry.ROTATIONS)
