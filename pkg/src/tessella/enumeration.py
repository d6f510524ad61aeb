"""Exhaustive fixed-polyomino enumeration and random region growth."""
from __future__ import annotations

import numpy as np

from .lattice import Placement, Polyomino, TileSet, Tiling

MAX_ENUMERATION_SIZE = 14


def enumerate_fixed_polyominoes(n: int, dim: int = 2) -> list[Polyomino]:
    """Every 2D fixed polyomino of ``n`` cells, exactly once, normalized to
    the origin, in a deterministic order.

    Redelmeier's method: cells are added only from the half plane
    ``y > 0 or (y == 0 and x >= 0)`` around the origin cell, and each cell
    joins the untried set at most once per branch, so no shape repeats.
    """
    if dim != 2:
        raise ValueError("only 2D enumeration is supported")
    if not 1 <= n <= MAX_ENUMERATION_SIZE:
        raise ValueError(f"size must be in 1..{MAX_ENUMERATION_SIZE}, got {n}")

    out: list[Polyomino] = []
    poly: list = []
    reached = {(0, 0)}

    def grow(untried: list) -> None:
        untried = list(untried)
        while untried:
            c = untried.pop()
            poly.append(c)
            if len(poly) == n:
                out.append(Polyomino(2, frozenset(poly)).normalized())
            else:
                x, y = c
                fresh = []
                for nb in ((x + 1, y), (x, y + 1), (x - 1, y), (x, y - 1)):
                    if (nb[1] > 0 or (nb[1] == 0 and nb[0] >= 0)) and nb not in reached:
                        reached.add(nb)
                        fresh.append(nb)
                grow(untried + fresh)
                for nb in fresh:
                    reached.discard(nb)
            poly.pop()

    grow([(0, 0)])
    return out


def gen_random_polyomino(n: int, seed: int = 0, model: str = "eden") -> Polyomino:
    """Eden growth: start from the origin and repeatedly add a uniformly
    chosen boundary cell (empty cell adjacent to the region).

    Randomness comes from numpy's PCG64 seeded with ``seed``; the same
    ``(n, seed)`` always yields the same region.
    """
    if model != "eden":
        raise ValueError(f"unknown random model {model!r}")
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    # cells packed as x * 2**32 + y with coordinates offset to stay positive
    shift = 1 << 32
    base = 1 << 30
    start = base * shift + base
    region = {start}
    boundary: list[int] = []
    where: dict[int, int] = {}
    for d in (shift, -shift, 1, -1):
        where[start + d] = len(boundary)
        boundary.append(start + d)
    draws = rng.random(0)
    di = 0
    while len(region) < n:
        if di == len(draws):
            draws = rng.random(min(1 << 16, 2 * (n - len(region)) + 16))
            di = 0
        i = int(draws[di] * len(boundary))
        di += 1
        c = boundary[i]
        last = boundary.pop()
        if last != c:
            boundary[i] = last
            where[last] = i
        del where[c]
        region.add(c)
        for d in (shift, -shift, 1, -1):
            nb = c + d
            if nb not in region and nb not in where:
                where[nb] = len(boundary)
                boundary.append(nb)
    cells = [((k >> 32) - base, (k & (shift - 1)) - base) for k in region]
    return Polyomino(2, frozenset(cells))


def gen_random_tiled_region(n: int, tileset: TileSet, seed: int = 0) -> Tiling:
    """Grow a region tile by tile, so it is tileable by construction.

    Each step picks a uniform boundary cell, then a uniform variant and a
    uniform cell of that variant to pin there, and keeps the placement when
    it avoids the region.  Stops once the region has at least ``n`` cells.
    """
    if tileset.dim != 2:
        raise ValueError("only 2D tiled growth is supported")
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    shapes = [(ti, v, sorted(v.cells)) for ti, vs in enumerate(tileset.variants) for v in vs]
    region: set = set()
    boundary: list = [(0, 0)]
    where = {(0, 0): 0}
    placements: list[Placement] = []

    def drop(c):
        i = where.pop(c)
        last = boundary.pop()
        if last != c:
            boundary[i] = last
            where[last] = i

    while len(region) < n:
        draw = rng.integers(0, 1 << 62, size=3)
        c = boundary[int(draw[0] % len(boundary))]
        ti, v, cells = shapes[int(draw[1] % len(shapes))]
        pin = cells[int(draw[2] % len(cells))]
        offset = (c[0] - pin[0], c[1] - pin[1])
        placed = [(x + offset[0], y + offset[1]) for x, y in cells]
        if any(q in region for q in placed):
            continue
        placements.append(Placement(ti, v, offset))
        for q in placed:
            region.add(q)
            if q in where:
                drop(q)
        for x, y in placed:
            for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                if nb not in region and nb not in where:
                    where[nb] = len(boundary)
                    boundary.append(nb)
    return Tiling(Polyomino(2, frozenset(region)), tileset, tuple(placements))
