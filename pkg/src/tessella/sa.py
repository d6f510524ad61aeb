"""Deciding and tiling with the domino, L-tromino, 3-bar and T-tetromino
under rotation.

A region of two or more cells fails to tile exactly when it is built from
plus pentominoes glued spoke tip to spoke tip without enclosing a hole (the
crenellated class).  ``sa_tile`` tiles everything else by growing an S_2
tiling and then removing its plus pentominoes one by one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .dominol import Untileable
from .fountain import alg2_tile
from .lattice import (
    S2,
    SA,
    DimensionError,
    Placement,
    Polyomino,
    Tiling,
    is_connected,
)
from .oracle import enumerate_tilings, find_tiling

T_INDEX = SA.tiles.index(next(t for t in SA.tiles if t.name == "T"))
PLUS_INDEX = S2.tiles.index(next(t for t in S2.tiles if t.name == "plus"))


class Reason(str, Enum):
    TOO_SMALL = "too-small"
    COVERAGE_GAP = "coverage-gap"
    OVERLAP_VIOLATION = "overlap-violation"
    SPOKE_ADJACENCY = "spoke-adjacency"
    NOT_SIMPLY_CONNECTED = "not-simply-connected"
    OK = "ok"


@dataclass
class CrenellationReport:
    in_class: bool
    centers: list = field(default_factory=list)
    reason: Reason = Reason.OK
    cell_visits: int = 0  # work counter, linear in the region size


class PlusEliminationError(RuntimeError):
    """Plus elimination got stuck on a region outside the crenellated class."""


def _plus(c):
    x, y = c
    return ((x, y), (x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1))


def in_crenellated_class(region: Polyomino) -> CrenellationReport:
    """Whether ``region`` is a hole-free union of pluses meeting only at
    shared spoke tips.

    With Z the cells whose four neighbours are all in the region, the region
    is in the class when every cell lies in the plus of some centre in Z, any
    two centres are at Chebyshev distance at least 2, every adjacent pair of
    cells includes a centre, and the region has no holes.  The last test is
    an Euler number count, so the whole check is linear.
    """
    if region.dim != 2:
        raise DimensionError("the crenellated class is defined for 2D regions")
    cells = region.cells
    n = len(cells)
    visits = 0
    if n < 5:
        return CrenellationReport(False, [], Reason.TOO_SMALL, visits)

    centers = []
    for x, y in cells:
        visits += 1
        if ((x + 1, y) in cells and (x - 1, y) in cells
                and (x, y + 1) in cells and (x, y - 1) in cells):
            centers.append((x, y))
    zs = set(centers)

    covered = set()
    for z in centers:
        visits += 1
        covered.update(_plus(z))
    if len(covered) != n:
        return CrenellationReport(False, [], Reason.COVERAGE_GAP, visits)

    for x, y in centers:
        visits += 1
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                if (dx or dy) and (x + dx, y + dy) in zs:
                    return CrenellationReport(False, [], Reason.OVERLAP_VIOLATION, visits)

    for x, y in cells:
        visits += 1
        if (x, y) in zs:
            continue
        if ((x + 1, y) in cells and (x + 1, y) not in zs) or \
                ((x, y + 1) in cells and (x, y + 1) not in zs):
            return CrenellationReport(False, [], Reason.SPOKE_ADJACENCY, visits)

    # cells - adjacent pairs + full 2x2 blocks counts components minus holes,
    # where a hole must be enclosed by a face-connected loop of cells; a cell
    # pinched off only at corners (as inside a bent plus chain) is no hole
    chi = n
    for x, y in cells:
        visits += 1
        right = (x + 1, y) in cells
        up = (x, y + 1) in cells
        chi -= right + up
        if right and up and (x + 1, y + 1) in cells:
            chi += 1
    if chi != 1:
        return CrenellationReport(False, [], Reason.NOT_SIMPLY_CONNECTED, visits)
    return CrenellationReport(True, sorted(centers), Reason.OK, visits)


def _check_region(region: Polyomino) -> None:
    if region.dim != 2:
        raise DimensionError("the S_a solver works on 2D regions")
    if not region.cells:
        raise ValueError("empty region")
    if not is_connected(region):
        raise ValueError("region is not connected")


def sa_decide(region: Polyomino) -> bool:
    _check_region(region)
    return len(region) >= 2 and not in_crenellated_class(region).in_class


class _Board:
    """Mutable placement set with a cell -> placement id map."""

    def __init__(self, placements):
        self.placements: dict[int, Placement] = {}
        self.owner: dict = {}
        self.next_id = 0
        for p in placements:
            self.add(p)

    def add(self, p: Placement) -> int:
        pid = self.next_id
        self.next_id += 1
        self.placements[pid] = p
        for c in p.cells():
            self.owner[c] = pid
        return pid

    def drop(self, pid: int) -> Placement:
        p = self.placements.pop(pid)
        for c in p.cells():
            del self.owner[c]
        return p

    def neighbours(self, pid: int) -> list:
        out = set()
        for x, y in self.placements[pid].cells():
            for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                q = self.owner.get(nb)
                if q is not None and q != pid:
                    out.add(q)
        return sorted(out)


def _plus_count(t: Tiling) -> int:
    return sum(1 for p in t.placements if p.tile_index == PLUS_INDEX)


def _eliminate(board: _Board, pid: int, limit: int) -> None:
    """Remove the plus ``pid``, walking it through adjacent T tiles when no
    neighbour can absorb it directly."""
    visited = set()
    for _ in range(limit):
        plus = board.placements[pid]
        visited.add(frozenset(plus.cells()))
        nbs = board.neighbours(pid)
        nbs.sort(key=lambda q: (board.placements[q].tile_index == T_INDEX, q))
        for q in nbs:
            union = Polyomino(2, frozenset(plus.cells()) | frozenset(board.placements[q].cells()))
            t = find_tiling(union, SA)
            if t is not None:
                board.drop(pid)
                board.drop(q)
                for p in t.placements:
                    board.add(p)
                return
        for q in nbs:
            if board.placements[q].tile_index != T_INDEX:
                continue
            union = Polyomino(2, frozenset(plus.cells()) | frozenset(board.placements[q].cells()))
            options = sorted(enumerate_tilings(union, S2), key=_plus_count)
            for t in options:
                if _plus_count(t) != 1:
                    continue
                new_plus = next(p for p in t.placements if p.tile_index == PLUS_INDEX)
                if frozenset(new_plus.cells()) in visited:
                    continue
                board.drop(pid)
                board.drop(q)
                for p in t.placements:
                    new = board.add(p)
                    if p is new_plus:
                        pid = new
                break
            else:
                continue
            break
        else:
            raise PlusEliminationError(f"plus at {sorted(plus.cells())} cannot be removed")
    raise PlusEliminationError(f"plus elimination exceeded {limit} steps")


def sa_tile(region: Polyomino) -> Tiling:
    """A tiling by domino, L, 3-bar and T (rotations allowed), or
    :class:`~tessella.dominol.Untileable`.

    Raises PlusEliminationError if elimination stalls, which would mean the
    region is outside the class yet could not be tiled.
    """
    _check_region(region)
    if len(region) == 1:
        raise Untileable("a single cell cannot be tiled")
    report = in_crenellated_class(region)
    if report.in_class:
        raise Untileable(f"region is a hole-free chain of {len(report.centers)} plus shapes")
    board = _Board(alg2_tile(region, S2).placements)
    limit = len(region) + 1
    for _ in range(limit):
        pluses = [q for q, p in board.placements.items() if p.tile_index == PLUS_INDEX]
        if not pluses:
            break
        _eliminate(board, pluses[0], limit)
    else:
        raise PlusEliminationError(f"more than {limit} pluses eliminated")
    placements = tuple(Placement(p.tile_index, p.variant, p.offset)
                       for _, p in sorted(board.placements.items()))
    return Tiling(region, SA, placements)


__all__ = [
    "Reason", "CrenellationReport", "PlusEliminationError",
    "in_crenellated_class", "sa_decide", "sa_tile",
]
