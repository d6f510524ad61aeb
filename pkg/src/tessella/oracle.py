"""Brute-force exact cover: ground truth for small regions.

The search always branches on the first uncovered cell in scan order
(``cell_order_key``) and tries every admissible placement whose first cell
lands there.  Cells are bit positions in scan order, so the first uncovered
cell is the lowest zero bit of the cover mask.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .lattice import Placement, Polyomino, TileSet, Tiling, cell_order_key


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


@dataclass(frozen=True)
class OracleBudget:
    max_cells: int = 64
    max_solutions: int | None = None
    max_steps: int = 10_000_000

    def __post_init__(self):
        if self.max_cells < 1 or self.max_steps < 1:
            raise ValueError("budget limits must be positive")
        if self.max_solutions is not None and self.max_solutions < 1:
            raise ValueError("budget limits must be positive")


DEFAULT_BUDGET = OracleBudget()


def _representable(n: int, sizes) -> bool:
    reach = [False] * (n + 1)
    reach[0] = True
    for i in range(1, n + 1):
        reach[i] = any(s <= i and reach[i - s] for s in sizes)
    return reach[n]


class _Problem:
    """Placement masks for one (region, tileset) pair."""

    def __init__(self, region: Polyomino, tiles: TileSet, budget: OracleBudget):
        if not region.cells:
            raise ValueError("region is empty")
        if len(region) > budget.max_cells:
            raise BudgetExceeded(f"region has {len(region)} cells, budget allows {budget.max_cells}")
        if region.dim != tiles.dim:
            raise ValueError("region and tile set have different dimensions")
        self.region = region
        self.tiles = tiles
        self.budget = budget
        self.order = sorted(region.cells, key=cell_order_key)
        index = {c: i for i, c in enumerate(self.order)}
        self.full = (1 << len(self.order)) - 1
        # candidates[i]: list of (mask, placement) whose first cell is order[i]
        self.candidates: list[list] = [[] for _ in self.order]
        shapes = []
        for ti, variants in enumerate(tiles.variants):
            for v in variants:
                cells = sorted(v.cells, key=cell_order_key)
                anchor = cells[0]
                rel = [tuple(a - b for a, b in zip(c, anchor)) for c in cells]
                shapes.append((ti, v, anchor, rel))
        for i, c in enumerate(self.order):
            for ti, v, anchor, rel in shapes:
                mask = 0
                for r in rel:
                    j = index.get(tuple(a + b for a, b in zip(c, r)))
                    if j is None:
                        break
                    mask |= 1 << j
                else:
                    offset = tuple(a - b for a, b in zip(c, anchor))
                    self.candidates[i].append((mask, Placement(ti, v, offset)))
        self.nodes = 0
        self.feasible = _representable(len(self.order), {t.size for t in tiles.tiles})

    def solutions(self) -> Iterator[list]:
        if not self.feasible:
            return
        stack: list = []
        yield from self._search(0, stack)

    def _search(self, covered: int, stack: list):
        self.nodes += 1
        if self.nodes > self.budget.max_steps:
            raise BudgetExceeded(f"search expanded more than {self.budget.max_steps} nodes",
                                 self.nodes)
        if covered == self.full:
            yield list(stack)
            return
        low = ~covered & (covered + 1)
        i = low.bit_length() - 1
        for mask, placement in self.candidates[i]:
            if mask & covered:
                continue
            stack.append(placement)
            yield from self._search(covered | mask, stack)
            stack.pop()

    def count(self) -> int:
        if not self.feasible:
            return 0
        memo: dict = {}
        return self._count(0, memo)

    def _count(self, covered: int, memo: dict) -> int:
        if covered == self.full:
            return 1
        hit = memo.get(covered)
        if hit is not None:
            return hit
        self.nodes += 1
        if self.nodes > self.budget.max_steps:
            raise BudgetExceeded(f"search expanded more than {self.budget.max_steps} nodes",
                                 self.nodes)
        low = ~covered & (covered + 1)
        i = low.bit_length() - 1
        total = 0
        for mask, _ in self.candidates[i]:
            if not mask & covered:
                total += self._count(covered | mask, memo)
        memo[covered] = total
        return total


def is_tileable(region: Polyomino, tiles: TileSet, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Exact decision.  Raises BudgetExceeded instead of guessing."""
    return find_tiling(region, tiles, budget) is not None


def find_tiling(region: Polyomino, tiles: TileSet,
                budget: OracleBudget = DEFAULT_BUDGET) -> Tiling | None:
    """The first tiling in search order, or None."""
    prob = _Problem(region, tiles, budget)
    for sol in prob.solutions():
        return Tiling(region, tiles, tuple(sol))
    return None


def enumerate_tilings(region: Polyomino, tiles: TileSet,
                      budget: OracleBudget = DEFAULT_BUDGET) -> Iterator[Tiling]:
    """Every distinct tiling once, in deterministic search order.

    Exceeding ``budget.max_solutions`` raises BudgetExceeded rather than
    silently truncating.
    """
    prob = _Problem(region, tiles, budget)
    found = 0
    for sol in prob.solutions():
        found += 1
        if budget.max_solutions is not None and found > budget.max_solutions:
            raise BudgetExceeded(f"more than {budget.max_solutions} tilings", prob.nodes)
        yield Tiling(region, tiles, tuple(sol))


def count_tilings(region: Polyomino, tiles: TileSet,
                  budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Number of tilings, counted with memoization on the cover mask."""
    return _Problem(region, tiles, budget).count()
