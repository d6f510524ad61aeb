"""Greedy tiling by the fixed horizontal domino and L-tromino, plus two
local moves between tilings.  The moves link all tilings of every region
up to 8 cells but not beyond (see :func:`connect_tilings`).

The L is ``{(0,0), (1,0), (1,1)}`` and neither tile may be rotated.

``alg_tile`` repeats, on the untiled remainder R_c:

A. if some top row (maximal horizontal run with nothing of R_c above it)
   has even length, cover it with dominoes;
B. else if some top-left corner exists, place its forced domino;
C. else put an L with its top cell on the leftmost cell of the leftmost
   top row, or report the region untileable.

The greedy can reject tileable regions; ``search=True`` makes it exact.

The scanline state lives in :class:`RunIndex`: cells are packed into
integer keys on a padded grid, runs are relabelled smaller-half-first when
they split, and candidates for A, B and C sit in lazily validated heaps.
That gives O(n log n) overall.
"""
from __future__ import annotations

import heapq
from array import array
from collections import deque
from dataclasses import dataclass
from itertools import chain
from typing import NamedTuple

import numpy as np

from .lattice import (
    DOMINO,
    DOMINO_L,
    L_TROMINO,
    DimensionError,
    Placement,
    Polyomino,
    Tiling,
)
from .oracle import BudgetExceeded

PAD = 3
DOMINO_KIND = 0
L_KIND = 1


class Untileable(Exception):
    """Raised when a solver proves its region cannot be tiled."""

    def __init__(self, message: str, row=None, tiles_placed: int = 0):
        super().__init__(message)
        self.row = row
        self.tiles_placed = tiles_placed


class _ZeroDict(dict):
    def __missing__(self, key):
        return 0


class Run(NamedTuple):
    y: int
    x_lo: int
    x_hi: int
    uncovered_above: int

    @property
    def length(self) -> int:
        return self.x_hi - self.x_lo + 1

    @property
    def is_top(self) -> bool:
        return self.uncovered_above == 0


class Corner(NamedTuple):
    kind: int  # 1 or 2
    anchor: tuple


class RowDecomposition(NamedTuple):
    runs: list
    top_rows: list
    leftmost_top_row: Run | None


class RunIndex:
    """Maximal horizontal runs of untiled cells, with top-row and corner
    candidate heaps.  Mutated only through :meth:`remove`."""

    def __init__(self, cells):
        if not cells:
            raise ValueError("empty region")
        n = len(cells)
        flat = np.fromiter(chain.from_iterable(cells), dtype=np.int64)
        if flat.size != 2 * n:
            raise DimensionError("the domino/L solver works on 2D regions")
        xy = flat.reshape(n, 2)
        xs, ys = xy[:, 0], xy[:, 1]
        self.xmin, self.ymin = int(xs.min()), int(ys.min())
        W = int(xs.max()) - self.xmin + 1 + 2 * PAD
        H = int(ys.max()) - self.ymin + 1 + 2 * PAD
        self.W, self.H = W, H
        self.size = n
        keys = np.sort((xs - self.xmin + PAD) + (ys - self.ymin + PAD) * W)
        self.even_heap: list[int] = []
        self.top_heap: list[int] = []
        self.corner_heap: list[int] = []
        if n >= 512 and W * H <= 8 * n + 4096:
            self._init_dense(keys)
        else:
            self._init_sparse(keys.tolist())

    def _init_dense(self, keys) -> None:
        # vectorised construction; the heaps come out sorted, hence valid
        W, n = self.W, len(keys)
        grid = np.zeros(W * self.H, dtype=np.uint8)
        grid[keys] = 1
        starts = np.flatnonzero(np.diff(keys) != 1) + 1
        first = np.concatenate(([0], starts))
        last = np.concatenate((starts, [n])) - 1
        lo, hi = keys[first], keys[last]
        rid = np.zeros(W * self.H, dtype=np.int64)
        rid[keys] = np.repeat(np.arange(len(first)), last - first + 1)
        above = np.add.reduceat(grid[keys + W].astype(np.int64), first)
        self.live = bytearray(grid.tobytes())
        self.rid = array("q")
        self.rid.frombytes(rid.tobytes())
        self.run_lo, self.run_hi = lo.tolist(), hi.tolist()
        self.run_above = above.tolist()
        top = above == 0
        self.even_heap = lo[top & ((hi - lo) % 2 == 1)].tolist()
        top_hi = hi[top]
        self.top_heap = np.sort((top_hi % W) * self.H + (self.H - 1 - top_hi // W)).tolist()
        g = grid.astype(bool)
        base = g[keys + 1] & ~g[keys - 1]
        up = g[keys + W]
        case2 = (base & up & g[keys + W + 1] & ~g[keys + W - 1]
                 & ~g[keys + 2 * W] & ~g[keys + 2 * W + 1])
        case1 = base & ~up & ~g[keys - W] & ~g[keys + W + 1]
        self.corner_heap = keys[case1 | case2].tolist()

    def _init_sparse(self, keys: list) -> None:
        W = self.W
        if W * self.H <= 8 * len(keys) + 4096:
            live = bytearray(W * self.H)
            rid = array("q", bytes(8 * W * self.H))
        else:
            live = _ZeroDict()
            rid = {}
        for k in keys:
            live[k] = 1
        self.live, self.rid = live, rid
        self.run_lo: list[int] = []
        self.run_hi: list[int] = []
        self.run_above: list[int] = []
        start = prev = keys[0]
        for k in keys[1:] + [None]:
            if k is not None and k == prev + 1:
                prev = k
                continue
            r = len(self.run_lo)
            above = 0
            for j in range(start, prev + 1):
                rid[j] = r
                above += live[j + W]
            self.run_lo.append(start)
            self.run_hi.append(prev)
            self.run_above.append(above)
            if k is not None:
                start = prev = k
        for r in range(len(self.run_lo)):
            self._refresh(r)
        corner = self.corner_kind
        self.corner_heap = [k for k in keys if corner(k)]
        heapq.heapify(self.even_heap)
        heapq.heapify(self.top_heap)

    def copy(self) -> "RunIndex":
        new = object.__new__(RunIndex)
        new.__dict__.update(self.__dict__)
        new.live = type(self.live)(self.live)
        new.rid = type(self.rid)(self.rid) if isinstance(self.rid, dict) else array("q", self.rid)
        for name in ("run_lo", "run_hi", "run_above", "even_heap", "top_heap", "corner_heap"):
            setattr(new, name, list(getattr(self, name)))
        return new

    # ------------------------------------------------------------ coordinates
    def key(self, x: int, y: int) -> int:
        return (x - self.xmin + PAD) + (y - self.ymin + PAD) * self.W

    def coords(self, k: int) -> tuple:
        return (k % self.W - PAD + self.xmin, k // self.W - PAD + self.ymin)

    def top_key(self, hi: int) -> int:
        # smallest right end first, then greatest y
        return (hi % self.W) * self.H + (self.H - 1 - hi // self.W)

    def _hi_from_top_key(self, t: int) -> int:
        x, r = divmod(t, self.H)
        return x + (self.H - 1 - r) * self.W

    def __len__(self) -> int:
        return self.size

    def is_live(self, x: int, y: int) -> bool:
        return bool(self.live[self.key(x, y)]) if self._in_grid(x, y) else False

    def _in_grid(self, x, y) -> bool:
        return (0 <= x - self.xmin + PAD < self.W) and (0 <= y - self.ymin + PAD < self.H)

    # ------------------------------------------------------------ predicates
    def corner_kind(self, a: int) -> int:
        """1 or 2 if ``a`` anchors a top-left corner of that case, else 0."""
        live, W = self.live, self.W
        if not live[a] or not live[a + 1] or live[a - 1]:
            return 0
        if live[a + W]:
            if (live[a + W + 1] and not live[a + W - 1]
                    and not live[a + 2 * W] and not live[a + 2 * W + 1]):
                return 2
            return 0
        if not live[a - W] and not live[a + W + 1]:
            return 1
        return 0

    def _refresh(self, r: int) -> None:
        if self.run_above[r] == 0 and self.run_lo[r] >= 0:
            lo, hi = self.run_lo[r], self.run_hi[r]
            heapq.heappush(self.top_heap, self.top_key(hi))
            if (hi - lo) % 2 == 1:
                heapq.heappush(self.even_heap, lo)

    # ------------------------------------------------------------ mutation
    def remove(self, keys) -> None:
        """Mark cells tiled, keeping runs, counts and candidate heaps exact."""
        live, rid, W = self.live, self.rid, self.W
        run_lo, run_hi, run_above = self.run_lo, self.run_hi, self.run_above
        changed = []
        for c in keys:
            if not live[c]:
                raise ValueError(f"cell {self.coords(c)} is not untiled")
            live[c] = 0
            r = rid[c]
            if live[c + W]:
                run_above[r] -= 1
            d = c - W
            if live[d]:
                rd = rid[d]
                run_above[rd] -= 1
                changed.append(rd)
            lo, hi = run_lo[r], run_hi[r]
            if lo == hi:
                run_lo[r] = -1
                continue
            changed.append(r)
            if c == lo:
                run_lo[r] = c + 1
            elif c == hi:
                run_hi[r] = c - 1
            else:
                s = len(run_lo)
                if c - lo <= hi - c:
                    a, b = lo, c - 1
                    run_lo[r] = c + 1
                else:
                    a, b = c + 1, hi
                    run_hi[r] = c - 1
                cnt = 0
                for j in range(a, b + 1):
                    rid[j] = s
                    cnt += live[j + W]
                run_lo.append(a)
                run_hi.append(b)
                run_above.append(cnt)
                run_above[r] -= cnt
                changed.append(s)
        self.size -= len(keys)
        for r in changed:
            self._refresh(r)
        corner = self.corner_kind
        push = heapq.heappush
        ch = self.corner_heap
        seen = set()
        for c in keys:
            for a in (c + 1, c + W, c - W, c - W - 1, c - W + 1, c - 2 * W, c - 2 * W - 1):
                if a not in seen:
                    seen.add(a)
                    if live[a] and corner(a):
                        push(ch, a)

    # ------------------------------------------------------------ queries
    def pop_even_top_row(self) -> int | None:
        """Key of the leftmost cell of the lowest-then-leftmost even top row."""
        h = self.even_heap
        live, rid = self.live, self.rid
        while h:
            lo = h[0]
            if live[lo]:
                r = rid[lo]
                if self.run_lo[r] == lo and self.run_above[r] == 0 and (self.run_hi[r] - lo) % 2 == 1:
                    return lo
            heapq.heappop(h)
        return None

    def pop_corner(self) -> tuple | None:
        h = self.corner_heap
        while h:
            a = h[0]
            kind = self.corner_kind(a)
            if kind:
                return kind, a
            heapq.heappop(h)
        return None

    def pop_leftmost_top_row(self) -> int | None:
        """Run id of the leftmost top row (smallest right end, then highest)."""
        h = self.top_heap
        live, rid = self.live, self.rid
        while h:
            hi = self._hi_from_top_key(h[0])
            if live[hi]:
                r = rid[hi]
                if self.run_hi[r] == hi and self.run_above[r] == 0:
                    return r
            heapq.heappop(h)
        return None

    def run(self, r: int) -> Run:
        lo, hi = self.run_lo[r], self.run_hi[r]
        x_lo, y = self.coords(lo)
        return Run(y, x_lo, x_lo + hi - lo, self.run_above[r])

    def live_keys(self):
        if isinstance(self.live, dict):
            return sorted(k for k, v in self.live.items() if v)
        return [k for k, v in enumerate(self.live) if v]


def row_decomposition(state: RunIndex) -> RowDecomposition:
    """All current runs (in scan order), the top rows among them, and the
    leftmost top row; by full scan, independent of the candidate heaps."""
    runs = []
    keys = state.live_keys()
    i = 0
    W = state.W
    while i < len(keys):
        j = i
        while j + 1 < len(keys) and keys[j + 1] == keys[j] + 1:
            j += 1
        above = sum(1 for k in keys[i:j + 1] if state.live[k + W])
        x_lo, y = state.coords(keys[i])
        runs.append(Run(y, x_lo, x_lo + j - i, above))
        i = j + 1
    tops = [r for r in runs if r.is_top]
    leftmost = min(tops, key=lambda r: (r.x_hi, -r.y)) if tops else None
    return RowDecomposition(runs, tops, leftmost)


def find_corner(state: RunIndex) -> Corner | None:
    """The top-left corner with the smallest (y, x) anchor, by full scan."""
    for k in state.live_keys():
        kind = state.corner_kind(k)
        if kind:
            return Corner(kind, state.coords(k))
    return None


def _alg_run(region: Polyomino, search: bool = False) -> tuple:
    if region.dim != 2:
        raise DimensionError("the domino/L solver works on 2D regions")
    idx = RunIndex(region.cells)
    W = idx.W
    placed: list[int] = []  # kind, key pairs flattened
    # search mode: (snapshot, placed length, untried L positions) per choice point
    stack: list = []
    while idx.size:
        lo = idx.pop_even_top_row()
        if lo is not None:
            r = idx.rid[lo]
            hi = idx.run_hi[r]
            for k in range(lo, hi + 1, 2):
                idx.remove((k, k + 1))
                placed.append(DOMINO_KIND)
                placed.append(k)
            continue
        corner = idx.pop_corner()
        if corner is not None:
            kind, a = corner
            k = a if kind == 1 else a + W
            idx.remove((k, k + 1))
            placed.append(DOMINO_KIND)
            placed.append(k)
            continue
        r = idx.pop_leftmost_top_row()
        if r is None:  # pragma: no cover - a nonempty remainder always has a top row
            raise AssertionError("no top row in a nonempty remainder")
        x0 = idx.run_lo[r]
        live = idx.live
        if not search:
            options = [x0] if live[x0 - W - 1] and live[x0 - W] else []
        else:
            options = [p for p in range(x0, idx.run_hi[r] + 1, 2)
                       if live[p - W - 1] and live[p - W]]
        if not options and stack:
            snap, n_placed, options = stack.pop()
            idx = snap
            W = idx.W
            del placed[n_placed:]
        if not options:
            row = idx.run(r) if not search else None
            raise Untileable("no L fits at the left end of the leftmost top row"
                             + (f" y={row.y}, x={row.x_lo}..{row.x_hi}" if row else ""),
                             row=row, tiles_placed=len(placed) // 2)
        p = options[0]
        if len(options) > 1:
            stack.append((idx.copy(), len(placed), options[1:]))
        idx.remove((p - W - 1, p - W, p))
        placed.append(L_KIND)
        placed.append(p - W - 1)
    return idx, placed


def alg_tile(region: Polyomino, search: bool = False) -> Tiling:
    """Tile ``region`` by the fixed domino and L, or raise :class:`Untileable`.

    By default this is the pure greedy: step C only tries the leftmost cell
    of the leftmost top row.  That greedy is not exact; the 10-cell region

        .#####
        .#..##
        ##....

    is tileable (its top row needs the L at the right end) but the greedy
    rejects it.  With ``search=True`` step C instead tries every L position
    at an even offset along that top row, backtracking on failure.  Steps A
    and B stay forced, and any tiling can be rewritten to use a single L in
    the top row, so the search is exact (worst case exponential).

    A returned tiling is always valid over ``DOMINO_L``.
    """
    idx, placed = _alg_run(region, search)
    W, H = idx.W, idx.H
    ox, oy = idx.xmin - PAD, idx.ymin - PAD
    dom = DOMINO
    ell = L_TROMINO
    out = []
    append = out.append
    for i in range(0, len(placed), 2):
        k = placed[i + 1]
        y, x = divmod(k, W)
        if placed[i] == DOMINO_KIND:
            append(Placement(0, dom, (x + ox, y + oy)))
        else:
            append(Placement(1, ell, (x + ox, y + oy)))
    return Tiling(region, DOMINO_L, tuple(out))


def alg_decide(region: Polyomino, search: bool = False) -> bool:
    try:
        _alg_run(region, search)
    except Untileable:
        return False
    return True


# ---------------------------------------------------------------- local moves

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class MoveApplication:
    move: int  # 1 or 2
    direction: str  # forward | backward
    anchor: tuple
    k: int = 0  # dominoes between the two Ls; move 1 only


def move_templates(move: int, k: int = 0) -> tuple:
    """(source, target) as lists of (kind, offset) at anchor (0, 0)."""
    if move == 1:
        if k < 1:
            raise ValueError("local move 1 needs k >= 1")
        src = [(L_KIND, (0, 0))]
        src += [(DOMINO_KIND, (2 * j, 1)) for j in range(1, k + 1)]
        src += [(L_KIND, (2 * k + 1, 0))]
        tgt = [(DOMINO_KIND, (0, 0))]
        tgt += [(DOMINO_KIND, (2 * j + 1, 1)) for j in range(0, k + 1)]
        tgt += [(DOMINO_KIND, (2 * k + 1, 0))]
        return src, tgt
    if move == 2:
        src = [(DOMINO_KIND, (0, 0)), (DOMINO_KIND, (1, 1)), (L_KIND, (2, 0))]
        tgt = [(L_KIND, (0, 0)), (DOMINO_KIND, (2, 1)), (DOMINO_KIND, (2, 0))]
        return src, tgt
    raise ValueError(f"unknown move {move}")


def _kind_of(p: Placement) -> int:
    if p.variant.cells == DOMINO.cells:
        return DOMINO_KIND
    if p.variant.cells == L_TROMINO.cells:
        return L_KIND
    raise ValueError(f"placement {p} is neither the horizontal domino nor the L")


def _placement_index(t: Tiling) -> dict:
    return {(_kind_of(p), p.offset): i for i, p in enumerate(t.placements)}


def _shifted(template, anchor):
    ax, ay = anchor
    return [(kind, (x + ax, y + ay)) for kind, (x, y) in template]


def apply_move(t: Tiling, m: MoveApplication) -> Tiling:
    """Replace the move's source tiles (target tiles when backward) at the
    anchor.  Untouched placements keep their order; new ones are appended."""
    src, tgt = move_templates(m.move, m.k)
    if m.direction == BACKWARD:
        src, tgt = tgt, src
    elif m.direction != FORWARD:
        raise ValueError(f"unknown direction {m.direction!r}")
    index = _placement_index(t)
    drop = set()
    for key in _shifted(src, m.anchor):
        i = index.get(key)
        if i is None:
            raise ValueError(f"template mismatch at {m.anchor}: no {key} in the tiling")
        drop.add(i)
    kept = [p for i, p in enumerate(t.placements) if i not in drop]
    tiles = (DOMINO, L_TROMINO)
    for kind, off in _shifted(tgt, m.anchor):
        kept.append(Placement(t.tileset.index_of_shape(tiles[kind].cells), tiles[kind], off))
    return Tiling(t.region, t.tileset, tuple(kept))


def find_move_applications(t: Tiling) -> list[MoveApplication]:
    """Every (move, direction, anchor, k) whose source is present in ``t``."""
    index = _placement_index(t)
    has = index.__contains__
    out = []
    for kind, (x, y) in sorted(index, key=lambda kv: (kv[1][1], kv[1][0], kv[0])):
        if kind == L_KIND:
            # move 2 forward: this L sits at template (2, 0)
            if has((DOMINO_KIND, (x - 2, y))) and has((DOMINO_KIND, (x - 1, y + 1))):
                out.append(MoveApplication(2, FORWARD, (x - 2, y)))
            # move 2 backward: this L sits at template (0, 0)
            if has((DOMINO_KIND, (x + 2, y + 1))) and has((DOMINO_KIND, (x + 2, y))):
                out.append(MoveApplication(2, BACKWARD, (x, y)))
            # move 1 forward: first L at (0, 0), dominoes along the top, second L
            j = 1
            while has((DOMINO_KIND, (x + 2 * j, y + 1))):
                if has((L_KIND, (x + 2 * j + 1, y))):
                    out.append(MoveApplication(1, FORWARD, (x, y), k=j))
                j += 1
        else:
            # move 1 backward: bottom-left domino at (0, 0)
            if not has((DOMINO_KIND, (x + 1, y + 1))):
                continue
            j = 1
            while has((DOMINO_KIND, (x + 2 * j + 1, y + 1))):
                if has((DOMINO_KIND, (x + 2 * j + 1, y))):
                    out.append(MoveApplication(1, BACKWARD, (x, y), k=j))
                j += 1
    return out


class DisconnectedTilings(RuntimeError):
    """Two tilings of one region not linked by local moves 1 and 2."""


def connect_tilings(t1: Tiling, t2: Tiling, max_nodes: int = 100_000) -> list[MoveApplication]:
    """Shortest move sequence taking ``t1`` to ``t2`` (breadth-first search).

    Raises BudgetExceeded past ``max_nodes`` tilings and DisconnectedTilings
    if the search exhausts the component of ``t1`` without meeting ``t2``.
    """
    if t1.region != t2.region:
        raise ValueError("tilings cover different regions")
    goal = t2.blocks()
    start = t1.blocks()
    if start == goal:
        return []
    parent = {start: None}
    queue = deque([t1])
    while queue:
        cur = queue.popleft()
        for m in find_move_applications(cur):
            nxt = apply_move(cur, m)
            key = nxt.blocks()
            if key in parent:
                continue
            parent[key] = (cur.blocks(), m)
            if key == goal:
                path = []
                while parent[key] is not None:
                    prev, move = parent[key]
                    path.append(move)
                    key = prev
                return path[::-1]
            if len(parent) > max_nodes:
                raise BudgetExceeded(f"explored more than {max_nodes} tilings", len(parent))
            queue.append(nxt)
    raise DisconnectedTilings(f"{len(parent)} tilings reachable from the first, the second is not")


def tiling_component(t: Tiling, max_nodes: int = 100_000) -> set:
    """Block sets of every tiling reachable from ``t`` by local moves."""
    seen = {t.blocks()}
    queue = deque([t])
    while queue:
        cur = queue.popleft()
        for m in find_move_applications(cur):
            nxt = apply_move(cur, m)
            key = nxt.blocks()
            if key not in seen:
                seen.add(key)
                if len(seen) > max_nodes:
                    raise BudgetExceeded(f"explored more than {max_nodes} tilings", len(seen))
                queue.append(nxt)
    return seen
