"""Polyomino tiling engine: a greedy tiler for the fixed domino and L with
its local moves, fountain sets with incremental growth tiling, a decision
procedure for the domino/L/3-bar/T set, and an exact-cover oracle that
checks all of them."""
from .dominol import (
    MoveApplication,
    Untileable,
    alg_decide,
    alg_tile,
    apply_move,
    connect_tilings,
    find_move_applications,
)
from .enumeration import enumerate_fixed_polyominoes, gen_random_polyomino, gen_random_tiled_region
from .formats import FormatError, emit_region, emit_tiling, parse_region, parse_tiling
from .fountain import (
    alg2_tile,
    count_subtiles_by_spokes,
    fsgen,
    is_fountain_set,
    plus_subtiles,
    sd_size,
)
from .lattice import (
    DOMINO_L,
    S2,
    SA,
    DimensionError,
    Placement,
    Polyomino,
    Symmetry,
    Tile,
    TileSet,
    Tiling,
    validate_tiling,
)
from .oracle import BudgetExceeded, OracleBudget, count_tilings, enumerate_tilings, find_tiling, is_tileable
from .render import render
from .sa import in_crenellated_class, sa_decide, sa_tile

__version__ = "0.1.0"
