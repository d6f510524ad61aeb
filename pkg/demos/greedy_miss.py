"""The domino+L greedy against the exact oracle on a region it gets wrong.

    python demos/greedy_miss.py
"""
from tessella import DOMINO_L, alg_tile, find_tiling, parse_region, render
from tessella.dominol import Untileable

REGION = """
.#####
.#..##
##....
"""

region = parse_region(REGION)
print(REGION.strip(), "\n")

try:
    alg_tile(region)
except Untileable as e:
    print(f"greedy: untileable ({e}, {e.tiles_placed} tiles placed)")

print("\noracle:")
print(render(find_tiling(region, DOMINO_L)))

# the L has to sit at the right end of the top row, not the left
print("\nsearch mode:")
print(render(alg_tile(region, search=True)))
