"""Which regions the domino, L, 3-bar and T cannot tile.

    python demos/crenellated.py
"""
from tessella import in_crenellated_class, parse_region, render, sa_tile
from tessella.lattice import Polyomino


def pluses(*centers):
    return Polyomino(2, frozenset((x + dx, y + dy) for x, y in centers
                                  for dx, dy in ((0, 0), (1, 0), (-1, 0), (0, 1), (0, -1))))


cases = {
    "plus": pluses((0, 0)),
    "two pluses tip to tip": pluses((0, 0), (2, 0)),
    "bent chain": pluses((0, 0), (2, 0), (2, 2), (4, 2)),
    "ring of four": pluses((0, 0), (2, 0), (0, 2), (2, 2)),
    "knight step": pluses((0, 0), (2, 1)),
    "3x3": parse_region("###\n###\n###"),
}

for name, region in cases.items():
    report = in_crenellated_class(region)
    if report.in_class:
        print(f"{name}: untileable, pluses centred at {report.centers}")
    else:
        print(f"{name}: tileable ({report.reason.value})")
        print(render(sa_tile(region)))
    print()
