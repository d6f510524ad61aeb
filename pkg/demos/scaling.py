"""Timing both fast tilers on Eden-random regions.

    python demos/scaling.py [max_n]
"""
import sys

from tessella.bench import bench_run

top = int(sys.argv[1]) if len(sys.argv) > 1 else 10**5
sizes = [n for n in (10**3, 10**4, 10**5, 10**6) if n <= top]

for solver in ("domino-l", "s2"):
    report = bench_run(sizes, solver, repetitions=3)
    print(solver)
    for n, t in report.medians.items():
        tiled = sum(r.result == "tiled" for r in report.records if r.n == n)
        print(f"  n={n:>8}  median {t:.4f} s  tiled {tiled}/3")
    print(f"  fitted exponent b = {report.exponent:.3f}\n")
