"""Timing the two fast tilers on Eden-random regions and fitting
time ~ a * n**b."""
from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from .dominol import Untileable, alg_tile
from .enumeration import gen_random_polyomino
from .fountain import alg2_tile
from .lattice import S2

SOLVERS = ("domino-l", "s2")


@dataclass(frozen=True)
class BenchRecord:
    generator: str  # e.g. "eden/pcg64"
    seed: int
    n: int
    wall_time: int  # nanoseconds, solver only
    tiles_placed: int
    result: str  # "tiled" or "untileable"


@dataclass
class BenchReport:
    solver: str
    records: list = field(default_factory=list)
    medians: dict = field(default_factory=dict)  # n -> median seconds
    exponent: float | None = None
    prefactor: float | None = None


def fit_power_law(ns, times) -> tuple[float, float]:
    """Least-squares fit of log t = log a + b log n; returns (a, b)."""
    if len(ns) < 2:
        raise ValueError("need at least two sizes to fit an exponent")
    b, log_a = np.polyfit(np.log(np.asarray(ns, float)), np.log(np.asarray(times, float)), 1)
    return float(np.exp(log_a)), float(b)


def time_solver(solver: str, n: int, seed: int) -> BenchRecord:
    region = gen_random_polyomino(n, seed=seed)
    t0 = time.perf_counter_ns()
    try:
        if solver == "domino-l":
            tiling = alg_tile(region)
        elif solver == "s2":
            tiling = alg2_tile(region, S2)
        else:
            raise ValueError(f"unknown solver {solver!r}; choose from {SOLVERS}")
        placed, result = len(tiling), "tiled"
    except Untileable as e:
        placed, result = e.tiles_placed, "untileable"
    elapsed = time.perf_counter_ns() - t0
    return BenchRecord("eden/pcg64", seed, n, elapsed, placed, result)


def bench_run(sizes, solver: str = "domino-l", repetitions: int = 3, seed: int = 0) -> BenchReport:
    """Time ``solver`` on ``repetitions`` Eden regions per size (seeds
    ``seed``, ``seed + 1``, ...); region growth is not timed."""
    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise ValueError("sizes must be ascending")
    if repetitions < 1:
        raise ValueError("need at least one repetition")
    report = BenchReport(solver)
    for n in sizes:
        recs = [time_solver(solver, n, seed + r) for r in range(repetitions)]
        report.records.extend(recs)
        report.medians[n] = statistics.median(r.wall_time for r in recs) / 1e9
    if len(sizes) >= 2:
        report.prefactor, report.exponent = fit_power_law(sizes, [report.medians[n] for n in sizes])
    return report


__all__ = ["BenchRecord", "BenchReport", "SOLVERS", "bench_run", "fit_power_law", "time_solver"]
