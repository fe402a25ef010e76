#!/usr/bin/env python3
"""Benchmark the enumeration-oracle backends on the full joint level space.

The oracle sweeps all 7,776,000 admissible assignments per instance; this
script times the numba kernel against the pure-numpy broadcast fallback on
identical random instances and verifies they return identical results.

    python3 benchmarks/bench_oracle.py --instances 20
    NPIOPT_DISABLE_NUMBA=1 npiopt ...   # forces the numpy path in the engine
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from npiopt._kernels import ORACLE_BACKEND, enumerate_min
from npiopt.catalog import default_catalog


def build_instances(n: int, seed: int):
    catalog = default_catalog()
    sizes = np.array([p.n_levels for p in catalog.plans])
    width = int(sizes.max())
    rng = np.random.default_rng(seed)
    instances = []
    for _ in range(n):
        terms = np.full((len(sizes), width), np.inf)
        for i, s in enumerate(sizes):
            terms[i, :s] = rng.normal(0.0, 1.0, s)
        instances.append(
            (terms, np.zeros(len(sizes), dtype=np.int64), (sizes - 1).astype(np.int64))
        )
    return instances


def time_backend(backend: str, instances) -> list[float]:
    durations = []
    for terms, lows, highs in instances:
        started = time.perf_counter()
        enumerate_min(terms, lows, highs, backend=backend)
        durations.append(time.perf_counter() - started)
    return durations


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--instances", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    instances = build_instances(args.instances, args.seed)
    backends = ["numpy"]
    if ORACLE_BACKEND == "numba":
        # trigger compilation outside the timed region
        enumerate_min(*instances[0], backend="numba")
        backends.insert(0, "numba")
    else:
        print("numba backend unavailable (flag or missing install); timing numpy only")

    results = {b: time_backend(b, instances) for b in backends}
    print(f"\n{args.instances} instances x 7,776,000 assignments each")
    print(f"{'backend':<8} {'median':>10} {'mean':>10} {'total':>10}")
    for backend, durations in results.items():
        print(
            f"{backend:<8} {statistics.median(durations) * 1e3:>8.1f}ms "
            f"{statistics.mean(durations) * 1e3:>8.1f}ms "
            f"{sum(durations):>9.2f}s"
        )

    if len(backends) == 2:
        mismatches = 0
        for terms, lows, highs in instances:
            best_a, lev_a = enumerate_min(terms, lows, highs, backend="numba")
            best_b, lev_b = enumerate_min(terms, lows, highs, backend="numpy")
            if best_a != best_b or not np.array_equal(lev_a, lev_b):
                mismatches += 1
        print(f"\nbackend agreement: {args.instances - mismatches}/{args.instances} identical")


if __name__ == "__main__":
    main()
