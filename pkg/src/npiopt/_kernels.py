"""Enumeration kernels for the brute-force solver oracle.

The joint level space of the full catalog holds 7,776,000 assignments, and
the oracle sweeps all of them per instance, so this inner loop is the one
hot path in the package. The default backend is a numba @njit odometer
loop; setting NPIOPT_DISABLE_NUMBA=1 (or running without numba installed)
selects a pure-numpy broadcast fallback. Both walk the space in
lexicographic level order and keep the first minimum, and both accumulate
plan terms in the same order, so results match bit for bit.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["ORACLE_BACKEND", "enumerate_min"]

_ENV_FLAG = "NPIOPT_DISABLE_NUMBA"


def _flag_disabled() -> bool:
    return os.environ.get(_ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


def _enumerate_min_numpy(terms: np.ndarray, lows: np.ndarray, highs: np.ndarray):
    """Materialize the objective over the whole joint space, then argmin.

    The accumulator stays flat (2-D per step) because broadcasting across
    twelve axes at once is an order of magnitude slower. C-order argmin
    returns the first minimum, which over per-plan level axes is exactly
    the lexicographically smallest level vector.
    """
    n_plans = lows.shape[0]
    sizes = highs - lows + 1
    total = terms[0, lows[0] : highs[0] + 1]
    for p in range(1, n_plans):
        total = (total[:, None] + terms[p, lows[p] : highs[p] + 1]).ravel()
    flat = int(np.argmin(total))
    best = float(total[flat])
    levels = np.empty(n_plans, dtype=np.int64)
    for p in range(n_plans - 1, -1, -1):
        levels[p] = lows[p] + flat % sizes[p]
        flat //= sizes[p]
    return best, levels


def _enumerate_min_loop(terms, lows, highs):  # pragma: no cover - numba source
    # Odometer sweep with left-associated prefix sums: an increment at
    # position k only refreshes sums from k on, amortizing to ~1.3 adds per
    # assignment. Association order matches the numpy fallback exactly, so
    # both backends return bit-identical values.
    n_plans = lows.shape[0]
    lev = lows.copy()
    prefix = np.empty(n_plans, np.float64)
    acc = 0.0
    for p in range(n_plans):
        acc += terms[p, lev[p]]
        prefix[p] = acc
    best = np.inf
    best_lev = lows.copy()
    while True:
        total = prefix[n_plans - 1]
        if total < best:
            best = total
            for p in range(n_plans):
                best_lev[p] = lev[p]
        k = n_plans - 1
        while k >= 0:
            lev[k] += 1
            if lev[k] <= highs[k]:
                break
            lev[k] = lows[k]
            k -= 1
        if k < 0:
            break
        acc = prefix[k - 1] if k > 0 else 0.0
        for p in range(k, n_plans):
            acc += terms[p, lev[p]]
            prefix[p] = acc
    return best, best_lev


if _flag_disabled():
    _enumerate_min_numba = None
else:
    try:
        from numba import njit

        _enumerate_min_numba = njit(cache=True)(_enumerate_min_loop)
    except ImportError:
        _enumerate_min_numba = None

ORACLE_BACKEND = "numpy" if _enumerate_min_numba is None else "numba"


def enumerate_min(
    terms: np.ndarray,
    lows: np.ndarray,
    highs: np.ndarray,
    backend: str | None = None,
) -> tuple[float, np.ndarray]:
    """Minimum of sum_p terms[p, level_p] over level_p in lows[p]..highs[p].

    Returns (best value, level vector); ties go to the lexicographically
    smallest vector. `backend` overrides the module default ("numba" or
    "numpy") for benchmarking.
    """
    chosen = backend or ORACLE_BACKEND
    if chosen == "numba":
        if _enumerate_min_numba is None:
            raise RuntimeError("numba backend unavailable")
        best, levels = _enumerate_min_numba(
            np.ascontiguousarray(terms, dtype=np.float64),
            lows.astype(np.int64),
            highs.astype(np.int64),
        )
        return float(best), levels
    if chosen == "numpy":
        return _enumerate_min_numpy(np.asarray(terms, dtype=np.float64), lows, highs)
    raise ValueError(f"unknown backend: {chosen!r}")
