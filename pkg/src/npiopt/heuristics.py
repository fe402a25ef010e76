"""Baseline prescription generators: blind-greedy and seeded random.

The blind-greedy family starts all plans at level 0 and repeatedly raises
the cheapest still-raisable plan by one level (level-1 cost is the
increment cost at every level; ties follow catalog order) until everything
sits at its maximum. Variant k of n takes the assignment after
round((k+1)/n of the trajectory) increments and prescribes it every day.
The random heuristic draws every (region, day, plan) level independently
and uniformly from the plan's level set, keyed so any draw is reproducible
in isolation.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .catalog import PlanCatalog
from .costs import CostModel
from .ingest import RegionKey

__all__ = [
    "greedy_trajectory",
    "blind_greedy",
    "random_level",
    "random_prescription",
    "N_GREEDY_VARIANTS",
    "N_RANDOM_VARIANTS",
]

N_GREEDY_VARIANTS = 10
N_RANDOM_VARIANTS = 5


def greedy_trajectory(cost_model: CostModel, catalog: PlanCatalog) -> list[dict[str, int]]:
    """All intermediate assignments, step 0 (all-zero) to all-max."""
    current = {code: 0 for code in catalog.codes}
    steps = [dict(current)]
    total_increments = sum(p.max_level for p in catalog.plans)
    for _ in range(total_increments):
        cheapest = min(
            (p.code for p in catalog.plans if current[p.code] < p.max_level),
            key=lambda code: (cost_model.base[code], catalog.index_of(code)),
        )
        current[cheapest] += 1
        steps.append(dict(current))
    return steps


def blind_greedy(
    cost_model: CostModel,
    catalog: PlanCatalog,
    variant: int,
    n_variants: int = N_GREEDY_VARIANTS,
) -> dict[str, int]:
    """Constant daily assignment for greedy variant `variant` of `n_variants`."""
    if not 0 <= variant < n_variants:
        raise ValueError(f"variant must be in 0..{n_variants - 1}")
    trajectory = greedy_trajectory(cost_model, catalog)
    total = len(trajectory) - 1
    step = int(np.floor((variant + 1) * total / n_variants + 0.5))
    return trajectory[step]


def _stable_hash(*parts: object) -> int:
    digest = hashlib.sha256("|".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def random_level(
    catalog: PlanCatalog, seed: int, region: RegionKey, day: int, plan_code: str
) -> int:
    """Uniform level draw keyed by (seed, region, day, plan)."""
    plan = catalog.plan(plan_code)
    rng = np.random.default_rng(
        [seed, _stable_hash(region.canonical()), day, catalog.index_of(plan_code)]
    )
    return int(rng.integers(0, plan.n_levels))


def random_prescription(
    catalog: PlanCatalog, seed: int, region: RegionKey, horizon_days: int
) -> list[dict[str, int]]:
    """Per-day random assignments for one region over the horizon."""
    return [
        {code: random_level(catalog, seed, region, day, code) for code in catalog.codes}
        for day in range(horizon_days)
    ]
