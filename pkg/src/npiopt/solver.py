"""Exact per-day, per-region solve of the bi-objective assignment program.

One day's problem: pick exactly one level per plan minimizing

    sum_p level_p * base_cost_p                      (stringency)
  + (1/beta) * (alpha + sum_p w_{p,level_p}/100 * alpha)   (case impact)

where w are percentage impact weights (negative for helpful plans), beta is
the region's new cases at prescription start and alpha the previous day's
predicted cases. Weights arrive in percent, so they are divided by 100
before scaling alpha; this keeps the case term commensurate with the
normalized stringency term.

The objective is separable across plans and the only coupling constraint
(one level per plan) couples levels within a single plan, so a per-plan
argmin is the exact global minimizer. `enumerate_oracle` brute-forces the
joint space as an independent check that survives any future objective
change that breaks separability. Ties break toward lower levels; the
oracle keeps the lexicographically smallest level vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import enumerate_min
from .catalog import PlanCatalog, validate_assignment
from .costs import CostModel
from .errors import (
    InfeasibleForcing,
    InvalidAssignment,
    MissingWeight,
    SpaceTooLarge,
    ZeroBeta,
)
from .impact import ImpactWeights
from .ingest import RegionHistory, RegionKey

__all__ = [
    "ObjectiveContext",
    "ForcingState",
    "Solution",
    "case_objective",
    "solve_exact",
    "enumerate_oracle",
    "update_forcing",
    "derive_min_runs",
    "ENUMERATION_CAP",
    "MAX_MIN_RUN_DAYS",
]

ENUMERATION_CAP = 10_000_000
MAX_MIN_RUN_DAYS = 7


@dataclass(frozen=True)
class ObjectiveContext:
    """Inputs fixing one day's objective. beta stays constant over a rollout."""

    beta: float
    alpha: float
    weights: ImpactWeights
    cost_model: CostModel


@dataclass(frozen=True)
class ForcingState:
    """Active level forcings and the per-(plan, level) minimum-run table."""

    forced: dict[str, int] = field(default_factory=dict)
    min_run: dict[tuple[str, int], int] = field(default_factory=dict)

    @classmethod
    def empty(cls) -> "ForcingState":
        return cls()


@dataclass(frozen=True)
class Solution:
    assignment: dict[str, int]
    objective_value: float
    stringency_term: float
    case_term: float


def case_objective(
    ctx: ObjectiveContext, assignment: dict[str, int], catalog: PlanCatalog
) -> float:
    """Normalized case objective of one assignment."""
    if ctx.beta <= 0:
        raise ZeroBeta(f"beta must be positive, got {ctx.beta}")
    if not validate_assignment(catalog, assignment):
        raise InvalidAssignment(f"invalid assignment: {assignment}")
    total_w = 0.0
    for code in catalog.codes:
        pair = (code, assignment[code])
        if pair not in ctx.weights.c:
            raise MissingWeight(f"no weight for {pair}")
        total_w += ctx.weights.c[pair]
    return (ctx.alpha / ctx.beta) * (1.0 + total_w / 100.0)


def _objective_terms(
    ctx: ObjectiveContext, catalog: PlanCatalog, forcing: ForcingState | None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-(plan, level) objective contributions plus per-plan level bounds."""
    if ctx.beta <= 0:
        raise ZeroBeta(f"beta must be positive, got {ctx.beta}")
    ratio = ctx.alpha / ctx.beta
    n = len(catalog)
    width = max(p.n_levels for p in catalog.plans)
    terms = np.full((n, width), np.inf)
    lows = np.zeros(n, dtype=np.int64)
    highs = np.empty(n, dtype=np.int64)
    for i, plan in enumerate(catalog.plans):
        highs[i] = plan.max_level
        for level in plan.levels:
            pair = (plan.code, level)
            if pair not in ctx.weights.c:
                raise MissingWeight(f"no weight for {pair}")
            terms[i, level] = (
                level * ctx.cost_model.base[plan.code]
                + ratio * ctx.weights.c[pair] / 100.0
            )
    if forcing is not None:
        for code, level in forcing.forced.items():
            i = catalog.index_of(code)
            if not 0 <= level <= catalog.plan(code).max_level:
                raise InfeasibleForcing(f"forced level {code}={level} not admissible")
            lows[i] = highs[i] = level
    return terms, lows, highs


def _build_solution(
    ctx: ObjectiveContext, catalog: PlanCatalog, levels: np.ndarray
) -> Solution:
    assignment = {code: int(levels[i]) for i, code in enumerate(catalog.codes)}
    stringency = sum(
        assignment[code] * ctx.cost_model.base[code] for code in catalog.codes
    )
    case = case_objective(ctx, assignment, catalog)
    return Solution(
        assignment=assignment,
        objective_value=stringency + case,
        stringency_term=stringency,
        case_term=case,
    )


def solve_exact(
    ctx: ObjectiveContext, catalog: PlanCatalog, forcing: ForcingState | None = None
) -> Solution:
    """Global minimizer via per-plan argmin; ties go to the lowest level."""
    terms, lows, highs = _objective_terms(ctx, catalog, forcing)
    levels = np.empty(len(catalog), dtype=np.int64)
    for i in range(len(catalog)):
        row = terms[i, lows[i] : highs[i] + 1]
        levels[i] = lows[i] + int(np.argmin(row))
    return _build_solution(ctx, catalog, levels)


def enumerate_oracle(
    ctx: ObjectiveContext,
    catalog: PlanCatalog,
    forcing: ForcingState | None = None,
    cap: int = ENUMERATION_CAP,
    backend: str | None = None,
) -> Solution:
    """Brute-force minimum over every admissible joint assignment."""
    terms, lows, highs = _objective_terms(ctx, catalog, forcing)
    space = int(np.prod(highs - lows + 1))
    if space > cap:
        raise SpaceTooLarge(f"joint space {space} exceeds cap {cap}")
    _, levels = enumerate_min(terms, lows, highs, backend=backend)
    return _build_solution(ctx, catalog, levels)


def update_forcing(
    recent_prescriptions: list[dict[str, int]],
    min_run: dict[tuple[str, int], int],
    catalog: PlanCatalog,
) -> ForcingState:
    """Forcings derived from the trailing run of each plan's current level.

    A (plan, level) is forced to persist while its run over the supplied
    window (at most the last 7 prescribed days) is still shorter than its
    minimum-run requirement.
    """
    window = recent_prescriptions[-MAX_MIN_RUN_DAYS:]
    forced: dict[str, int] = {}
    if window:
        latest = window[-1]
        for code in catalog.codes:
            level = latest[code]
            run = 0
            for assignment in reversed(window):
                if assignment[code] != level:
                    break
                run += 1
            if run < min_run.get((code, level), 1):
                forced[code] = level
    return ForcingState(forced=forced, min_run=dict(min_run))


def derive_min_runs(
    histories: dict[RegionKey, RegionHistory], catalog: PlanCatalog
) -> dict[tuple[str, int], int]:
    """Median historical run length per (plan, level), clamped to 1..7.

    Runs are maximal stretches of consecutive days a region held a plan at
    one level, pooled across all regions. Unobserved pairs default to 1
    (no forcing).
    """
    run_lengths: dict[tuple[str, int], list[int]] = {}
    for key in sorted(histories, key=lambda k: k.canonical()):
        hist = histories[key]
        for i, code in enumerate(hist.plan_codes):
            series = hist.ip_levels[:, i]
            start = 0
            for t in range(1, len(series) + 1):
                if t == len(series) or series[t] != series[start]:
                    run_lengths.setdefault((code, int(series[start])), []).append(
                        t - start
                    )
                    start = t
    out: dict[tuple[str, int], int] = {}
    for plan in catalog.plans:
        for level in plan.levels:
            lengths = run_lengths.get((plan.code, level))
            if not lengths:
                out[(plan.code, level)] = 1
            else:
                median = float(np.median(lengths))
                out[(plan.code, level)] = int(
                    min(MAX_MIN_RUN_DAYS, max(1, np.floor(median + 0.5)))
                )
    return out
