"""Scoring of prescription schedules and Pareto-front assembly.

Every schedule, whatever produced it, is scored the same way: run the
predictor over its assignments seeded from the region's history, then take
the mean of the predicted daily cases along with the mean normalized and
raw stringency. Rows compare on (mean cases, mean normalized stringency).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import PlanCatalog
from .costs import CostModel, raw_stringency_of, stringency_of
from .errors import MissingRealIps, ScheduleGap
from .ingest import RegionHistory
from .predictor import CasePredictor
from .rollout import PrescriptionSchedule, schedule_from_assignments

__all__ = [
    "EvaluationRow",
    "ParetoFront",
    "evaluate_schedule",
    "evaluate_real_ips",
    "pareto_front",
    "world_aggregate",
    "REAL_IP_LABEL",
]

REAL_IP_LABEL = "real_ip_predicted_cases"


@dataclass(frozen=True)
class EvaluationRow:
    model_label: str
    region_scope: str  # "region" or "world-aggregate"
    mean_daily_cases: float
    mean_stringency_normalized: float
    mean_stringency_raw: float
    region: str | None = None
    cost_kind: str = ""


@dataclass(frozen=True)
class ParetoFront:
    rows: tuple[EvaluationRow, ...]


def evaluate_schedule(
    schedule: PrescriptionSchedule,
    history: RegionHistory,
    predictor: CasePredictor,
    cost_model: CostModel,
    catalog: PlanCatalog,
) -> EvaluationRow:
    """Score one schedule through the predictor over its full horizon."""
    expected_start = history.end_date
    if schedule.days and (schedule.start_date - expected_start).days != 1:
        raise ScheduleGap(
            f"schedule starts {schedule.start_date}, history ends {expected_start}"
        )
    assignments = schedule.assignments
    predicted = predictor.predict(history, assignments, len(assignments))
    normalized = [stringency_of(cost_model, a, catalog) for a in assignments]
    raw = [raw_stringency_of(cost_model, a, catalog) for a in assignments]
    return EvaluationRow(
        model_label=schedule.model_label,
        region_scope="region",
        mean_daily_cases=float(np.mean(predicted)),
        mean_stringency_normalized=float(np.mean(normalized)),
        mean_stringency_raw=float(np.mean(raw)),
        region=schedule.region.canonical(),
        cost_kind=cost_model.kind,
    )


def evaluate_real_ips(
    history: RegionHistory,
    real_future_ips: list[dict[str, int]],
    predictor: CasePredictor,
    cost_model: CostModel,
    catalog: PlanCatalog,
) -> EvaluationRow:
    """Score the historically enacted levels through the same predictor."""
    if not real_future_ips:
        raise MissingRealIps(f"{history.key.canonical()}: no enacted levels to replay")
    schedule = schedule_from_assignments(
        history=history,
        assignments=real_future_ips,
        cost_model=cost_model,
        predictor=predictor,
        catalog=catalog,
        model_label=REAL_IP_LABEL,
    )
    return evaluate_schedule(schedule, history, predictor, cost_model, catalog)


def _strictly_dominates(a: EvaluationRow, b: EvaluationRow) -> bool:
    return (
        a.mean_daily_cases <= b.mean_daily_cases
        and a.mean_stringency_normalized <= b.mean_stringency_normalized
        and (
            a.mean_daily_cases < b.mean_daily_cases
            or a.mean_stringency_normalized < b.mean_stringency_normalized
        )
    )


def pareto_front(rows: list[EvaluationRow]) -> ParetoFront:
    """Rows not strictly dominated in (mean cases, mean normalized stringency).

    Single sweep over rows sorted by cases: within one cases value only the
    minimum-stringency rows can survive, and they survive only when that
    minimum strictly beats every cheaper-cases row seen so far. Rows tied
    on both coordinates are all kept.
    """
    if not rows:
        return ParetoFront(rows=())
    order = sorted(
        range(len(rows)),
        key=lambda i: (rows[i].mean_daily_cases, rows[i].mean_stringency_normalized),
    )
    kept: list[int] = []
    best_stringency = np.inf
    i = 0
    while i < len(order):
        j = i
        cases = rows[order[i]].mean_daily_cases
        while j < len(order) and rows[order[j]].mean_daily_cases == cases:
            j += 1
        group = order[i:j]
        group_min = min(rows[k].mean_stringency_normalized for k in group)
        if group_min < best_stringency:
            kept.extend(
                k for k in group if rows[k].mean_stringency_normalized == group_min
            )
            best_stringency = group_min
        i = j
    kept.sort()
    return ParetoFront(rows=tuple(rows[k] for k in kept))


def world_aggregate(rows: list[EvaluationRow]) -> EvaluationRow:
    """Unweighted mean of per-region rows for one model.

    Rows are summed in sorted-region order so the result does not depend on
    the order the caller collected them in.
    """
    if not rows:
        raise ValueError("need at least one region row")
    labels = {r.model_label for r in rows}
    if len(labels) != 1:
        raise ValueError(f"rows mix model labels: {sorted(labels)}")
    ordered = sorted(rows, key=lambda r: r.region or "")
    kinds = {r.cost_kind for r in rows}
    return EvaluationRow(
        model_label=rows[0].model_label,
        region_scope="world-aggregate",
        mean_daily_cases=float(np.mean([r.mean_daily_cases for r in ordered])),
        mean_stringency_normalized=float(
            np.mean([r.mean_stringency_normalized for r in ordered])
        ),
        mean_stringency_raw=float(
            np.mean([r.mean_stringency_raw for r in ordered])
        ),
        region=None,
        cost_kind=kinds.pop() if len(kinds) == 1 else "",
    )
