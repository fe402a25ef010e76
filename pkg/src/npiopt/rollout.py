"""Day-by-day prescription loop and the prescription CSV format.

Each region is prescribed iteratively: day 1 is solved with alpha equal to
beta (the last observed smoothed new-case count), every later day reuses
the predictor's output for the previous prescribed day as alpha, and beta
never changes within one schedule. In consecutive mode the forcing state is
recomputed each day from the trailing week of prescriptions.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field
from datetime import date, timedelta
from pathlib import Path

from .catalog import PlanCatalog
from .costs import CostModel, stringency_of
from .errors import EmptyHistory, InfeasibleForcing
from .impact import ImpactWeights
from .ingest import RegionHistory, RegionKey
from .predictor import CasePredictor
from .solver import ForcingState, ObjectiveContext, solve_exact, update_forcing

__all__ = [
    "ScheduleDay",
    "PrescriptionSchedule",
    "prescribe_region",
    "prescribe_all",
    "schedule_from_assignments",
    "write_prescriptions",
    "read_prescriptions",
    "DEFAULT_HORIZON_DAYS",
]

logger = logging.getLogger(__name__)

DEFAULT_HORIZON_DAYS = 28


@dataclass
class ScheduleDay:
    day: date
    assignment: dict[str, int]
    alpha_used: float
    stringency: float
    predicted_new_cases: float


@dataclass
class PrescriptionSchedule:
    region: RegionKey
    start_date: date
    days: list[ScheduleDay]
    model_label: str
    beta: float
    cost_kind: str
    prescription_index: int = 0
    zero_beta: bool = False

    @property
    def assignments(self) -> list[dict[str, int]]:
        return [d.assignment for d in self.days]

    @property
    def dates(self) -> list[date]:
        return [d.day for d in self.days]


def _chain_predict(
    predictor: CasePredictor,
    history: RegionHistory,
    assignments: list[dict[str, int]],
) -> float:
    """Predictor output for the last day of the given assignment prefix."""
    return float(predictor.predict(history, assignments, len(assignments))[-1])


def prescribe_region(
    history: RegionHistory,
    weights: ImpactWeights,
    cost_model: CostModel,
    predictor: CasePredictor,
    catalog: PlanCatalog,
    horizon_days: int = DEFAULT_HORIZON_DAYS,
    consecutive: bool = False,
    min_runs: dict[tuple[str, int], int] | None = None,
    model_label: str = "opt",
    prescription_index: int = 0,
) -> PrescriptionSchedule:
    """Prescribe one region for `horizon_days` starting the day after history ends.

    Regions with no positive smoothed case count cannot normalize the case
    objective; they fall back to an all-zero-level schedule, flagged via
    `zero_beta`.
    """
    if len(history) == 0:
        raise EmptyHistory(f"{history.key.canonical()}: no case data")
    beta = float(history.new_cases_smoothed[-1])
    start = history.end_date + timedelta(days=1)

    if beta <= 0:
        zero = {code: 0 for code in catalog.codes}
        return schedule_from_assignments(
            history=history,
            assignments=[dict(zero) for _ in range(horizon_days)],
            cost_model=cost_model,
            predictor=predictor,
            catalog=catalog,
            model_label=model_label,
            prescription_index=prescription_index,
            zero_beta=True,
        )

    min_runs = min_runs or {}
    days: list[ScheduleDay] = []
    assignments: list[dict[str, int]] = []
    alpha = beta
    for t in range(horizon_days):
        ctx = ObjectiveContext(
            beta=beta, alpha=alpha, weights=weights, cost_model=cost_model
        )
        forcing = (
            update_forcing(assignments, min_runs, catalog)
            if consecutive
            else None
        )
        try:
            solution = solve_exact(ctx, catalog, forcing)
        except InfeasibleForcing:
            # Corrupt forcing state must not abort a batch; solve unforced.
            logger.warning(
                "%s: infeasible forcing on day %s, solving unforced",
                history.key.canonical(),
                t,
            )
            solution = solve_exact(ctx, catalog, None)
        assignments.append(solution.assignment)
        predicted = _chain_predict(predictor, history, assignments)
        days.append(
            ScheduleDay(
                day=start + timedelta(days=t),
                assignment=solution.assignment,
                alpha_used=alpha,
                stringency=stringency_of(cost_model, solution.assignment, catalog),
                predicted_new_cases=predicted,
            )
        )
        alpha = predicted

    return PrescriptionSchedule(
        region=history.key,
        start_date=start,
        days=days,
        model_label=model_label,
        beta=beta,
        cost_kind=cost_model.kind,
        prescription_index=prescription_index,
    )


def schedule_from_assignments(
    history: RegionHistory,
    assignments: list[dict[str, int]],
    cost_model: CostModel,
    predictor: CasePredictor,
    catalog: PlanCatalog,
    model_label: str,
    prescription_index: int = 0,
    zero_beta: bool = False,
) -> PrescriptionSchedule:
    """Wrap a fixed assignment sequence (heuristics, replays) as a schedule.

    The alpha chain follows the same rule as optimizer schedules: beta on
    day 1, then the previous day's predicted cases.
    """
    if len(history) == 0:
        raise EmptyHistory(f"{history.key.canonical()}: no case data")
    beta = float(history.new_cases_smoothed[-1])
    start = history.end_date + timedelta(days=1)
    days: list[ScheduleDay] = []
    alpha = beta
    for t in range(len(assignments)):
        predicted = _chain_predict(predictor, history, assignments[: t + 1])
        days.append(
            ScheduleDay(
                day=start + timedelta(days=t),
                assignment=dict(assignments[t]),
                alpha_used=alpha,
                stringency=stringency_of(cost_model, assignments[t], catalog),
                predicted_new_cases=predicted,
            )
        )
        alpha = predicted
    return PrescriptionSchedule(
        region=history.key,
        start_date=start,
        days=days,
        model_label=model_label,
        beta=beta,
        cost_kind=cost_model.kind,
        prescription_index=prescription_index,
        zero_beta=zero_beta,
    )


def prescribe_all(
    histories: dict[RegionKey, RegionHistory],
    weights_by_region: dict[str, dict[str, ImpactWeights]],
    cost_models: list[CostModel],
    predictor: CasePredictor,
    catalog: PlanCatalog,
    modes: list[tuple[str, bool]],
    horizon_days: int = DEFAULT_HORIZON_DAYS,
    min_runs: dict[tuple[str, int], int] | None = None,
) -> list[PrescriptionSchedule]:
    """One schedule per (region, weight label, cost model, mode) combination.

    `modes` lists (weight label, consecutive) pairs; model labels become
    opt_<label> or opt_consecutive_<label>. Per-region failures are logged
    and skipped so one bad region cannot abort a batch.
    """
    schedules: list[PrescriptionSchedule] = []
    labeled_modes = sorted(
        (
            f"opt_consecutive_{label}" if consecutive else f"opt_{label}",
            label,
            consecutive,
        )
        for label, consecutive in modes
    )
    for key in sorted(histories, key=lambda k: k.canonical()):
        history = histories[key]
        region_weights = weights_by_region.get(key.canonical(), {})
        for cost_model in cost_models:
            for index, (model_label, weight_label, consecutive) in enumerate(
                labeled_modes
            ):
                if weight_label not in region_weights:
                    logger.warning(
                        "%s: no %s weights, skipping", key.canonical(), weight_label
                    )
                    continue
                try:
                    schedules.append(
                        prescribe_region(
                            history=history,
                            weights=region_weights[weight_label],
                            cost_model=cost_model,
                            predictor=predictor,
                            catalog=catalog,
                            horizon_days=horizon_days,
                            consecutive=consecutive,
                            min_runs=min_runs,
                            model_label=model_label,
                            prescription_index=index,
                        )
                    )
                except EmptyHistory as exc:
                    logger.warning("%s: %s", key.canonical(), exc)
    return schedules


def write_prescriptions(
    schedules: list[PrescriptionSchedule],
    catalog: PlanCatalog,
    path: Path | str | io.TextIOBase,
) -> None:
    """Emit the external prescription CSV: one row per region-day."""
    header = [
        "CountryName",
        "RegionName",
        "Date",
        *(p.display_name for p in catalog.plans),
        "PrescriptionIndex",
    ]

    def _write(handle) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for schedule in schedules:
            for day in schedule.days:
                writer.writerow(
                    [
                        schedule.region.country_name,
                        schedule.region.region_name,
                        day.day.isoformat(),
                        *[day.assignment[code] for code in catalog.codes],
                        schedule.prescription_index,
                    ]
                )

    if isinstance(path, io.TextIOBase):
        _write(path)
    else:
        with open(path, "w", newline="", encoding="utf-8") as handle:
            _write(handle)


def read_prescriptions(
    path: Path | str, catalog: PlanCatalog
) -> dict[tuple[str, int], list[tuple[date, dict[str, int]]]]:
    """Read a prescription CSV back, keyed by (canonical region, index)."""
    out: dict[tuple[str, int], list[tuple[date, dict[str, int]]]] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        for row in reader:
            key = RegionKey(row["CountryName"], row["RegionName"] or "")
            index = int(row["PrescriptionIndex"])
            assignment = {
                p.code: int(float(row[p.display_name])) for p in catalog.plans
            }
            out.setdefault((key.canonical(), index), []).append(
                (date.fromisoformat(row["Date"]), assignment)
            )
    for days in out.values():
        days.sort(key=lambda pair: pair[0])
    return out
