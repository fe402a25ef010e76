"""Per-region impact weights from single-plan activation runs.

For a weight-set start date, the predictor is seeded with history through
that date. The no-intervention horizon total B and the one-plan-at-level-l
totals E give the percentage weight 100 * (E - B) / B for every (plan,
level) pair; level 0 is 0 by definition. One weight set costs exactly
1 + sum_p max_level_p predictor calls, so results are cached on disk keyed
by region, label, and predictor fingerprint.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

from .catalog import PlanCatalog
from .errors import EmptyHistory, LevelOutOfRange, ZeroBaseline
from .ingest import RegionHistory, RegionKey
from .predictor import CasePredictor

__all__ = [
    "WeightSetSpec",
    "ImpactWeights",
    "DEFAULT_WEIGHT_SET_SPECS",
    "baseline_cases",
    "single_plan_cases",
    "impact_weight",
    "estimate_weight_set",
    "WeightCache",
]


@dataclass(frozen=True)
class WeightSetSpec:
    start_date: date
    horizon_days: int
    label: str


# Three anchor dates x two horizons, labeled after the anchor they start from.
DEFAULT_WEIGHT_SET_SPECS = (
    WeightSetSpec(date(2021, 1, 15), 7, "w_jan15_7"),
    WeightSetSpec(date(2021, 1, 15), 1, "w_jan15_1"),
    WeightSetSpec(date(2021, 1, 2), 7, "w_jan2_7"),
    WeightSetSpec(date(2021, 1, 2), 1, "w_jan2_1"),
    WeightSetSpec(date(2020, 8, 2), 7, "w_aug2_7"),
    WeightSetSpec(date(2020, 8, 2), 1, "w_aug2_1"),
)


@dataclass
class ImpactWeights:
    region: RegionKey
    spec: WeightSetSpec
    c: dict[tuple[str, int], float] = field(default_factory=dict)

    def weight(self, code: str, level: int) -> float:
        return self.c[(code, level)]


def _zero_schedule(catalog: PlanCatalog, horizon_days: int) -> list[dict[str, int]]:
    return [{code: 0 for code in catalog.codes} for _ in range(horizon_days)]


def _seeded_history(history: RegionHistory, spec: WeightSetSpec) -> RegionHistory:
    if len(history) == 0 or history.end_date < spec.start_date:
        raise EmptyHistory(
            f"{history.key.canonical()}: history does not reach {spec.start_date}"
        )
    return history.truncated(spec.start_date)


def baseline_cases(
    history: RegionHistory,
    spec: WeightSetSpec,
    predictor: CasePredictor,
    catalog: PlanCatalog,
) -> float:
    """Horizon total of predicted daily cases with every plan at level 0."""
    seeded = _seeded_history(history, spec)
    schedule = _zero_schedule(catalog, spec.horizon_days)
    return float(predictor.predict(seeded, schedule, spec.horizon_days).sum())


def single_plan_cases(
    history: RegionHistory,
    spec: WeightSetSpec,
    plan_code: str,
    level: int,
    predictor: CasePredictor,
    catalog: PlanCatalog,
) -> float:
    """Horizon total with one plan held at `level` every day, all others at 0."""
    plan = catalog.plan(plan_code)
    if not 1 <= level <= plan.max_level:
        raise LevelOutOfRange(f"{plan_code} level {level} not in 1..{plan.max_level}")
    seeded = _seeded_history(history, spec)
    schedule = _zero_schedule(catalog, spec.horizon_days)
    for day in schedule:
        day[plan_code] = level
    return float(predictor.predict(seeded, schedule, spec.horizon_days).sum())


def impact_weight(baseline: float, estimated: float) -> float:
    """Percentage change of `estimated` relative to `baseline`."""
    if baseline <= 0:
        raise ZeroBaseline(f"baseline cases must be positive, got {baseline}")
    return (estimated - baseline) / baseline * 100.0


def estimate_weight_set(
    history: RegionHistory,
    spec: WeightSetSpec,
    catalog: PlanCatalog,
    predictor: CasePredictor,
) -> ImpactWeights:
    """One weight per (plan, level >= 1) pair; level 0 pinned to 0."""
    baseline = baseline_cases(history, spec, predictor, catalog)
    weights = ImpactWeights(region=history.key, spec=spec)
    for plan in catalog.plans:
        weights.c[(plan.code, 0)] = 0.0
        for level in range(1, plan.max_level + 1):
            estimated = single_plan_cases(
                history, spec, plan.code, level, predictor, catalog
            )
            weights.c[(plan.code, level)] = impact_weight(baseline, estimated)
    return weights


class WeightCache:
    """JSON-backed weight store keyed by region, label, and predictor fingerprint."""

    def __init__(self, path: Path | str):
        self.path = Path(path)
        self._data: dict = {}
        if self.path.exists():
            self._data = json.loads(self.path.read_text())

    @staticmethod
    def _key(region: RegionKey, spec: WeightSetSpec) -> str:
        return f"{region.canonical()}/{spec.label}"

    def get_or_estimate(
        self,
        history: RegionHistory,
        spec: WeightSetSpec,
        catalog: PlanCatalog,
        predictor: CasePredictor,
    ) -> ImpactWeights:
        key = self._key(history.key, spec)
        fingerprint = predictor.fingerprint()
        entry = self._data.get(key)
        if entry is not None and entry.get("fingerprint") == fingerprint:
            weights = ImpactWeights(region=history.key, spec=spec)
            for code, per_level in entry["weights"].items():
                for level, value in per_level.items():
                    weights.c[(code, int(level))] = value
            return weights

        weights = estimate_weight_set(history, spec, catalog, predictor)
        table: dict[str, dict[str, float]] = {}
        for (code, level), value in weights.c.items():
            table.setdefault(code, {})[str(level)] = value
        self._data[key] = {"fingerprint": fingerprint, "weights": table}
        self._flush()
        return weights

    def _flush(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(json.dumps(self._data, sort_keys=True))
