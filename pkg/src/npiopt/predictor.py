"""Case-predictor contract and a deterministic multiplicative surrogate.

Any predictor used by the pipeline must be a pure function of at most the
last LOOKBACK_DAYS of history plus the future plan schedule, must never
predict more cases when a plan level is raised, and must be deterministic.
The surrogate satisfies all three by construction: each day's prediction is
the trailing 7-day mean of the case series (predictions feed back in),
scaled by a growth factor and one attenuation factor per active plan.
"""

from __future__ import annotations

import hashlib
import json
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .catalog import PlanCatalog, default_catalog, validate_assignment
from .errors import EmptyHistory, InvalidSchedule
from .ingest import RegionHistory

__all__ = ["LOOKBACK_DAYS", "SMOOTHING_WINDOW", "CasePredictor", "SurrogateParams", "RatioSurrogate"]

LOOKBACK_DAYS = 21
SMOOTHING_WINDOW = 7


class CasePredictor(ABC):
    """Abstract daily new-case predictor."""

    lookback_days: int = LOOKBACK_DAYS
    smoothing_window: int = SMOOTHING_WINDOW

    @abstractmethod
    def predict(
        self,
        history: RegionHistory,
        future_schedule: list[dict[str, int]],
        horizon_days: int,
    ) -> np.ndarray:
        """Predicted daily new cases for the horizon_days after history ends."""

    @abstractmethod
    def fingerprint(self) -> str:
        """Stable identifier of the predictor's behaviour, for caching."""


def _default_effectiveness(catalog: PlanCatalog) -> dict[str, float]:
    # Scaled by the plan's level span so every plan's one-day, one-level
    # impact is -2% and full-strength impacts stay within -8%.
    return {p.code: 0.02 * p.max_level for p in catalog.plans}


@dataclass(frozen=True)
class SurrogateParams:
    base_growth: float = 1.03
    effectiveness: dict[str, float] = field(default_factory=dict)
    floor_cases: float = 0.0

    def resolved_effectiveness(self, catalog: PlanCatalog) -> dict[str, float]:
        if self.effectiveness:
            return dict(self.effectiveness)
        return _default_effectiveness(catalog)


class RatioSurrogate(CasePredictor):
    """Multiplicative-attenuation surrogate predictor.

    cases[t+1] = mean(last 7 case values through t) * base_growth
                 * prod_p (1 - effectiveness_p * level_p(t+1) / max_level_p)

    Predictions are appended to the case series, so multi-day horizons are
    autoregressive. Raising any level can only shrink one factor, so the
    monotonicity contract holds at every output index.
    """

    def __init__(self, params: SurrogateParams | None = None, catalog: PlanCatalog | None = None):
        self.catalog = catalog or default_catalog()
        self.params = params or SurrogateParams()
        self._effectiveness = self.params.resolved_effectiveness(self.catalog)
        if any(e < 0 for e in self._effectiveness.values()):
            raise ValueError("effectiveness values must be non-negative")
        full = self.params.base_growth
        for code in self.catalog.codes:
            full *= 1.0 - self._effectiveness[code]
        if full <= 0:
            raise ValueError("attenuation at max levels must stay positive")

    def predict(
        self,
        history: RegionHistory,
        future_schedule: list[dict[str, int]],
        horizon_days: int,
    ) -> np.ndarray:
        if len(history) == 0:
            raise EmptyHistory(f"{history.key.canonical()}: no case data")
        if len(future_schedule) != horizon_days:
            raise InvalidSchedule(
                f"schedule covers {len(future_schedule)} days, horizon is {horizon_days}"
            )
        for day, assignment in enumerate(future_schedule):
            if not validate_assignment(self.catalog, assignment):
                raise InvalidSchedule(f"inadmissible assignment on day {day}")

        window: deque[float] = deque(
            history.new_cases_raw[-self.smoothing_window :].tolist(),
            maxlen=self.smoothing_window,
        )
        growth = self.params.base_growth
        floor = self.params.floor_cases
        out = np.empty(horizon_days, dtype=float)
        for t in range(horizon_days):
            attenuation = 1.0
            for plan in self.catalog.plans:
                level = future_schedule[t][plan.code]
                if level:
                    attenuation *= (
                        1.0 - self._effectiveness[plan.code] * level / plan.max_level
                    )
            value = (sum(window) / len(window)) * growth * attenuation
            out[t] = max(floor, value)
            window.append(out[t])
        return out

    def fingerprint(self) -> str:
        payload = json.dumps(
            {
                "kind": "ratio-surrogate",
                "base_growth": self.params.base_growth,
                "effectiveness": {k: self._effectiveness[k] for k in sorted(self._effectiveness)},
                "floor_cases": self.params.floor_cases,
                "plans": list(self.catalog.codes),
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]
