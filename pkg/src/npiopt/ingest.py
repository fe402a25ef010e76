"""Parse case/intervention CSV history into per-region daily records.

The input follows the government-response-tracker layout: one row per
region-day with cumulative ConfirmedCases and the 12 plan-level columns
addressed by their display names. Output histories sit on a dense daily
grid with raw and 7-day-smoothed new-case series.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from datetime import date, timedelta

import numpy as np
import pandas as pd

from .catalog import PlanCatalog
from .errors import LevelOutOfRange, MalformedCsv

__all__ = ["RegionKey", "RegionHistory", "parse_history", "rolling_average"]

SMOOTHING_WINDOW = 7

_REQUIRED_COLUMNS = ("CountryName", "RegionName", "Date", "ConfirmedCases")


@dataclass(frozen=True, order=True)
class RegionKey:
    country_name: str
    region_name: str = ""

    def canonical(self) -> str:
        if self.region_name:
            return f"{self.country_name}__{self.region_name}"
        return self.country_name

    @classmethod
    def from_canonical(cls, text: str) -> "RegionKey":
        country, sep, region = text.partition("__")
        return cls(country, region if sep else "")


@dataclass
class RegionHistory:
    """Dense daily series of plan levels and new-case counts for one region.

    ip_levels has shape (n_days, n_plans) in catalog order; new_cases_smoothed
    is the trailing up-to-7-day mean of new_cases_raw.
    """

    key: RegionKey
    dates: list[date]
    ip_levels: np.ndarray
    new_cases_raw: np.ndarray
    new_cases_smoothed: np.ndarray
    plan_codes: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.dates)

    @property
    def end_date(self) -> date:
        return self.dates[-1]

    def levels_on(self, index: int) -> dict[str, int]:
        row = self.ip_levels[index]
        return {code: int(row[i]) for i, code in enumerate(self.plan_codes)}

    def truncated(self, through: date) -> "RegionHistory":
        """History restricted to days on or before `through`."""
        n = sum(1 for d in self.dates if d <= through)
        return RegionHistory(
            key=self.key,
            dates=self.dates[:n],
            ip_levels=self.ip_levels[:n],
            new_cases_raw=self.new_cases_raw[:n],
            new_cases_smoothed=rolling_average(self.new_cases_raw[:n])
            if n
            else self.new_cases_raw[:n].copy(),
            plan_codes=self.plan_codes,
        )

    def levels_between(self, start: date, end: date) -> list[dict[str, int]]:
        """Per-day assignments for start..end inclusive; [] if not fully covered."""
        index = {d: i for i, d in enumerate(self.dates)}
        out = []
        day = start
        while day <= end:
            if day not in index:
                return []
            out.append(self.levels_on(index[day]))
            day += timedelta(days=1)
        return out


def rolling_average(series, window: int = SMOOTHING_WINDOW) -> np.ndarray:
    """Trailing mean over the up-to-`window` most recent elements.

    Output has the same length as the input; element t averages elements
    max(0, t-window+1)..t, so leading elements use a partial window.
    """
    values = np.asarray(series, dtype=float)
    if values.size == 0:
        return values.copy()
    csum = np.concatenate(([0.0], np.cumsum(values)))
    t = np.arange(values.size)
    lo = np.maximum(t - window + 1, 0)
    return (csum[t + 1] - csum[lo]) / (t + 1 - lo)


def _parse_dates(raw: pd.Series) -> pd.Series:
    text = raw.astype(str).str.strip()
    compact = text.str.fullmatch(r"\d{8}")
    normalized = text.where(
        ~compact, text.str[:4] + "-" + text.str[4:6] + "-" + text.str[6:8]
    )
    try:
        return pd.to_datetime(normalized, format="%Y-%m-%d")
    except (ValueError, TypeError) as exc:
        raise MalformedCsv(f"unparseable date: {exc}") from exc


def _region_frame(group: pd.DataFrame, key: RegionKey, catalog: PlanCatalog) -> RegionHistory:
    group = group.sort_values("Date").drop_duplicates("Date", keep="last")
    full_range = pd.date_range(group["Date"].iloc[0], group["Date"].iloc[-1], freq="D")
    group = group.set_index("Date").reindex(full_range)

    # Gaps repeat the last known cumulative count and levels.
    cases = group["ConfirmedCases"].astype(float).ffill().bfill().fillna(0.0).to_numpy()
    raw = np.maximum(np.diff(cases, prepend=cases[:1]), 0.0)

    levels = np.zeros((len(group), len(catalog)), dtype=np.int64)
    for i, plan in enumerate(catalog.plans):
        col = group[plan.display_name].astype(float).ffill().fillna(0.0)
        values = col.to_numpy()
        if not np.all(values == np.round(values)):
            raise LevelOutOfRange(
                f"{key.canonical()}: non-integer level for {plan.code}"
            )
        ints = values.astype(np.int64)
        if ints.min() < 0 or ints.max() > plan.max_level:
            raise LevelOutOfRange(
                f"{key.canonical()}: {plan.code} level outside 0..{plan.max_level}"
            )
        levels[:, i] = ints

    return RegionHistory(
        key=key,
        dates=[d.date() for d in full_range],
        ip_levels=levels,
        new_cases_raw=raw,
        new_cases_smoothed=rolling_average(raw),
        plan_codes=catalog.codes,
    )


def parse_history(csv_bytes: bytes | str, catalog: PlanCatalog) -> dict[RegionKey, RegionHistory]:
    """Parse a CSV byte stream into one RegionHistory per region.

    Raises MalformedCsv when required columns are absent or dates do not
    parse, and LevelOutOfRange when a plan value falls outside the catalog.
    """
    if isinstance(csv_bytes, bytes):
        buffer = io.StringIO(csv_bytes.decode("utf-8"))
    else:
        buffer = io.StringIO(csv_bytes)
    try:
        frame = pd.read_csv(buffer, dtype={"CountryName": str, "RegionName": str})
    except Exception as exc:
        raise MalformedCsv(f"unreadable CSV: {exc}") from exc

    missing = [
        c
        for c in (*_REQUIRED_COLUMNS, *(p.display_name for p in catalog.plans))
        if c not in frame.columns
    ]
    if missing:
        raise MalformedCsv(f"missing required columns: {missing}")

    frame["Date"] = _parse_dates(frame["Date"])
    frame["RegionName"] = frame["RegionName"].fillna("")

    histories: dict[RegionKey, RegionHistory] = {}
    for (country, region), group in frame.groupby(["CountryName", "RegionName"], sort=True):
        key = RegionKey(str(country), str(region))
        histories[key] = _region_frame(group, key, catalog)
    return histories
