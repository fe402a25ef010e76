from datetime import date, timedelta
from pathlib import Path

import numpy as np
import pytest

from npiopt.catalog import PlanCatalog, PlanSpec, default_catalog
from npiopt.ingest import RegionHistory, RegionKey, parse_history, rolling_average
from npiopt.predictor import RatioSurrogate, SurrogateParams

FIXTURE_CSV = Path(__file__).parent / "fixtures" / "three_regions.csv"


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def reduced_catalog():
    """Three-plan catalog small enough for exhaustive checks (24 combos)."""
    return PlanCatalog(
        plans=(
            PlanSpec("X1", "X1_First", 2, 4),
            PlanSpec("X2", "X2_Second", 1, 1),
            PlanSpec("X3", "X3_Third", 3, 5),
        )
    )


@pytest.fixture(scope="session")
def fixture_csv_bytes():
    return FIXTURE_CSV.read_bytes()


@pytest.fixture(scope="session")
def full_histories(fixture_csv_bytes, catalog):
    return parse_history(fixture_csv_bytes, catalog)


@pytest.fixture(scope="session")
def histories(full_histories):
    """Fixture histories truncated to the day before the prescription start."""
    return {k: h.truncated(date(2021, 1, 11)) for k, h in full_histories.items()}


@pytest.fixture(scope="session")
def surrogate(catalog):
    return RatioSurrogate(catalog=catalog)


def make_history(
    catalog,
    daily_cases,
    levels: dict[str, list[int]] | None = None,
    end: date = date(2021, 1, 11),
    name: str = "Testland",
) -> RegionHistory:
    """Synthetic history from a raw daily new-case series."""
    daily = np.asarray(daily_cases, dtype=float)
    n = daily.size
    dates = [end - timedelta(days=n - 1 - i) for i in range(n)]
    ip = np.zeros((n, len(catalog)), dtype=np.int64)
    if levels:
        for code, series in levels.items():
            ip[:, catalog.index_of(code)] = series
    return RegionHistory(
        key=RegionKey(name),
        dates=dates,
        ip_levels=ip,
        new_cases_raw=daily,
        new_cases_smoothed=rolling_average(daily),
        plan_codes=catalog.codes,
    )


@pytest.fixture
def constant_history(catalog):
    """20 days of exactly 100 daily new cases; smoothed value is 100."""
    return make_history(catalog, [100.0] * 20)


def identity_surrogate(catalog, effectiveness=None):
    """Growth 1.0; zero effectiveness unless an explicit map is given."""
    eff = (
        effectiveness
        if effectiveness is not None
        else {p.code: 0.0 for p in catalog.plans}
    )
    return RatioSurrogate(
        SurrogateParams(base_growth=1.0, effectiveness=eff), catalog=catalog
    )
