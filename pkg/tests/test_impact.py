from datetime import date

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from npiopt.errors import EmptyHistory, LevelOutOfRange, ZeroBaseline
from npiopt.impact import (
    DEFAULT_WEIGHT_SET_SPECS,
    WeightCache,
    WeightSetSpec,
    baseline_cases,
    estimate_weight_set,
    impact_weight,
    single_plan_cases,
)
from npiopt.predictor import RatioSurrogate, SurrogateParams

from conftest import identity_surrogate, make_history

SPEC_1D = WeightSetSpec(date(2021, 1, 11), 1, "w_test_1")
SPEC_7D = WeightSetSpec(date(2021, 1, 11), 7, "w_test_7")


class CountingPredictor:
    """Wraps a predictor and counts predict() calls."""

    def __init__(self, inner):
        self.inner = inner
        self.calls = 0
        self.lookback_days = inner.lookback_days
        self.smoothing_window = inner.smoothing_window

    def predict(self, history, future_schedule, horizon_days):
        self.calls += 1
        return self.inner.predict(history, future_schedule, horizon_days)

    def fingerprint(self):
        return self.inner.fingerprint()


def test_baseline_identity_growth_one_day(catalog, constant_history):
    predictor = identity_surrogate(catalog)
    assert baseline_cases(constant_history, SPEC_1D, predictor, catalog) == 100.0


def test_baseline_identity_growth_seven_days(catalog, constant_history):
    predictor = identity_surrogate(catalog)
    assert baseline_cases(constant_history, SPEC_7D, predictor, catalog) == 700.0


def test_baseline_one_step_growth(catalog, constant_history):
    predictor = RatioSurrogate(
        SurrogateParams(
            base_growth=1.03, effectiveness={c: 0.0 for c in catalog.codes}
        ),
        catalog=catalog,
    )
    assert baseline_cases(constant_history, SPEC_1D, predictor, catalog) == pytest.approx(
        103.0, abs=1e-12
    )


def test_baseline_requires_history_reaching_start(catalog, constant_history):
    spec = WeightSetSpec(date(2022, 1, 1), 1, "w_future")
    with pytest.raises(EmptyHistory):
        baseline_cases(constant_history, spec, identity_surrogate(catalog), catalog)


def test_single_plan_level_zero_rejected(catalog, constant_history):
    with pytest.raises(LevelOutOfRange):
        single_plan_cases(
            constant_history, SPEC_1D, "C1", 0, identity_surrogate(catalog), catalog
        )
    with pytest.raises(LevelOutOfRange):
        single_plan_cases(
            constant_history, SPEC_1D, "C3", 3, identity_surrogate(catalog), catalog
        )


def test_zero_effectiveness_plan_equals_baseline(catalog, constant_history):
    predictor = identity_surrogate(catalog)
    baseline = baseline_cases(constant_history, SPEC_7D, predictor, catalog)
    for level in (1, 2):
        assert (
            single_plan_cases(
                constant_history, SPEC_7D, "C3", level, predictor, catalog
            )
            == baseline
        )


def test_single_plan_matches_surrogate_closed_form(catalog, constant_history):
    predictor = RatioSurrogate(catalog=catalog)
    eff = predictor._effectiveness["C1"]
    value = single_plan_cases(constant_history, SPEC_1D, "C1", 3, predictor, catalog)
    assert value == pytest.approx(100.0 * 1.03 * (1 - eff), rel=1e-12)


class TestImpactWeight:
    def test_reduction(self):
        assert impact_weight(1000.0, 900.0) == -10.0

    def test_identity(self):
        assert impact_weight(123.4, 123.4) == 0.0

    def test_increase(self):
        assert impact_weight(200.0, 250.0) == 25.0

    def test_zero_baseline_rejected(self):
        with pytest.raises(ZeroBaseline):
            impact_weight(0.0, 10.0)
        with pytest.raises(ZeroBaseline):
            impact_weight(-5.0, 10.0)


def test_estimate_weight_set_zero_effectiveness_all_zero(catalog, constant_history):
    weights = estimate_weight_set(
        constant_history, SPEC_7D, catalog, identity_surrogate(catalog)
    )
    assert all(v == 0.0 for v in weights.c.values())


def test_estimate_weight_set_shape_and_monotonicity(catalog, constant_history):
    weights = estimate_weight_set(
        constant_history, SPEC_7D, catalog, RatioSurrogate(catalog=catalog)
    )
    for plan in catalog.plans:
        assert weights.c[(plan.code, 0)] == 0.0
        previous = 0.0
        for level in range(1, plan.max_level + 1):
            value = weights.c[(plan.code, level)]
            assert value <= 0.0
            assert value <= previous + 1e-12
            previous = value
    assert len(weights.c) == 12 + 34


def test_estimate_issues_exactly_35_predictor_calls(catalog, constant_history):
    counting = CountingPredictor(RatioSurrogate(catalog=catalog))
    estimate_weight_set(constant_history, SPEC_1D, catalog, counting)
    assert counting.calls == 1 + sum(p.max_level for p in catalog.plans) == 35


def test_default_specs_cover_three_dates_and_two_horizons():
    assert len(DEFAULT_WEIGHT_SET_SPECS) == 6
    assert {s.start_date for s in DEFAULT_WEIGHT_SET_SPECS} == {
        date(2020, 8, 2),
        date(2021, 1, 2),
        date(2021, 1, 15),
    }
    assert {s.horizon_days for s in DEFAULT_WEIGHT_SET_SPECS} == {1, 7}
    assert len({s.label for s in DEFAULT_WEIGHT_SET_SPECS}) == 6


@settings(max_examples=25, deadline=None)
@given(
    growth=st.floats(0.9, 1.1),
    scale=st.floats(0.0, 0.02),
    seed=st.integers(0, 10_000),
)
def test_weights_monotone_under_random_surrogates(catalog, growth, scale, seed):
    rng = np.random.default_rng(seed)
    history = make_history(catalog, rng.uniform(50, 500, size=12))
    predictor = RatioSurrogate(
        SurrogateParams(
            base_growth=growth,
            effectiveness={p.code: scale * p.max_level for p in catalog.plans},
        ),
        catalog=catalog,
    )
    weights = estimate_weight_set(history, SPEC_7D, catalog, predictor)
    for plan in catalog.plans:
        series = [weights.c[(plan.code, l)] for l in plan.levels]
        assert all(b <= a + 1e-9 for a, b in zip(series, series[1:]))


class TestWeightCache:
    def test_round_trip_is_exact(self, catalog, constant_history, tmp_path):
        predictor = RatioSurrogate(catalog=catalog)
        cache = WeightCache(tmp_path / "weights.json")
        first = cache.get_or_estimate(constant_history, SPEC_7D, catalog, predictor)
        reloaded = WeightCache(tmp_path / "weights.json").get_or_estimate(
            constant_history, SPEC_7D, catalog, predictor
        )
        assert reloaded.c == first.c

    def test_hit_skips_estimation(self, catalog, constant_history, tmp_path):
        counting = CountingPredictor(RatioSurrogate(catalog=catalog))
        cache = WeightCache(tmp_path / "weights.json")
        cache.get_or_estimate(constant_history, SPEC_1D, catalog, counting)
        first_calls = counting.calls
        cache.get_or_estimate(constant_history, SPEC_1D, catalog, counting)
        assert counting.calls == first_calls

    def test_fingerprint_mismatch_reestimates(self, catalog, constant_history, tmp_path):
        cache = WeightCache(tmp_path / "weights.json")
        cache.get_or_estimate(
            constant_history, SPEC_1D, catalog, RatioSurrogate(catalog=catalog)
        )
        counting = CountingPredictor(
            RatioSurrogate(SurrogateParams(base_growth=1.07), catalog=catalog)
        )
        cache.get_or_estimate(constant_history, SPEC_1D, catalog, counting)
        assert counting.calls == 35
