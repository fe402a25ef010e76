import numpy as np
import pytest

from npiopt.costs import build_cost_model
from npiopt.errors import MissingRealIps, ScheduleGap
from npiopt.evaluate import (
    EvaluationRow,
    evaluate_real_ips,
    evaluate_schedule,
    pareto_front,
    world_aggregate,
)
from npiopt.predictor import RatioSurrogate
from npiopt.rollout import prescribe_region, schedule_from_assignments

from conftest import identity_surrogate, make_history
from test_solver import weights_for


def row(cases, stringency, label="m", region="R"):
    return EvaluationRow(
        model_label=label,
        region_scope="region",
        mean_daily_cases=cases,
        mean_stringency_normalized=stringency,
        mean_stringency_raw=stringency * 10,
        region=region,
        cost_kind="fixed",
    )


@pytest.fixture
def flat_history(catalog):
    return make_history(catalog, [100.0] * 20)


def test_all_zero_schedule_identity_surrogate(catalog, flat_history):
    predictor = identity_surrogate(catalog)
    cost = build_cost_model("fixed", catalog)
    schedule = schedule_from_assignments(
        history=flat_history,
        assignments=[{c: 0 for c in catalog.codes} for _ in range(14)],
        cost_model=cost,
        predictor=predictor,
        catalog=catalog,
        model_label="zero",
    )
    result = evaluate_schedule(schedule, flat_history, predictor, cost, catalog)
    assert result.mean_daily_cases == 100.0
    assert result.mean_stringency_normalized == 0.0
    assert result.mean_stringency_raw == 0.0


def test_reevaluation_matches_stored_days(catalog, flat_history):
    predictor = RatioSurrogate(catalog=catalog)
    cost = build_cost_model("realistic", catalog)
    schedule = prescribe_region(
        flat_history,
        weights_for(catalog, fill=-9.0),
        cost,
        predictor,
        catalog,
        horizon_days=10,
    )
    result = evaluate_schedule(schedule, flat_history, predictor, cost, catalog)
    assert result.mean_daily_cases == pytest.approx(
        np.mean([d.predicted_new_cases for d in schedule.days]), abs=0
    )
    assert result.mean_stringency_normalized == pytest.approx(
        np.mean([d.stringency for d in schedule.days]), abs=0
    )


def test_greedy_extremes_order_as_expected(catalog, flat_history):
    from npiopt.heuristics import blind_greedy

    predictor = RatioSurrogate(catalog=catalog)
    cost = build_cost_model("realistic", catalog)
    rows = {}
    for variant in (0, 9):
        assignment = blind_greedy(cost, catalog, variant)
        schedule = schedule_from_assignments(
            history=flat_history,
            assignments=[dict(assignment) for _ in range(14)],
            cost_model=cost,
            predictor=predictor,
            catalog=catalog,
            model_label=f"blind_greedy_{variant}",
        )
        rows[variant] = evaluate_schedule(schedule, flat_history, predictor, cost, catalog)
    assert rows[9].mean_daily_cases < rows[0].mean_daily_cases
    assert rows[9].mean_stringency_normalized > rows[0].mean_stringency_normalized


def test_schedule_gap_rejected(catalog, flat_history):
    predictor = identity_surrogate(catalog)
    cost = build_cost_model("fixed", catalog)
    schedule = schedule_from_assignments(
        history=flat_history,
        assignments=[{c: 0 for c in catalog.codes}],
        cost_model=cost,
        predictor=predictor,
        catalog=catalog,
        model_label="late",
    )
    stale = flat_history.truncated(flat_history.dates[-3])
    with pytest.raises(ScheduleGap):
        evaluate_schedule(schedule, stale, predictor, cost, catalog)


class TestRealIps:
    def test_identical_levels_give_identical_row(self, catalog, flat_history):
        predictor = RatioSurrogate(catalog=catalog)
        cost = build_cost_model("realistic", catalog)
        assignments = [
            {p.code: min(1, p.max_level) for p in catalog.plans} for _ in range(7)
        ]
        schedule = schedule_from_assignments(
            history=flat_history,
            assignments=assignments,
            cost_model=cost,
            predictor=predictor,
            catalog=catalog,
            model_label="real_ip_predicted_cases",
        )
        direct = evaluate_schedule(schedule, flat_history, predictor, cost, catalog)
        replay = evaluate_real_ips(flat_history, assignments, predictor, cost, catalog)
        assert replay.mean_daily_cases == direct.mean_daily_cases
        assert replay.mean_stringency_normalized == direct.mean_stringency_normalized
        assert replay.model_label == "real_ip_predicted_cases"

    def test_empty_window_rejected(self, catalog, flat_history):
        with pytest.raises(MissingRealIps):
            evaluate_real_ips(
                flat_history,
                [],
                identity_surrogate(catalog),
                build_cost_model("fixed", catalog),
                catalog,
            )

    def test_stricter_real_ips_yield_fewer_cases(self, catalog, flat_history):
        predictor = RatioSurrogate(catalog=catalog)
        cost = build_cost_model("fixed", catalog)
        lax = [{c: 0 for c in catalog.codes} for _ in range(10)]
        strict = [{p.code: p.max_level for p in catalog.plans} for _ in range(10)]
        lax_row = evaluate_real_ips(flat_history, lax, predictor, cost, catalog)
        strict_row = evaluate_real_ips(flat_history, strict, predictor, cost, catalog)
        assert strict_row.mean_daily_cases <= lax_row.mean_daily_cases


class TestParetoFront:
    def test_single_row(self):
        r = row(10.0, 1.0)
        assert pareto_front([r]).rows == (r,)

    def test_three_point_example(self):
        a, b, c = row(10.0, 1.0, "a"), row(5.0, 2.0, "b"), row(12.0, 3.0, "c")
        front = pareto_front([a, b, c])
        assert {r.model_label for r in front.rows} == {"a", "b"}

    def test_idempotent(self):
        rng = np.random.default_rng(8)
        rows = [row(float(c), float(s)) for c, s in rng.uniform(0, 10, size=(40, 2))]
        once = pareto_front(rows)
        twice = pareto_front(list(once.rows))
        assert set(id(r) for r in once.rows) == set(id(r) for r in twice.rows)

    def test_ties_on_both_coordinates_kept(self):
        a, b = row(5.0, 1.0, "a"), row(5.0, 1.0, "b")
        front = pareto_front([a, b, row(9.0, 0.5, "c")])
        assert {r.model_label for r in front.rows} == {"a", "b", "c"}

    def test_matches_quadratic_oracle(self):
        rng = np.random.default_rng(15)
        for _ in range(50):
            n = int(rng.integers(1, 30))
            cases = rng.integers(0, 6, size=n).astype(float)
            strs = rng.integers(0, 6, size=n).astype(float)
            rows = [row(c, s, f"m{i}") for i, (c, s) in enumerate(zip(cases, strs))]

            def dominated(r):
                return any(
                    o.mean_daily_cases <= r.mean_daily_cases
                    and o.mean_stringency_normalized <= r.mean_stringency_normalized
                    and (
                        o.mean_daily_cases < r.mean_daily_cases
                        or o.mean_stringency_normalized < r.mean_stringency_normalized
                    )
                    for o in rows
                )

            expected = {r.model_label for r in rows if not dominated(r)}
            actual = {r.model_label for r in pareto_front(rows).rows}
            assert actual == expected


class TestWorldAggregate:
    def test_single_region_identity(self):
        r = row(10.0, 1.0)
        agg = world_aggregate([r])
        assert agg.mean_daily_cases == 10.0
        assert agg.region_scope == "world-aggregate"
        assert agg.region is None

    def test_two_region_mean(self):
        agg = world_aggregate([row(10.0, 1.0, region="A"), row(20.0, 3.0, region="B")])
        assert agg.mean_daily_cases == 15.0
        assert agg.mean_stringency_normalized == 2.0

    def test_permutation_invariant(self):
        rows = [row(float(v), float(v) / 10, region=str(v)) for v in (3, 1, 4, 1, 5)]
        a = world_aggregate(rows)
        b = world_aggregate(list(reversed(rows)))
        assert a == b

    def test_mixed_labels_rejected(self):
        with pytest.raises(ValueError):
            world_aggregate([row(1.0, 1.0, "a"), row(2.0, 2.0, "b")])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            world_aggregate([])
