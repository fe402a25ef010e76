import numpy as np
import pytest

from npiopt.costs import build_cost_model, stringency_of
from npiopt.catalog import validate_assignment
from npiopt.heuristics import (
    blind_greedy,
    greedy_trajectory,
    random_level,
    random_prescription,
)
from npiopt.ingest import RegionKey


@pytest.fixture(params=["fixed", "realistic", "random"])
def cost_model(request, catalog):
    seed = 13 if request.param == "random" else None
    return build_cost_model(request.param, catalog, seed=seed)


class TestGreedyTrajectory:
    def test_endpoints_and_length(self, catalog, cost_model):
        steps = greedy_trajectory(cost_model, catalog)
        assert len(steps) == 35
        assert all(v == 0 for v in steps[0].values())
        assert steps[-1] == {p.code: p.max_level for p in catalog.plans}

    def test_each_step_is_one_valid_increment(self, catalog, cost_model):
        steps = greedy_trajectory(cost_model, catalog)
        for before, after in zip(steps, steps[1:]):
            assert validate_assignment(catalog, after)
            deltas = {
                code: after[code] - before[code]
                for code in catalog.codes
                if after[code] != before[code]
            }
            assert list(deltas.values()) == [1]

    def test_each_increment_is_cheapest_available(self, catalog, cost_model):
        steps = greedy_trajectory(cost_model, catalog)
        for before, after in zip(steps, steps[1:]):
            raised = next(c for c in catalog.codes if after[c] != before[c])
            open_costs = [
                cost_model.base[p.code]
                for p in catalog.plans
                if before[p.code] < p.max_level
            ]
            assert cost_model.base[raised] == pytest.approx(min(open_costs))


class TestBlindGreedy:
    def test_fixed_costs_variant_zero_fills_plan_order(self, catalog):
        # equal increment costs: ties follow catalog order, so the first
        # three increments all land on the first plan
        model = build_cost_model("fixed", catalog)
        assignment = blind_greedy(model, catalog, 0)
        expected = {code: 0 for code in catalog.codes}
        expected["C1"] = 3
        assert assignment == expected

    def test_last_variant_is_all_max(self, catalog, cost_model):
        assignment = blind_greedy(cost_model, catalog, 9)
        assert assignment == {p.code: p.max_level for p in catalog.plans}

    def test_stringency_strictly_increases_in_variant(self, catalog, cost_model):
        values = [
            stringency_of(cost_model, blind_greedy(cost_model, catalog, k), catalog)
            for k in range(10)
        ]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_variant_bounds(self, catalog, cost_model):
        with pytest.raises(ValueError):
            blind_greedy(cost_model, catalog, 10)
        with pytest.raises(ValueError):
            blind_greedy(cost_model, catalog, -1)


class TestRandomHeuristic:
    def test_deterministic_per_key(self, catalog):
        region = RegionKey("Alphaland")
        for plan in ("C1", "H6"):
            a = random_level(catalog, 3, region, 17, plan)
            b = random_level(catalog, 3, region, 17, plan)
            assert a == b

    def test_keys_are_independent(self, catalog):
        region = RegionKey("Alphaland")
        other = RegionKey("Betaria")
        draws_by_day = [random_level(catalog, 0, region, d, "C4") for d in range(40)]
        draws_by_region = [random_level(catalog, 0, other, d, "C4") for d in range(40)]
        assert len(set(draws_by_day)) > 1
        assert draws_by_day != draws_by_region

    def test_prescription_validates_and_repeats(self, catalog):
        region = RegionKey("Gammastan", "Coastal")
        days = random_prescription(catalog, 1, region, 12)
        assert len(days) == 12
        for assignment in days:
            assert validate_assignment(catalog, assignment)
        assert days == random_prescription(catalog, 1, region, 12)

    def test_levels_roughly_uniform(self, catalog):
        region = RegionKey("U")
        draws = [random_level(catalog, 0, region, d, "C3") for d in range(3000)]
        counts = np.bincount(draws, minlength=3)
        expected = 1000.0
        sigma = np.sqrt(3000 * (1 / 3) * (2 / 3))
        assert np.all(np.abs(counts - expected) < 4 * sigma)
