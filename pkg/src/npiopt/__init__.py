"""Per-region, per-day intervention-plan prescription engine.

Builds the per-day assignment problem (one restriction level per plan,
minimizing normalized stringency plus normalized predicted case impact),
solves it exactly, rolls it out over a horizon against a pluggable case
predictor, and benchmarks the result against blind-greedy and random
baselines.
"""

from .catalog import PlanCatalog, PlanSpec, default_catalog, validate_assignment
from .costs import CostModel, build_cost_model, raw_stringency_of, stringency_of
from .evaluate import (
    EvaluationRow,
    ParetoFront,
    evaluate_real_ips,
    evaluate_schedule,
    pareto_front,
    world_aggregate,
)
from .heuristics import blind_greedy, greedy_trajectory, random_prescription
from .impact import (
    DEFAULT_WEIGHT_SET_SPECS,
    ImpactWeights,
    WeightCache,
    WeightSetSpec,
    baseline_cases,
    estimate_weight_set,
    impact_weight,
    single_plan_cases,
)
from .ingest import RegionHistory, RegionKey, parse_history, rolling_average
from .pipeline import PipelineConfig, PipelineResult, run_pipeline
from .predictor import CasePredictor, RatioSurrogate, SurrogateParams
from .rollout import (
    PrescriptionSchedule,
    ScheduleDay,
    prescribe_all,
    prescribe_region,
    schedule_from_assignments,
    write_prescriptions,
)
from .solver import (
    ForcingState,
    ObjectiveContext,
    Solution,
    case_objective,
    derive_min_runs,
    enumerate_oracle,
    solve_exact,
    update_forcing,
)

__version__ = "0.1.0"
