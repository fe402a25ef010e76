"""End-to-end protocol run: ingest, weights, prescriptions, evaluation, reports.

One run covers, per cost kind, the eight optimizer variants (six weight
sets without the consecutive constraint plus two with it), ten blind-greedy
variants, five seeded random variants, and a replay of the historically
enacted levels. Reports are emitted per region and for the unweighted
world aggregate. Everything is deterministic: fixed seeds, sorted
iteration, and plain-text serialization, so identical inputs produce
byte-identical artifacts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date, timedelta
from pathlib import Path

from .catalog import PlanCatalog, default_catalog
from .costs import COST_KINDS, CostModel, build_cost_model
from .errors import MissingRealIps
from .evaluate import (
    REAL_IP_LABEL,
    EvaluationRow,
    evaluate_schedule,
    pareto_front,
    world_aggregate,
)
from .heuristics import (
    N_GREEDY_VARIANTS,
    N_RANDOM_VARIANTS,
    blind_greedy,
    random_prescription,
)
from .impact import (
    DEFAULT_WEIGHT_SET_SPECS,
    ImpactWeights,
    WeightCache,
    WeightSetSpec,
    estimate_weight_set,
)
from .ingest import RegionHistory, RegionKey, parse_history
from .predictor import CasePredictor, RatioSurrogate
from .rollout import (
    DEFAULT_HORIZON_DAYS,
    PrescriptionSchedule,
    prescribe_all,
    schedule_from_assignments,
    write_prescriptions,
)
from .solver import derive_min_runs

__all__ = ["PipelineConfig", "PipelineResult", "run_pipeline", "report_row_order"]


@dataclass(frozen=True)
class PipelineConfig:
    start_date: date = date(2021, 1, 12)
    horizon_days: int = DEFAULT_HORIZON_DAYS
    cost_kinds: tuple[str, ...] = COST_KINDS
    random_cost_seed: int = 0
    weight_specs: tuple[WeightSetSpec, ...] = DEFAULT_WEIGHT_SET_SPECS
    consecutive_labels: tuple[str, ...] = ("w_jan15_7", "w_jan15_1")
    n_greedy_variants: int = N_GREEDY_VARIANTS
    random_seeds: tuple[int, ...] = tuple(range(N_RANDOM_VARIANTS))


@dataclass
class PipelineResult:
    config: PipelineConfig
    histories: dict[RegionKey, RegionHistory]
    real_ips: dict[str, list[dict[str, int]]]
    cost_models: dict[str, CostModel]
    min_runs: dict[tuple[str, int], int]
    weights: dict[str, dict[str, ImpactWeights]]
    schedules: list[PrescriptionSchedule] = field(default_factory=list)
    rows: list[EvaluationRow] = field(default_factory=list)
    pareto_labels: dict[str, dict[str, list[str]]] = field(default_factory=dict)

    def region_names(self) -> list[str]:
        return sorted(k.canonical() for k in self.histories)

    def rows_for(self, scope: str, kind: str) -> list[EvaluationRow]:
        if scope == "world":
            return [
                r
                for r in self.rows
                if r.region_scope == "world-aggregate" and r.cost_kind == kind
            ]
        return [
            r
            for r in self.rows
            if r.region == scope and r.cost_kind == kind and r.region_scope == "region"
        ]


def report_row_order(config: PipelineConfig) -> list[str]:
    """Fixed row order of the external report tables."""
    labels = [f"opt_consecutive_{label}" for label in config.consecutive_labels]
    labels += [f"opt_{spec.label}" for spec in config.weight_specs]
    labels += [f"blind_greedy_{k}" for k in range(config.n_greedy_variants)]
    labels += [f"random_{seed}" for seed in config.random_seeds]
    labels.append(REAL_IP_LABEL)
    return labels


def _prescription_indices(config: PipelineConfig) -> dict[str, int]:
    labels = [l for l in report_row_order(config) if l != REAL_IP_LABEL]
    return {label: i for i, label in enumerate(labels)}


def run_pipeline(
    csv_bytes: bytes,
    predictor: CasePredictor | None = None,
    config: PipelineConfig | None = None,
    catalog: PlanCatalog | None = None,
    out_dir: Path | str | None = None,
    weight_cache: WeightCache | None = None,
) -> PipelineResult:
    """Run the whole protocol on one dataset; optionally emit artifacts."""
    catalog = catalog or default_catalog()
    predictor = predictor or RatioSurrogate(catalog=catalog)
    config = config or PipelineConfig()

    full_histories = parse_history(csv_bytes, catalog)
    cutoff = config.start_date - timedelta(days=1)
    window_end = config.start_date + timedelta(days=config.horizon_days - 1)

    histories = {k: h.truncated(cutoff) for k, h in full_histories.items()}
    real_ips = {
        k.canonical(): full_histories[k].levels_between(config.start_date, window_end)
        for k in full_histories
    }

    cost_models = {
        kind: build_cost_model(kind, catalog, seed=config.random_cost_seed)
        for kind in config.cost_kinds
    }
    min_runs = derive_min_runs(histories, catalog)

    weights: dict[str, dict[str, ImpactWeights]] = {}
    for key in sorted(full_histories, key=lambda k: k.canonical()):
        per_region: dict[str, ImpactWeights] = {}
        for spec in config.weight_specs:
            if weight_cache is not None:
                per_region[spec.label] = weight_cache.get_or_estimate(
                    full_histories[key], spec, catalog, predictor
                )
            else:
                per_region[spec.label] = estimate_weight_set(
                    full_histories[key], spec, catalog, predictor
                )
        weights[key.canonical()] = per_region

    result = PipelineResult(
        config=config,
        histories=histories,
        real_ips=real_ips,
        cost_models=cost_models,
        min_runs=min_runs,
        weights=weights,
    )

    indices = _prescription_indices(config)
    modes = [(spec.label, False) for spec in config.weight_specs]
    modes += [(label, True) for label in config.consecutive_labels]

    for kind in config.cost_kinds:
        cost_model = cost_models[kind]
        optimizer = prescribe_all(
            histories,
            weights,
            [cost_model],
            predictor,
            catalog,
            modes=modes,
            horizon_days=config.horizon_days,
            min_runs=min_runs,
        )
        for schedule in optimizer:
            schedule.prescription_index = indices[schedule.model_label]
        result.schedules.extend(optimizer)

        for key in sorted(histories, key=lambda k: k.canonical()):
            history = histories[key]
            for k in range(config.n_greedy_variants):
                label = f"blind_greedy_{k}"
                assignment = blind_greedy(cost_model, catalog, k, config.n_greedy_variants)
                result.schedules.append(
                    schedule_from_assignments(
                        history=history,
                        assignments=[dict(assignment) for _ in range(config.horizon_days)],
                        cost_model=cost_model,
                        predictor=predictor,
                        catalog=catalog,
                        model_label=label,
                        prescription_index=indices[label],
                    )
                )
            for seed in config.random_seeds:
                label = f"random_{seed}"
                result.schedules.append(
                    schedule_from_assignments(
                        history=history,
                        assignments=random_prescription(
                            catalog, seed, key, config.horizon_days
                        ),
                        cost_model=cost_model,
                        predictor=predictor,
                        catalog=catalog,
                        model_label=label,
                        prescription_index=indices[label],
                    )
                )
            enacted = result.real_ips.get(key.canonical()) or []
            if not enacted:
                raise MissingRealIps(
                    f"{key.canonical()}: dataset does not cover the evaluation window"
                )
            result.schedules.append(
                schedule_from_assignments(
                    history=history,
                    assignments=enacted,
                    cost_model=cost_model,
                    predictor=predictor,
                    catalog=catalog,
                    model_label=REAL_IP_LABEL,
                )
            )

    for schedule in result.schedules:
        history = histories[schedule.region]
        cost_model = cost_models[schedule.cost_kind]
        result.rows.append(
            evaluate_schedule(schedule, history, predictor, cost_model, catalog)
        )

    row_order = report_row_order(config)
    for kind in config.cost_kinds:
        for label in row_order:
            per_region = [
                r
                for r in result.rows
                if r.model_label == label
                and r.cost_kind == kind
                and r.region_scope == "region"
            ]
            if per_region:
                result.rows.append(world_aggregate(per_region))

    scopes = result.region_names() + ["world"]
    for scope in scopes:
        result.pareto_labels[scope] = {}
        for kind in config.cost_kinds:
            front = pareto_front(result.rows_for(scope, kind))
            result.pareto_labels[scope][kind] = sorted(
                r.model_label for r in front.rows
            )

    if out_dir is not None:
        _emit_artifacts(result, catalog, Path(out_dir))
    return result


def _emit_artifacts(result: PipelineResult, catalog: PlanCatalog, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    config = result.config

    for kind in config.cost_kinds:
        kind_schedules = [
            s
            for s in result.schedules
            if s.cost_kind == kind and s.model_label != REAL_IP_LABEL
        ]
        kind_schedules.sort(key=lambda s: (s.region.canonical(), s.prescription_index))
        write_prescriptions(
            kind_schedules, catalog, out_dir / f"prescriptions_{kind}.csv"
        )

    row_order = report_row_order(config)
    for scope in result.region_names() + ["world"]:
        for kind in config.cost_kinds:
            rows = {r.model_label: r for r in result.rows_for(scope, kind)}
            lines = ["model_label,cases,costs_normalized,costs_raw"]
            for label in row_order:
                if label not in rows:
                    continue
                r = rows[label]
                lines.append(
                    f"{label},{r.mean_daily_cases!r},"
                    f"{r.mean_stringency_normalized!r},{r.mean_stringency_raw!r}"
                )
            path = out_dir / f"report_{scope}_{kind}.csv"
            path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    min_runs_table: dict[str, dict[str, int]] = {}
    for (code, level), days in sorted(result.min_runs.items()):
        min_runs_table.setdefault(code, {})[str(level)] = days
    (out_dir / "min_runs.json").write_text(
        json.dumps(min_runs_table, sort_keys=True, indent=1)
    )

    (out_dir / "cost_models.json").write_text(
        json.dumps(
            {
                kind: json.loads(model.to_json())
                for kind, model in result.cost_models.items()
            },
            sort_keys=True,
            indent=1,
        )
    )

    weights_table = {
        f"{region}/{label}": {
            code: {
                str(level): w.c[(code, level)]
                for level in catalog.plan(code).levels
            }
            for code in catalog.codes
        }
        for region, per_region in sorted(result.weights.items())
        for label, w in sorted(per_region.items())
    }
    (out_dir / "weights.json").write_text(json.dumps(weights_table, sort_keys=True))

    (out_dir / "evaluations.json").write_text(
        json.dumps(_evaluations_payload(result), sort_keys=True, indent=1)
    )

    manifest = {
        "start_date": config.start_date.isoformat(),
        "horizon_days": config.horizon_days,
        "cost_kinds": list(config.cost_kinds),
        "prescription_indices": _prescription_indices(config),
        "consecutive_labels": list(config.consecutive_labels),
        "row_order": row_order,
    }
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, sort_keys=True, indent=1)
    )


def _evaluations_payload(result: PipelineResult) -> dict:
    rows = [
        {
            "model_label": r.model_label,
            "region_scope": r.region_scope,
            "region": r.region,
            "cost_kind": r.cost_kind,
            "mean_daily_cases": r.mean_daily_cases,
            "mean_stringency_normalized": r.mean_stringency_normalized,
            "mean_stringency_raw": r.mean_stringency_raw,
        }
        for r in result.rows
    ]
    rows.sort(
        key=lambda r: (
            r["region"] or "",
            r["cost_kind"],
            r["model_label"],
            r["region_scope"],
        )
    )
    return {
        "regions": result.region_names(),
        "cost_kinds": sorted(result.cost_models),
        "weight_sets": [
            {
                "label": spec.label,
                "start_date": spec.start_date.isoformat(),
                "horizon_days": spec.horizon_days,
            }
            for spec in result.config.weight_specs
        ],
        "rows": rows,
        "pareto": result.pareto_labels,
    }
