"""JSON API over a completed pipeline run, plus static dashboard hosting.

All state (histories, weights, cost models, evaluations) is built once at
startup and never mutated, so request handlers only read. Handlers are
plain sync functions; the framework runs them on a thread pool, keeping
slow prescriptions from blocking unrelated requests.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .catalog import PlanCatalog, validate_assignment
from .costs import raw_stringency_of, stringency_of
from .errors import NpioptError
from .pipeline import PipelineResult
from .predictor import CasePredictor
from .rollout import PrescriptionSchedule, prescribe_region

__all__ = ["create_app"]


class PrescribeRequest(BaseModel):
    region: str
    weight_set: str
    cost_model: str = "realistic"
    consecutive: bool = False
    horizon: int = Field(default=28, ge=1, le=365)


class SimulateRequest(BaseModel):
    region: str
    cost_model: str = "realistic"
    schedule: list[dict[str, int | str]]


def _schedule_payload(schedule: PrescriptionSchedule, catalog: PlanCatalog) -> dict:
    return {
        "region": schedule.region.canonical(),
        "model_label": schedule.model_label,
        "cost_kind": schedule.cost_kind,
        "prescription_index": schedule.prescription_index,
        "zero_beta": schedule.zero_beta,
        "beta": schedule.beta,
        "days": [
            {
                "Date": day.day.isoformat(),
                **{
                    catalog.plan(code).display_name: day.assignment[code]
                    for code in catalog.codes
                },
                "alpha_used": day.alpha_used,
                "stringency": day.stringency,
                "predicted_new_cases": day.predicted_new_cases,
            }
            for day in schedule.days
        ],
    }


def _row_payload(row) -> dict:
    return {
        "model_label": row.model_label,
        "region_scope": row.region_scope,
        "region": row.region,
        "cost_kind": row.cost_kind,
        "mean_daily_cases": row.mean_daily_cases,
        "mean_stringency_normalized": row.mean_stringency_normalized,
        "mean_stringency_raw": row.mean_stringency_raw,
    }


def create_app(
    result: PipelineResult,
    predictor: CasePredictor,
    catalog: PlanCatalog,
    static_dir: Path | str | None = None,
) -> FastAPI:
    app = FastAPI(title="npiopt", docs_url=None, redoc_url=None)
    regions = {k.canonical(): k for k in result.histories}

    def _history(region: str):
        key = regions.get(region)
        if key is None:
            raise HTTPException(status_code=404, detail=f"unknown region: {region}")
        return result.histories[key]

    @app.get("/api/regions")
    def get_regions() -> list[str]:
        return result.region_names()

    @app.get("/api/weight-sets")
    def get_weight_sets() -> list[dict]:
        return [
            {
                "label": spec.label,
                "start_date": spec.start_date.isoformat(),
                "horizon_days": spec.horizon_days,
            }
            for spec in result.config.weight_specs
        ]

    @app.get("/api/cost-models")
    def get_cost_models() -> list[dict]:
        return [
            {"kind": kind, "seed": model.seed, "base": model.base, "raw": model.raw}
            for kind, model in sorted(result.cost_models.items())
        ]

    @app.get("/api/catalog")
    def get_catalog() -> list[dict]:
        return [
            {
                "code": p.code,
                "display_name": p.display_name,
                "max_level": p.max_level,
                "realistic_base_cost": p.realistic_base_cost,
            }
            for p in catalog.plans
        ]

    @app.post("/api/prescribe")
    def post_prescribe(request: PrescribeRequest) -> dict:
        history = _history(request.region)
        per_region = result.weights.get(request.region, {})
        if request.weight_set not in per_region:
            raise HTTPException(
                status_code=404, detail=f"unknown weight set: {request.weight_set}"
            )
        if request.cost_model not in result.cost_models:
            raise HTTPException(
                status_code=404, detail=f"unknown cost model: {request.cost_model}"
            )
        label = (
            f"opt_consecutive_{request.weight_set}"
            if request.consecutive
            else f"opt_{request.weight_set}"
        )
        schedule = prescribe_region(
            history=history,
            weights=per_region[request.weight_set],
            cost_model=result.cost_models[request.cost_model],
            predictor=predictor,
            catalog=catalog,
            horizon_days=request.horizon,
            consecutive=request.consecutive,
            min_runs=result.min_runs,
            model_label=label,
        )
        return _schedule_payload(schedule, catalog)

    @app.post("/api/simulate")
    def post_simulate(request: SimulateRequest) -> dict:
        history = _history(request.region)
        if request.cost_model not in result.cost_models:
            raise HTTPException(
                status_code=404, detail=f"unknown cost model: {request.cost_model}"
            )
        cost_model = result.cost_models[request.cost_model]
        by_display = {p.display_name: p.code for p in catalog.plans}
        assignments: list[dict[str, int]] = []
        for i, row in enumerate(request.schedule):
            assignment: dict[str, int] = {}
            for column, value in row.items():
                code = by_display.get(column, column if column in catalog else None)
                if code is None:
                    continue
                assignment[code] = int(value)
            if not validate_assignment(catalog, assignment):
                raise HTTPException(
                    status_code=422, detail=f"invalid levels on day {i}"
                )
            assignments.append(assignment)
        if not assignments:
            raise HTTPException(status_code=422, detail="empty schedule")
        try:
            predicted = predictor.predict(history, assignments, len(assignments))
        except NpioptError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return {
            "region": request.region,
            "cost_kind": cost_model.kind,
            "predicted_daily_new_cases": [float(v) for v in predicted],
            "stringency": [
                stringency_of(cost_model, a, catalog) for a in assignments
            ],
            "stringency_raw": [
                raw_stringency_of(cost_model, a, catalog) for a in assignments
            ],
        }

    @app.get("/api/evaluations")
    def get_evaluations(region: str, cost_kind: str | None = None) -> list[dict]:
        if region != "world" and region not in regions:
            raise HTTPException(status_code=404, detail=f"unknown region: {region}")
        kinds = [cost_kind] if cost_kind else sorted(result.cost_models)
        rows = []
        for kind in kinds:
            rows.extend(_row_payload(r) for r in result.rows_for(region, kind))
        return rows

    @app.get("/api/pareto")
    def get_pareto(region: str, cost_kind: str | None = None) -> dict:
        if region != "world" and region not in regions:
            raise HTTPException(status_code=404, detail=f"unknown region: {region}")
        fronts = result.pareto_labels.get(region, {})
        kinds = [cost_kind] if cost_kind else sorted(result.cost_models)
        payload = {}
        for kind in kinds:
            labels = set(fronts.get(kind, []))
            payload[kind] = {
                "front_labels": sorted(labels),
                "rows": [
                    _row_payload(r)
                    for r in result.rows_for(region, kind)
                ],
            }
        return payload

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="static")

    return app
