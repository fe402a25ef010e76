"""Command-line interface.

Global options sit on the group and apply to every subcommand:

    npiopt --data history.csv --out results/ report
    npiopt --data history.csv --cost-model realistic --weights w_jan15_7 \\
        prescribe --region Alphaland
    npiopt --data history.csv serve --port 8080
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path

import click

from .catalog import default_catalog
from .costs import COST_KINDS, build_cost_model
from .errors import NpioptError
from .evaluate import evaluate_schedule
from .heuristics import blind_greedy, random_prescription
from .impact import DEFAULT_WEIGHT_SET_SPECS, estimate_weight_set
from .ingest import parse_history
from .pipeline import PipelineConfig, run_pipeline
from .predictor import RatioSurrogate
from .rollout import (
    prescribe_region,
    read_prescriptions,
    schedule_from_assignments,
    write_prescriptions,
)
from .solver import derive_min_runs


@dataclass
class CliContext:
    data: Path | None
    start_date: date
    horizon: int
    cost_model: str
    seed: int
    weights: str
    consecutive: bool
    out: Path | None
    format: str

    _histories = None
    _catalog = None
    _predictor = None

    def catalog(self):
        if self._catalog is None:
            self._catalog = default_catalog()
        return self._catalog

    def predictor(self):
        if self._predictor is None:
            self._predictor = RatioSurrogate(catalog=self.catalog())
        return self._predictor

    def histories(self):
        if self._histories is None:
            if self.data is None:
                raise click.UsageError("--data <csv> is required for this command")
            self._histories = parse_history(self.data.read_bytes(), self.catalog())
        return self._histories

    def truncated_histories(self):
        cutoff = self.start_date - timedelta(days=1)
        return {k: h.truncated(cutoff) for k, h in self.histories().items()}

    def weight_specs(self):
        if self.weights == "all":
            return list(DEFAULT_WEIGHT_SET_SPECS)
        for spec in DEFAULT_WEIGHT_SET_SPECS:
            if spec.label == self.weights:
                return [spec]
        raise click.UsageError(
            f"unknown weight set {self.weights!r}; choose from "
            f"{[s.label for s in DEFAULT_WEIGHT_SET_SPECS]} or 'all'"
        )

    def cost(self):
        return build_cost_model(self.cost_model, self.catalog(), seed=self.seed)

    def out_dir(self) -> Path:
        out = self.out or Path("npiopt-out")
        out.mkdir(parents=True, exist_ok=True)
        return out


@click.group()
@click.option("--data", type=click.Path(exists=True, path_type=Path), default=None, help="History CSV.")
@click.option("--start-date", default="2021-01-12", show_default=True, help="First prescription day.")
@click.option("--horizon", default=28, show_default=True, help="Prescription horizon in days.")
@click.option("--cost-model", type=click.Choice(COST_KINDS), default="realistic", show_default=True)
@click.option("--seed", default=0, show_default=True, help="Seed for random cost models / heuristics.")
@click.option("--weights", default="all", show_default=True, help="Weight-set label or 'all'.")
@click.option("--consecutive", is_flag=True, default=False, help="Enforce minimum consecutive runs.")
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Output directory.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.pass_context
def cli(ctx, data, start_date, horizon, cost_model, seed, weights, consecutive, out, fmt):
    """Intervention-plan prescription engine."""
    ctx.obj = CliContext(
        data=data,
        start_date=date.fromisoformat(start_date),
        horizon=horizon,
        cost_model=cost_model,
        seed=seed,
        weights=weights,
        consecutive=consecutive,
        out=out,
        format=fmt,
    )


@cli.command()
@click.pass_obj
def ingest(app: CliContext):
    """Parse the history CSV and summarize each region."""
    histories = app.histories()
    for key in sorted(histories, key=lambda k: k.canonical()):
        h = histories[key]
        click.echo(
            f"{key.canonical()}: {len(h)} days "
            f"({h.dates[0]} .. {h.end_date}), "
            f"last 7-day mean new cases {h.new_cases_smoothed[-1]:.2f}"
        )


@cli.command("derive-runs")
@click.pass_obj
def derive_runs(app: CliContext):
    """Derive per-(plan, level) minimum consecutive-day requirements."""
    min_runs = derive_min_runs(app.truncated_histories(), app.catalog())
    table: dict[str, dict[str, int]] = {}
    for (code, level), days in sorted(min_runs.items()):
        table.setdefault(code, {})[str(level)] = days
    text = json.dumps(table, sort_keys=True, indent=1)
    if app.out:
        path = app.out_dir() / "min_runs.json"
        path.write_text(text)
        click.echo(f"wrote {path}")
    else:
        click.echo(text)


@cli.command("estimate-weights")
@click.pass_obj
def estimate_weights(app: CliContext):
    """Estimate impact weights for the selected weight sets."""
    catalog = app.catalog()
    predictor = app.predictor()
    histories = app.histories()
    table: dict[str, dict[str, dict[str, float]]] = {}
    for key in sorted(histories, key=lambda k: k.canonical()):
        for spec in app.weight_specs():
            weights = estimate_weight_set(histories[key], spec, catalog, predictor)
            entry: dict[str, dict[str, float]] = {}
            for (code, level), value in weights.c.items():
                entry.setdefault(code, {})[str(level)] = value
            table[f"{key.canonical()}/{spec.label}"] = entry
    text = json.dumps(table, sort_keys=True)
    if app.out:
        path = app.out_dir() / "weights.json"
        path.write_text(text)
        click.echo(f"wrote {path}")
    else:
        click.echo(text)


@cli.command()
@click.option("--region", default=None, help="Canonical region name; default all regions.")
@click.pass_obj
def prescribe(app: CliContext, region):
    """Run the optimizer and emit a prescription CSV."""
    catalog = app.catalog()
    predictor = app.predictor()
    histories = app.truncated_histories()
    specs = app.weight_specs()
    if len(specs) != 1:
        raise click.UsageError("prescribe needs a single --weights label")
    spec = specs[0]
    cost_model = app.cost()
    min_runs = derive_min_runs(histories, catalog) if app.consecutive else None

    keys = sorted(histories, key=lambda k: k.canonical())
    if region is not None:
        keys = [k for k in keys if k.canonical() == region]
        if not keys:
            raise click.UsageError(f"unknown region: {region}")

    schedules = []
    for key in keys:
        weights = estimate_weight_set(
            app.histories()[key], spec, catalog, predictor
        )
        label = f"opt_consecutive_{spec.label}" if app.consecutive else f"opt_{spec.label}"
        schedules.append(
            prescribe_region(
                history=histories[key],
                weights=weights,
                cost_model=cost_model,
                predictor=predictor,
                catalog=catalog,
                horizon_days=app.horizon,
                consecutive=app.consecutive,
                min_runs=min_runs,
                model_label=label,
            )
        )
    path = app.out_dir() / "prescriptions.csv"
    write_prescriptions(schedules, catalog, path)
    click.echo(f"wrote {path} ({len(schedules)} region schedules)")


@cli.command()
@click.option("--kind", type=click.Choice(["greedy", "random"]), required=True)
@click.option("--variant", default=0, show_default=True, help="Greedy variant 0..9.")
@click.pass_obj
def heuristic(app: CliContext, kind, variant):
    """Emit a baseline heuristic prescription CSV."""
    catalog = app.catalog()
    histories = app.truncated_histories()
    cost_model = app.cost()
    schedules = []
    for key in sorted(histories, key=lambda k: k.canonical()):
        if kind == "greedy":
            assignment = blind_greedy(cost_model, catalog, variant)
            assignments = [dict(assignment) for _ in range(app.horizon)]
            label = f"blind_greedy_{variant}"
        else:
            assignments = random_prescription(catalog, app.seed, key, app.horizon)
            label = f"random_{app.seed}"
        schedules.append(
            schedule_from_assignments(
                history=histories[key],
                assignments=assignments,
                cost_model=cost_model,
                predictor=app.predictor(),
                catalog=catalog,
                model_label=label,
            )
        )
    path = app.out_dir() / f"prescriptions_{kind}.csv"
    write_prescriptions(schedules, catalog, path)
    click.echo(f"wrote {path}")


@cli.command()
@click.option(
    "--prescriptions",
    type=click.Path(exists=True, path_type=Path),
    required=True,
    help="Prescription CSV to score.",
)
@click.pass_obj
def evaluate(app: CliContext, prescriptions):
    """Score a prescription CSV through the predictor."""
    catalog = app.catalog()
    predictor = app.predictor()
    histories = app.truncated_histories()
    by_canonical = {k.canonical(): k for k in histories}
    cost_model = app.cost()
    parsed = read_prescriptions(prescriptions, catalog)
    rows = []
    for (canonical, index), days in sorted(parsed.items()):
        key = by_canonical.get(canonical)
        if key is None:
            continue
        schedule = schedule_from_assignments(
            history=histories[key],
            assignments=[a for _, a in days],
            cost_model=cost_model,
            predictor=predictor,
            catalog=catalog,
            model_label=f"prescription_{index}",
            prescription_index=index,
        )
        rows.append(
            evaluate_schedule(schedule, histories[key], predictor, cost_model, catalog)
        )
    if app.format == "json":
        click.echo(
            json.dumps(
                [
                    {
                        "region": r.region,
                        "model_label": r.model_label,
                        "cases": r.mean_daily_cases,
                        "costs_normalized": r.mean_stringency_normalized,
                        "costs_raw": r.mean_stringency_raw,
                    }
                    for r in rows
                ],
                sort_keys=True,
            )
        )
    else:
        click.echo("region,model_label,cases,costs_normalized,costs_raw")
        for r in rows:
            click.echo(
                f"{r.region},{r.model_label},{r.mean_daily_cases!r},"
                f"{r.mean_stringency_normalized!r},{r.mean_stringency_raw!r}"
            )


@cli.command()
@click.pass_obj
def report(app: CliContext):
    """Run the full pipeline and emit all report artifacts."""
    config = PipelineConfig(
        start_date=app.start_date,
        horizon_days=app.horizon,
        random_cost_seed=app.seed,
    )
    out = app.out_dir()
    result = run_pipeline(
        app.data.read_bytes() if app.data else _missing_data(),
        predictor=app.predictor(),
        config=config,
        catalog=app.catalog(),
        out_dir=out,
    )
    click.echo(
        f"wrote reports for {len(result.region_names())} regions "
        f"x {len(config.cost_kinds)} cost kinds to {out}"
    )


def _missing_data():
    raise click.UsageError("--data <csv> is required for this command")


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8080, show_default=True)
@click.option(
    "--static-dir",
    type=click.Path(path_type=Path),
    default=None,
    help="Directory of dashboard assets to serve at /.",
)
@click.pass_obj
def serve(app: CliContext, host, port, static_dir):
    """Run the pipeline, then serve the JSON API (and dashboard assets)."""
    import uvicorn

    from .api import create_app

    config = PipelineConfig(
        start_date=app.start_date,
        horizon_days=app.horizon,
        random_cost_seed=app.seed,
    )
    if app.data is None:
        _missing_data()
    result = run_pipeline(
        app.data.read_bytes(),
        predictor=app.predictor(),
        config=config,
        catalog=app.catalog(),
    )
    application = create_app(result, app.predictor(), app.catalog(), static_dir)
    uvicorn.run(application, host=host, port=port)


def main():
    try:
        cli(standalone_mode=True)
    except NpioptError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
