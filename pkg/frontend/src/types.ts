/** Wire types for the engine's JSON API. */

export interface WeightSetInfo {
  label: string;
  start_date: string;
  horizon_days: number;
}

export interface CostModelInfo {
  kind: string;
  seed: number | null;
  base: Record<string, number>;
  raw: Record<string, number>;
}

export interface EvaluationRow {
  model_label: string;
  region_scope: string;
  region: string | null;
  cost_kind: string;
  mean_daily_cases: number;
  mean_stringency_normalized: number;
  mean_stringency_raw: number;
}

export interface ParetoKindPayload {
  front_labels: string[];
  rows: EvaluationRow[];
}

export type ParetoPayload = Record<string, ParetoKindPayload>;

/** One schedule day as served by /api/prescribe: Date plus the CSV columns. */
export interface PrescriptionDay {
  Date: string;
  alpha_used: number;
  stringency: number;
  predicted_new_cases: number;
  [column: string]: string | number;
}

export interface PrescriptionPayload {
  region: string;
  model_label: string;
  cost_kind: string;
  prescription_index: number;
  zero_beta: boolean;
  beta: number;
  days: PrescriptionDay[];
}

/** /api/simulate request schedule rows mirror the prescription CSV columns. */
export interface ScheduleRow {
  Date: string;
  [column: string]: string | number;
}

export interface SimulateRequest {
  region: string;
  cost_model: string;
  schedule: ScheduleRow[];
}

export interface SimulateResponse {
  region: string;
  cost_kind: string;
  predicted_daily_new_cases: number[];
  stringency: number[];
  stringency_raw: number[];
}

export interface PrescribeRequest {
  region: string;
  weight_set: string;
  cost_model: string;
  consecutive: boolean;
  horizon: number;
}
