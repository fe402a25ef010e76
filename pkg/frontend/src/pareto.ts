/**
 * View model for the trade-off scatter: one point per evaluated model,
 * front members flagged. Values pass through from the API untouched.
 */

import type { ParetoKindPayload } from './types';

export interface ScatterPoint {
  label: string;
  cases: number;
  stringency: number;
  stringencyRaw: number;
  onFront: boolean;
  family: 'optimizer' | 'greedy' | 'random' | 'enacted';
}

export function familyOf(label: string): ScatterPoint['family'] {
  if (label.startsWith('opt')) return 'optimizer';
  if (label.startsWith('blind_greedy')) return 'greedy';
  if (label.startsWith('random')) return 'random';
  return 'enacted';
}

export function buildScatter(payload: ParetoKindPayload): ScatterPoint[] {
  const front = new Set(payload.front_labels);
  return payload.rows.map(row => ({
    label: row.model_label,
    cases: row.mean_daily_cases,
    stringency: row.mean_stringency_normalized,
    stringencyRaw: row.mean_stringency_raw,
    onFront: front.has(row.model_label),
    family: familyOf(row.model_label),
  }));
}
