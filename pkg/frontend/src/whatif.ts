/**
 * What-if session state: an editable per-day schedule plus its latest
 * simulated trajectory and the ghost of the previous one.
 *
 * All numbers displayed by the what-if view come from /api/simulate (or the
 * prescription that seeded the session); this module only edits levels,
 * always clamped to the catalog, and shuttles payloads.
 */

import { clampLevel, greedyAssignment, PLANS, validAssignment } from './catalog';
import type {
  PrescriptionPayload,
  ScheduleRow,
  SimulateRequest,
  SimulateResponse,
} from './types';

export interface TrajectoryView {
  predictedDailyNewCases: number[];
  stringency: number[];
  stringencyRaw: number[];
}

export interface WhatIfSession {
  region: string;
  costModel: string;
  weightSet: string;
  dates: string[];
  /** levels[day][code] = level */
  levels: Record<string, number>[];
  lastSimulation: TrajectoryView | null;
  ghost: TrajectoryView | null;
}

function levelsFromDay(day: Record<string, string | number>): Record<string, number> {
  const out: Record<string, number> = {};
  for (const plan of PLANS) {
    const value = day[plan.displayName];
    out[plan.code] = clampLevel(plan.code, Number(value ?? 0));
  }
  return out;
}

/** Seed a session from an optimizer prescription, keeping its trajectory. */
export function sessionFromPrescription(
  prescription: PrescriptionPayload,
  weightSet: string,
): WhatIfSession {
  return {
    region: prescription.region,
    costModel: prescription.cost_kind,
    weightSet,
    dates: prescription.days.map(d => d.Date),
    levels: prescription.days.map(d => levelsFromDay(d)),
    lastSimulation: {
      predictedDailyNewCases: prescription.days.map(d => d.predicted_new_cases),
      stringency: prescription.days.map(d => d.stringency),
      stringencyRaw: [],
    },
    ghost: null,
  };
}

/** Set one level; out-of-range requests clamp instead of failing. */
export function setLevel(
  session: WhatIfSession,
  day: number,
  code: string,
  level: number,
): WhatIfSession {
  const levels = session.levels.map((assignment, i) =>
    i === day ? { ...assignment, [code]: clampLevel(code, level) } : assignment,
  );
  return { ...session, levels };
}

/** Bulk edit: repeat one day's assignment over every later day. */
export function copyDayForward(session: WhatIfSession, day: number): WhatIfSession {
  const template = session.levels[day];
  const levels = session.levels.map((assignment, i) =>
    i > day ? { ...template } : assignment,
  );
  return { ...session, levels };
}

/** Bulk edit: hold one plan at a level for the whole horizon. */
export function setPlanEveryDay(
  session: WhatIfSession,
  code: string,
  level: number,
): WhatIfSession {
  const clamped = clampLevel(code, level);
  const levels = session.levels.map(assignment => ({ ...assignment, [code]: clamped }));
  return { ...session, levels };
}

/** Bulk edit: replace every day with a blind-greedy variant's assignment. */
export function applyGreedyVariant(
  session: WhatIfSession,
  baseCosts: Record<string, number>,
  variant: number,
): WhatIfSession {
  const assignment = greedyAssignment(baseCosts, variant);
  return { ...session, levels: session.levels.map(() => ({ ...assignment })) };
}

/** Schedule payload rows, mirroring the prescription CSV columns. */
export function toScheduleRows(session: WhatIfSession): ScheduleRow[] {
  return session.dates.map((date, i) => {
    const row: ScheduleRow = { Date: date };
    for (const plan of PLANS) {
      row[plan.displayName] = session.levels[i][plan.code];
    }
    return row;
  });
}

export function toSimulateRequest(session: WhatIfSession): SimulateRequest {
  if (!session.levels.every(validAssignment)) {
    // clampLevel makes this unreachable through the editing API
    throw new Error('session holds an invalid assignment');
  }
  return {
    region: session.region,
    cost_model: session.costModel,
    schedule: toScheduleRows(session),
  };
}

/** Apply a simulation response, demoting the previous trajectory to ghost. */
export function applySimulation(
  session: WhatIfSession,
  response: SimulateResponse,
): WhatIfSession {
  return {
    ...session,
    ghost: session.lastSimulation,
    lastSimulation: {
      predictedDailyNewCases: response.predicted_daily_new_cases,
      stringency: response.stringency,
      stringencyRaw: response.stringency_raw,
    },
  };
}
