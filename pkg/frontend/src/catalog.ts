/**
 * Client-side mirror of the intervention-plan catalog.
 *
 * The UI constrains every editable level to these bounds so it can never
 * submit an invalid assignment; the engine re-validates on its side.
 */

export interface PlanInfo {
  code: string;
  displayName: string;
  maxLevel: number;
}

export const PLANS: readonly PlanInfo[] = [
  { code: 'C1', displayName: 'C1_School closing', maxLevel: 3 },
  { code: 'C2', displayName: 'C2_Workplace closing', maxLevel: 3 },
  { code: 'C3', displayName: 'C3_Cancel public events', maxLevel: 2 },
  { code: 'C4', displayName: 'C4_Restrictions on gatherings', maxLevel: 4 },
  { code: 'C5', displayName: 'C5_Close public transport', maxLevel: 2 },
  { code: 'C6', displayName: 'C6_Stay at home requirements', maxLevel: 3 },
  { code: 'C7', displayName: 'C7_Restrictions on internal movement', maxLevel: 2 },
  { code: 'C8', displayName: 'C8_International travel controls', maxLevel: 4 },
  { code: 'H1', displayName: 'H1_Public information campaigns', maxLevel: 2 },
  { code: 'H2', displayName: 'H2_Testing policy', maxLevel: 3 },
  { code: 'H3', displayName: 'H3_Contact tracing', maxLevel: 2 },
  { code: 'H6', displayName: 'H6_Facial Coverings', maxLevel: 4 },
] as const;

const BY_CODE = new Map(PLANS.map(p => [p.code, p]));
const BY_DISPLAY = new Map(PLANS.map(p => [p.displayName, p]));

export function planByCode(code: string): PlanInfo {
  const plan = BY_CODE.get(code);
  if (!plan) throw new Error(`unknown plan code: ${code}`);
  return plan;
}

export function planByDisplayName(name: string): PlanInfo | undefined {
  return BY_DISPLAY.get(name);
}

/** Clamp a requested level into the plan's admissible 0..max range. */
export function clampLevel(code: string, level: number): number {
  const plan = planByCode(code);
  if (!Number.isFinite(level)) return 0;
  return Math.min(plan.maxLevel, Math.max(0, Math.round(level)));
}

/** True iff the assignment maps every plan, and nothing else, to a valid level. */
export function validAssignment(levels: Record<string, number>): boolean {
  const keys = Object.keys(levels);
  if (keys.length !== PLANS.length) return false;
  return PLANS.every(p => {
    const value = levels[p.code];
    return Number.isInteger(value) && value >= 0 && value <= p.maxLevel;
  });
}

/**
 * Blind-greedy assignment for one variant, mirroring the engine's baseline:
 * raise the cheapest still-raisable plan one level at a time (ties in
 * catalog order), then stop after round((variant+1)/variants of all
 * increments). Pure cost bookkeeping; no case arithmetic happens here.
 */
export function greedyAssignment(
  baseCosts: Record<string, number>,
  variant: number,
  variants = 10,
): Record<string, number> {
  const levels: Record<string, number> = {};
  for (const plan of PLANS) levels[plan.code] = 0;
  const total = PLANS.reduce((acc, p) => acc + p.maxLevel, 0);
  const steps = Math.floor(((variant + 1) * total) / variants + 0.5);
  for (let i = 0; i < steps; i++) {
    let cheapest: PlanInfo | undefined;
    for (const plan of PLANS) {
      if (levels[plan.code] >= plan.maxLevel) continue;
      if (!cheapest || baseCosts[plan.code] < baseCosts[cheapest.code]) {
        cheapest = plan;
      }
    }
    if (!cheapest) break;
    levels[cheapest.code] += 1;
  }
  return levels;
}
