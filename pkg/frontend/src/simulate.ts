/**
 * Simulation gate: debounces rapid edits and drops superseded responses.
 *
 * Each request takes a token; a response is applied only when its token is
 * still the latest, so one in-flight simulation per session can never be
 * overwritten by a stale reply arriving late.
 */

import type { ApiClient } from './api';
import type { SimulateResponse } from './types';
import type { WhatIfSession } from './whatif';
import { applySimulation, toSimulateRequest } from './whatif';

export interface SimulationGate {
  /** Debounced simulate; resolves null when superseded. */
  run(session: WhatIfSession): Promise<WhatIfSession | null>;
  pendingToken(): number;
}

export function createSimulationGate(
  client: Pick<ApiClient, 'simulate'>,
  debounceMs = 150,
  schedule: (fn: () => void, ms: number) => unknown = (fn, ms) => setTimeout(fn, ms),
  cancel: (handle: unknown) => void = handle => clearTimeout(handle as number),
): SimulationGate {
  let token = 0;
  let pendingTimer: unknown = null;
  let pendingResolve: ((value: WhatIfSession | null) => void) | null = null;

  return {
    pendingToken: () => token,
    run(session: WhatIfSession): Promise<WhatIfSession | null> {
      token += 1;
      const mine = token;
      if (pendingTimer !== null) {
        // a newer edit supersedes the queued one; let its caller move on
        cancel(pendingTimer);
        pendingTimer = null;
        pendingResolve?.(null);
        pendingResolve = null;
      }
      return new Promise((resolve, reject) => {
        pendingResolve = resolve;
        pendingTimer = schedule(() => {
          pendingTimer = null;
          pendingResolve = null;
          if (mine !== token) {
            resolve(null);
            return;
          }
          client.simulate(toSimulateRequest(session)).then(
            (response: SimulateResponse) => {
              resolve(mine === token ? applySimulation(session, response) : null);
            },
            error => {
              if (mine === token) reject(error);
              else resolve(null);
            },
          );
        }, debounceMs);
      });
    },
  };
}
