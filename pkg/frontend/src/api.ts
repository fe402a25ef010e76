/** Thin typed client for the engine's JSON API. */

import type {
  CostModelInfo,
  EvaluationRow,
  ParetoPayload,
  PrescribeRequest,
  PrescriptionPayload,
  SimulateRequest,
  SimulateResponse,
  WeightSetInfo,
} from './types';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`API ${status}: ${detail}`);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl = '',
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = await response.json();
        if (body && typeof body.detail === 'string') detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(payload),
    });
  }

  regions(): Promise<string[]> {
    return this.request('/api/regions');
  }

  weightSets(): Promise<WeightSetInfo[]> {
    return this.request('/api/weight-sets');
  }

  costModels(): Promise<CostModelInfo[]> {
    return this.request('/api/cost-models');
  }

  prescribe(request: PrescribeRequest): Promise<PrescriptionPayload> {
    return this.post('/api/prescribe', request);
  }

  simulate(request: SimulateRequest): Promise<SimulateResponse> {
    return this.post('/api/simulate', request);
  }

  evaluations(region: string, costKind?: string): Promise<EvaluationRow[]> {
    const params = new URLSearchParams({ region });
    if (costKind) params.set('cost_kind', costKind);
    return this.request(`/api/evaluations?${params}`);
  }

  pareto(region: string, costKind?: string): Promise<ParetoPayload> {
    const params = new URLSearchParams({ region });
    if (costKind) params.set('cost_kind', costKind);
    return this.request(`/api/pareto?${params}`);
  }
}
