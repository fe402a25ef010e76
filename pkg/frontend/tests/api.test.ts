import { describe, expect, it } from 'vitest';

import { ApiClient, ApiError } from '../src/api';

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

function recordingClient(body: unknown, status = 200) {
  const calls: Array<{ input: string; init?: RequestInit }> = [];
  const client = new ApiClient('', (input, init) => {
    calls.push({ input, init });
    return Promise.resolve(jsonResponse(body, status));
  });
  return { client, calls };
}

describe('api client', () => {
  it('hits the documented endpoints', async () => {
    const { client, calls } = recordingClient([]);
    await client.regions();
    await client.weightSets();
    await client.costModels();
    await client.evaluations('Alphaland', 'fixed');
    await client.pareto('world');
    expect(calls.map(c => c.input)).toEqual([
      '/api/regions',
      '/api/weight-sets',
      '/api/cost-models',
      '/api/evaluations?region=Alphaland&cost_kind=fixed',
      '/api/pareto?region=world',
    ]);
  });

  it('posts JSON bodies for prescribe and simulate', async () => {
    const { client, calls } = recordingClient({});
    const request = {
      region: 'Alphaland',
      weight_set: 'w_jan15_7',
      cost_model: 'fixed',
      consecutive: true,
      horizon: 28,
    };
    await client.prescribe(request);
    expect(calls[0].init?.method).toBe('POST');
    expect(JSON.parse(String(calls[0].init?.body))).toEqual(request);
  });

  it('surfaces the engine error detail', async () => {
    const { client } = recordingClient({ detail: 'unknown region: X' }, 404);
    await expect(client.regions()).rejects.toThrowError(ApiError);
    await expect(client.pareto('X')).rejects.toThrow('unknown region: X');
  });
});
