import { afterEach, describe, expect, it, vi } from 'vitest';
import { ApiClient, ApiError, LatestRequestGate } from '../src/api.js';
import { FIXTURE_SCENARIO, fixtureFetch, whatifReport } from './fixtures.js';

afterEach(() => {
  vi.unstubAllGlobals();
});

describe('ApiClient', () => {
  it('posts what-if requests and returns the decision report', async () => {
    const report = whatifReport();
    const spy = vi.fn(fixtureFetch({ '/models/m1/whatif': report }));
    vi.stubGlobal('fetch', spy);

    const client = new ApiClient('http://svc');
    const got = await client.whatIf('m1', FIXTURE_SCENARIO, [{ id: 'c1', overrides: {} }]);
    expect(got.selected).toBe('c2');

    const [url, init] = spy.mock.calls[0];
    expect(String(url)).toBe('http://svc/models/m1/whatif');
    const body = JSON.parse(init!.body as string);
    expect(body.scenario.object_type).toBe('BoilerHouse');
    expect(body.candidates).toHaveLength(1);
  });

  it('re-sweeping issues a fresh API call each time, never a cached result', async () => {
    let calls = 0;
    vi.stubGlobal(
      'fetch',
      vi.fn(async () => {
        calls += 1;
        return new Response(
          JSON.stringify({
            parameter: 'sumPumpPow',
            points: [[0, 0.1 * calls]],
            scenario: FIXTURE_SCENARIO,
          }),
          { status: 200 },
        );
      }),
    );

    const client = new ApiClient('');
    const base = { id: 'c1', overrides: {} };
    const first = await client.curve('m1', FIXTURE_SCENARIO, base, 'sumPumpPow', 0, 1, 5);
    const second = await client.curve('m1', FIXTURE_SCENARIO, base, 'sumPumpPow', 0, 1, 5);
    expect(calls).toBe(2);
    expect(first.points[0][1]).toBeCloseTo(0.1);
    expect(second.points[0][1]).toBeCloseTo(0.2);
  });

  it('raises ApiError with the server detail body on domain errors', async () => {
    vi.stubGlobal(
      'fetch',
      vi.fn(async () => {
        return new Response(
          JSON.stringify({
            error: { code: 'BadRange', message: 'hi must exceed lo', stage: 'sweep' },
          }),
          { status: 422 },
        );
      }),
    );

    const client = new ApiClient('');
    await expect(
      client.curve('m1', FIXTURE_SCENARIO, { id: 'c1', overrides: {} }, 'sumPumpPow', 9, 1, 5),
    ).rejects.toSatisfy((err: unknown) => {
      expect(err).toBeInstanceOf(ApiError);
      const e = err as ApiError;
      expect(e.status).toBe(422);
      expect(e.detail.code).toBe('BadRange');
      expect(e.detail.stage).toBe('sweep');
      return true;
    });
  });

  it('fetches the schema map', async () => {
    vi.stubGlobal('fetch', vi.fn(fixtureFetch({ '/schemas': { reference: [] } })));
    const client = new ApiClient('');
    const schemas = await client.getSchemas();
    expect(schemas).toHaveProperty('reference');
  });
});

describe('LatestRequestGate', () => {
  it('aborts the previous request when a newer one starts', async () => {
    const gate = new LatestRequestGate();
    const seen: AbortSignal[] = [];

    const slow = gate
      .run(
        (signal) =>
          new Promise((resolve, reject) => {
            seen.push(signal);
            signal.addEventListener('abort', () => reject(new DOMException('x', 'AbortError')));
          }),
      )
      .catch((e: DOMException) => e.name);

    const fast = gate.run(async (signal) => {
      seen.push(signal);
      return 'done';
    });

    expect(await fast).toBe('done');
    expect(await slow).toBe('AbortError');
    expect(seen[0].aborted).toBe(true);
    expect(seen[1].aborted).toBe(false);
  });
});
