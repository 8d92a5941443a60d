import type {
  ApiErrorBody,
  CandidatePayload,
  ColumnSpec,
  CurvePayload,
  DecisionReport,
  Metrics,
  ScenarioPayload,
} from './types.js';

/** Server-reported domain error, carrying stage/column detail. */
export class ApiError extends Error {
  readonly detail: ApiErrorBody;
  readonly status: number;

  constructor(status: number, detail: ApiErrorBody) {
    super(detail.message);
    this.status = status;
    this.detail = detail;
  }
}

async function parseResponse<T>(res: Response): Promise<T> {
  if (res.ok) return res.json() as Promise<T>;
  let detail: ApiErrorBody;
  try {
    const body = await res.json();
    detail = body.error ?? { code: 'HttpError', message: res.statusText };
  } catch {
    detail = { code: 'HttpError', message: res.statusText };
  }
  throw new ApiError(res.status, detail);
}

/**
 * Thin typed client for the decision-support API. The UI never computes
 * predictions itself; every number it shows comes through this client.
 */
export class ApiClient {
  constructor(readonly baseUrl: string = '') {}

  private async post<T>(path: string, body: unknown, signal?: AbortSignal): Promise<T> {
    const res = await fetch(`${this.baseUrl}${path}`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
      signal,
    });
    return parseResponse<T>(res);
  }

  async getSchemas(): Promise<Record<string, ColumnSpec[]>> {
    const res = await fetch(`${this.baseUrl}/schemas`);
    return parseResponse(res);
  }

  async uploadDataset(csv: string): Promise<{ dataset_id: string; rows: number }> {
    const res = await fetch(`${this.baseUrl}/datasets`, {
      method: 'POST',
      headers: { 'Content-Type': 'text/csv' },
      body: csv,
    });
    return parseResponse(res);
  }

  async trainModel(body: {
    dataset_id: string;
    object_type: string;
    seed: number;
    hyperparameters?: Record<string, number>;
    train_fraction?: number;
  }): Promise<{ model_id: string; metrics: Metrics }> {
    return this.post('/models', body);
  }

  async getMetrics(modelId: string): Promise<Metrics> {
    const res = await fetch(`${this.baseUrl}/models/${modelId}/metrics`);
    return parseResponse(res);
  }

  async whatIf(
    modelId: string,
    scenario: ScenarioPayload,
    candidates: CandidatePayload[],
    signal?: AbortSignal,
  ): Promise<DecisionReport> {
    return this.post(`/models/${modelId}/whatif`, { scenario, candidates }, signal);
  }

  async curve(
    modelId: string,
    scenario: ScenarioPayload,
    base: CandidatePayload,
    parameter: string,
    lo: number,
    hi: number,
    steps: number,
    signal?: AbortSignal,
  ): Promise<CurvePayload> {
    return this.post(
      `/models/${modelId}/curve`,
      { scenario, base, parameter, lo, hi, steps },
      signal,
    );
  }
}

/**
 * Serializes submissions so at most one what-if/curve request is in
 * flight; a newer submission aborts the previous one.
 */
export class LatestRequestGate {
  private controller: AbortController | null = null;

  async run<T>(task: (signal: AbortSignal) => Promise<T>): Promise<T> {
    this.controller?.abort();
    this.controller = new AbortController();
    return task(this.controller.signal);
  }
}
