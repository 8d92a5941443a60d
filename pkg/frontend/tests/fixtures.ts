import type { ColumnSpec, DecisionReport, ScenarioPayload } from '../src/types.js';

function col(
  name: string,
  kind: ColumnSpec['kind'],
  applicability: ColumnSpec['applicability'],
  extra: Partial<ColumnSpec> = {},
): ColumnSpec {
  return {
    name,
    kind,
    unit: '',
    category: 'technical',
    applicability,
    is_target: false,
    allowed_values: [],
    ...extra,
  };
}

/** Compact stand-in for the reference schema, covering every applicability. */
export const FIXTURE_COLUMNS: ColumnSpec[] = [
  col('Num', 'numeric', 'common', { category: 'identity' }),
  col('isCGP', 'boolean', 'common', { category: 'identity' }),
  col('mCO', 'numeric', 'common', { is_target: true, unit: 't/MWh' }),
  col('fuel', 'categorical', 'common', {
    allowed_values: ['gas', 'coal', 'biomass', 'oil'],
    category: 'fuel',
  }),
  col('sumPumpPow', 'numeric', 'common', { unit: 'kW' }),
  col('boilerEff', 'numeric', 'common'),
  col('numTurb', 'numeric', 'cgp_only'),
  col('eeBoilCGP', 'categorical', 'cgp_only', { allowed_values: ['A', 'B', 'C', 'D'] }),
  col('weathReg', 'boolean', 'boiler_house_only'),
  col('avgTempOutBH', 'numeric', 'boiler_house_only', { unit: 'degC' }),
];

export const FIXTURE_SCENARIO: ScenarioPayload = {
  object_type: 'BoilerHouse',
  fixed_values: { fuel: 'gas' },
  limits: {},
  label: 'test',
};

export function whatifReport(overrides: Partial<DecisionReport> = {}): DecisionReport {
  return {
    scenario: FIXTURE_SCENARIO,
    ranked: [
      { candidate_id: 'c2', predicted_mco: 0.2, feasible: true, violated_limits: [], rank: 1 },
      { candidate_id: 'c1', predicted_mco: 0.4, feasible: true, violated_limits: [], rank: 2 },
      { candidate_id: 'c3', predicted_mco: 0.9, feasible: true, violated_limits: [], rank: 3 },
    ],
    selected: 'c2',
    metrics: null,
    ...overrides,
  };
}

export function allInfeasibleReport(): DecisionReport {
  return whatifReport({
    ranked: [
      {
        candidate_id: 'c1',
        predicted_mco: 0.4,
        feasible: false,
        violated_limits: ['sumPumpPow'],
        rank: null,
      },
      {
        candidate_id: 'c2',
        predicted_mco: 0.2,
        feasible: false,
        violated_limits: ['sumPumpPow', 'fuel'],
        rank: null,
      },
    ],
    selected: null,
  });
}

/** Builds a fetch stub that replies from a path-suffix -> JSON body table. */
export function fixtureFetch(routes: Record<string, unknown>): typeof fetch {
  return (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    if (init?.signal?.aborted) {
      throw new DOMException('aborted', 'AbortError');
    }
    for (const [suffix, body] of Object.entries(routes)) {
      if (url.endsWith(suffix)) {
        return new Response(JSON.stringify(body), {
          status: 200,
          headers: { 'Content-Type': 'application/json' },
        });
      }
    }
    return new Response(JSON.stringify({ error: { code: 'NotFound', message: url } }), {
      status: 404,
    });
  }) as typeof fetch;
}
