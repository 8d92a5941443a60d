export type ObjectType = 'BoilerHouse' | 'CogenerationPlant';

export interface ColumnSpec {
  name: string;
  kind: 'numeric' | 'boolean' | 'categorical';
  unit: string;
  category: string;
  applicability: 'common' | 'cgp_only' | 'boiler_house_only';
  is_target: boolean;
  allowed_values: string[];
}

export type CellValue = number | string;

export interface LimitSpec {
  min?: number;
  max?: number;
  allowed?: string[];
}

export interface ScenarioPayload {
  object_type: ObjectType;
  fixed_values: Record<string, CellValue>;
  limits: Record<string, LimitSpec>;
  label: string;
}

export interface CandidatePayload {
  id: string;
  overrides: Record<string, CellValue>;
}

export interface RankedCandidate {
  candidate_id: string;
  predicted_mco: number;
  feasible: boolean;
  violated_limits: string[];
  rank: number | null;
}

export interface Metrics {
  mae: number;
  mse: number;
  rmse: number;
  rae: number;
  rse: number;
  r2: number;
  n: number;
}

export interface DecisionReport {
  scenario: ScenarioPayload;
  ranked: RankedCandidate[];
  selected: string | null;
  metrics: Metrics | null;
}

export interface CurvePayload {
  parameter: string;
  points: [number, number][];
  scenario: ScenarioPayload;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  stage?: string;
  column?: string;
  row?: number;
}
