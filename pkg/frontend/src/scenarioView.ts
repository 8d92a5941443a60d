import type {
  ApiErrorBody,
  CandidatePayload,
  CellValue,
  ColumnSpec,
  DecisionReport,
  LimitSpec,
  ObjectType,
  ScenarioPayload,
} from './types.js';

/** Form state accumulated while the user assembles a what-if scenario. */
export interface UiScenarioDraft {
  objectType: ObjectType | null;
  modelId: string | null;
  label: string;
  fixedValues: Record<string, CellValue>;
  limits: Record<string, LimitSpec>;
  candidates: CandidatePayload[];
}

export function emptyDraft(): UiScenarioDraft {
  return {
    objectType: null,
    modelId: null,
    label: '',
    fixedValues: {},
    limits: {},
    candidates: [],
  };
}

/** Submission is gated on object type, a trained model, and at least one candidate. */
export function canSubmit(draft: UiScenarioDraft): boolean {
  return draft.objectType !== null && draft.modelId !== null && draft.candidates.length >= 1;
}

/**
 * Client-side check that a raw input string fits the column's kind.
 * Returns an error message, or null when the value is acceptable.
 */
export function validateCellInput(column: ColumnSpec, raw: string): string | null {
  const text = raw.trim();
  if (text === '') return 'value required';
  if (column.kind === 'numeric') {
    return Number.isFinite(Number(text)) ? null : `${column.name} must be a number`;
  }
  if (column.kind === 'boolean') {
    return text === '0' || text === '1' ? null : `${column.name} must be 0 or 1`;
  }
  return column.allowed_values.includes(text)
    ? null
    : `${column.name} must be one of ${column.allowed_values.join(', ')}`;
}

export function buildWhatifRequest(draft: UiScenarioDraft): {
  modelId: string;
  scenario: ScenarioPayload;
  candidates: CandidatePayload[];
} {
  if (!canSubmit(draft) || draft.objectType === null || draft.modelId === null) {
    throw new Error('scenario draft is incomplete');
  }
  return {
    modelId: draft.modelId,
    scenario: {
      object_type: draft.objectType,
      fixed_values: { ...draft.fixedValues },
      limits: { ...draft.limits },
      label: draft.label || 'scenario',
    },
    candidates: draft.candidates.map((c) => ({ id: c.id, overrides: { ...c.overrides } })),
  };
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

/**
 * Renders a decision report as a ranked table. The selected candidate's
 * row carries the "selected" class; infeasible candidates list their
 * violated limits. When nothing is feasible a banner says so.
 */
export function renderRankedTable(report: DecisionReport): string {
  const parts: string[] = [];
  if (report.selected === null) {
    parts.push('<div class="banner banner-warn">No feasible candidate under the given limits.</div>');
  }
  parts.push('<table class="ranked"><thead><tr>');
  parts.push('<th>rank</th><th>candidate</th><th>predicted mCO</th><th>feasible</th><th>violations</th>');
  parts.push('</tr></thead><tbody>');
  for (const rc of report.ranked) {
    const isSelected = report.selected !== null && rc.candidate_id === report.selected;
    const cls = isSelected ? ' class="selected"' : '';
    const rank = rc.rank === null ? '&ndash;' : String(rc.rank);
    const violations = rc.violated_limits.map(escapeHtml).join(', ');
    parts.push(
      `<tr${cls} data-candidate="${escapeHtml(rc.candidate_id)}">` +
        `<td>${rank}</td>` +
        `<td>${escapeHtml(rc.candidate_id)}${isSelected ? ' <span class="badge">selected</span>' : ''}</td>` +
        `<td>${rc.predicted_mco.toFixed(5)}</td>` +
        `<td>${rc.feasible ? 'yes' : 'no'}</td>` +
        `<td>${violations}</td>` +
        '</tr>',
    );
  }
  parts.push('</tbody></table>');
  return parts.join('');
}

/** Renders a server error with its stage/column detail, never swallowing it. */
export function renderError(detail: ApiErrorBody): string {
  const bits = [escapeHtml(detail.message)];
  if (detail.stage) bits.push(`stage: ${escapeHtml(detail.stage)}`);
  if (detail.column) bits.push(`column: ${escapeHtml(detail.column)}`);
  if (detail.row !== undefined) bits.push(`row: ${detail.row}`);
  return `<div class="banner banner-error">${escapeHtml(detail.code)}: ${bits.join(' &middot; ')}</div>`;
}
