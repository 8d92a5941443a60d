import { ApiClient, ApiError, LatestRequestGate } from './api.js';
import { columnPalette, paletteByCategory } from './palette.js';
import {
  UiScenarioDraft,
  buildWhatifRequest,
  canSubmit,
  emptyDraft,
  renderError,
  renderRankedTable,
  validateCellInput,
} from './scenarioView.js';
import { renderCurveChart, validateRange } from './curveView.js';
import type { CellValue, ColumnSpec, ObjectType } from './types.js';

/**
 * Browser wiring for the three-pane workflow: scenario setup, candidate
 * editing, results and curves. All heavy lifting lives in the pure
 * render/build helpers; this file only connects them to the DOM.
 */

const client = new ApiClient(
  (document.querySelector('meta[name="api-base"]') as HTMLMetaElement | null)?.content ?? '',
);
const whatifGate = new LatestRequestGate();
const curveGate = new LatestRequestGate();

let schema: ColumnSpec[] = [];
const draft: UiScenarioDraft = emptyDraft();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function showError(target: HTMLElement, err: unknown): void {
  if (err instanceof DOMException && err.name === 'AbortError') return;
  if (err instanceof ApiError) {
    target.innerHTML = renderError(err.detail);
  } else {
    target.textContent = String(err);
  }
}

function currentPalette(): ColumnSpec[] {
  if (!draft.objectType) return [];
  return columnPalette(schema, draft.objectType);
}

function refreshPalette(): void {
  const palette = currentPalette();
  const box = el('palette');
  const groups = paletteByCategory(palette);
  const html: string[] = [];
  for (const [category, cols] of groups) {
    html.push(`<h3>${category}</h3><ul>`);
    for (const c of cols) {
      html.push(`<li data-column="${c.name}"><code>${c.name}</code> <small>${c.kind}${c.unit ? `, ${c.unit}` : ''}</small></li>`);
    }
    html.push('</ul>');
  }
  box.innerHTML = html.join('');

  const options = palette
    .map((c) => `<option value="${c.name}">${c.name}</option>`)
    .join('');
  (el('fixed-column') as HTMLSelectElement).innerHTML = options;
  (el('limit-column') as HTMLSelectElement).innerHTML = options;
  (el('sweep-parameter') as HTMLSelectElement).innerHTML = palette
    .filter((c) => c.kind === 'numeric')
    .map((c) => `<option value="${c.name}">${c.name}</option>`)
    .join('');
}

function refreshSubmitState(): void {
  (el('run-whatif') as HTMLButtonElement).disabled = !canSubmit(draft);
  (el('run-sweep') as HTMLButtonElement).disabled = !canSubmit(draft);
}

function refreshDraftView(): void {
  el('fixed-values').textContent = JSON.stringify(draft.fixedValues, null, 2);
  el('limits').textContent = JSON.stringify(draft.limits, null, 2);
  el('candidates').textContent = JSON.stringify(draft.candidates, null, 2);
  refreshSubmitState();
}

function parseCell(column: ColumnSpec, raw: string): CellValue {
  return column.kind === 'categorical' ? raw.trim() : Number(raw.trim());
}

function columnByName(name: string): ColumnSpec | undefined {
  return currentPalette().find((c) => c.name === name);
}

async function onTrain(): Promise<void> {
  const status = el('train-status');
  try {
    const csv = (el('dataset-csv') as HTMLTextAreaElement).value;
    const uploaded = await client.uploadDataset(csv);
    const seed = Number((el('train-seed') as HTMLInputElement).value) || 0;
    const trained = await client.trainModel({
      dataset_id: uploaded.dataset_id,
      object_type: draft.objectType ?? 'BoilerHouse',
      seed,
    });
    draft.modelId = trained.model_id;
    status.textContent = `model ${trained.model_id}: r2=${trained.metrics.r2.toFixed(5)}, rae=${trained.metrics.rae.toFixed(5)}`;
    refreshSubmitState();
  } catch (err) {
    showError(status, err);
  }
}

function onAddFixed(): void {
  const name = (el('fixed-column') as HTMLSelectElement).value;
  const raw = (el('fixed-value') as HTMLInputElement).value;
  const column = columnByName(name);
  if (!column) return;
  const problem = validateCellInput(column, raw);
  if (problem) {
    el('scenario-status').textContent = problem;
    return;
  }
  draft.fixedValues[name] = parseCell(column, raw);
  el('scenario-status').textContent = '';
  refreshDraftView();
}

function onAddLimit(): void {
  const name = (el('limit-column') as HTMLSelectElement).value;
  const lo = (el('limit-min') as HTMLInputElement).value.trim();
  const hi = (el('limit-max') as HTMLInputElement).value.trim();
  const limit: { min?: number; max?: number } = {};
  if (lo !== '') limit.min = Number(lo);
  if (hi !== '') limit.max = Number(hi);
  draft.limits[name] = limit;
  refreshDraftView();
}

function onAddCandidate(): void {
  const id = (el('candidate-id') as HTMLInputElement).value.trim();
  const status = el('scenario-status');
  let overrides: Record<string, CellValue>;
  try {
    overrides = JSON.parse((el('candidate-overrides') as HTMLTextAreaElement).value || '{}');
  } catch {
    status.textContent = 'overrides must be a JSON object';
    return;
  }
  if (!id) {
    status.textContent = 'candidate id required';
    return;
  }
  draft.candidates.push({ id, overrides });
  status.textContent = '';
  refreshDraftView();
}

async function onWhatif(): Promise<void> {
  const target = el('results');
  try {
    const req = buildWhatifRequest(draft);
    const report = await whatifGate.run((signal) =>
      client.whatIf(req.modelId, req.scenario, req.candidates, signal),
    );
    target.innerHTML = renderRankedTable(report);
  } catch (err) {
    showError(target, err);
  }
}

async function onSweep(): Promise<void> {
  const target = el('curve');
  const range = {
    lo: Number((el('sweep-lo') as HTMLInputElement).value),
    hi: Number((el('sweep-hi') as HTMLInputElement).value),
    steps: Number((el('sweep-steps') as HTMLInputElement).value),
  };
  const problem = validateRange(range);
  if (problem) {
    target.textContent = problem;
    return;
  }
  try {
    const req = buildWhatifRequest(draft);
    const parameter = (el('sweep-parameter') as HTMLSelectElement).value;
    const curve = await curveGate.run((signal) =>
      client.curve(
        req.modelId,
        req.scenario,
        req.candidates[0],
        parameter,
        range.lo,
        range.hi,
        range.steps,
        signal,
      ),
    );
    target.innerHTML = renderCurveChart(curve, columnByName(parameter));
  } catch (err) {
    showError(target, err);
  }
}

async function boot(): Promise<void> {
  const schemas = await client.getSchemas();
  schema = schemas['reference'] ?? [];

  el('object-type').addEventListener('change', (ev) => {
    draft.objectType = (ev.target as HTMLSelectElement).value as ObjectType;
    draft.fixedValues = {};
    draft.limits = {};
    refreshPalette();
    refreshDraftView();
  });
  el('train').addEventListener('click', () => void onTrain());
  el('add-fixed').addEventListener('click', onAddFixed);
  el('add-limit').addEventListener('click', onAddLimit);
  el('add-candidate').addEventListener('click', onAddCandidate);
  el('run-whatif').addEventListener('click', () => void onWhatif());
  el('run-sweep').addEventListener('click', () => void onSweep());
  refreshSubmitState();
}

void boot();
