import type { ColumnSpec, CurvePayload } from './types.js';

export interface CurveRange {
  lo: number;
  hi: number;
  steps: number;
}

/** Validates sweep range inputs before they reach the server. */
export function validateRange(range: CurveRange): string | null {
  if (!Number.isFinite(range.lo) || !Number.isFinite(range.hi)) return 'bounds must be numbers';
  if (range.hi <= range.lo) return 'upper bound must exceed lower bound';
  if (!Number.isInteger(range.steps) || range.steps < 1) return 'steps must be a positive integer';
  return null;
}

const WIDTH = 640;
const HEIGHT = 360;
const PAD = 48;

function fmt(x: number): string {
  return Number(x.toPrecision(4)).toString();
}

/**
 * Renders a parameter-sweep curve as an inline SVG line chart: the
 * swept parameter on the x axis, predicted specific CO2 emissions on
 * the y axis. Pure string rendering so it is testable without a DOM.
 */
export function renderCurveChart(curve: CurvePayload, column?: ColumnSpec): string {
  const pts = curve.points;
  if (pts.length === 0) return '<div class="banner banner-warn">Curve has no points.</div>';
  const xs = pts.map((p) => p[0]);
  const ys = pts.map((p) => p[1]);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(...ys);
  const yMax = Math.max(...ys);
  const xSpan = xMax - xMin || 1;
  const ySpan = yMax - yMin || 1;

  const sx = (x: number) => PAD + ((x - xMin) / xSpan) * (WIDTH - 2 * PAD);
  const sy = (y: number) => HEIGHT - PAD - ((y - yMin) / ySpan) * (HEIGHT - 2 * PAD);
  const polyline = pts.map(([x, y]) => `${sx(x).toFixed(1)},${sy(y).toFixed(1)}`).join(' ');

  const unit = column && column.unit ? ` (${column.unit})` : '';
  const xLabel = `${curve.parameter}${unit}`;
  const yLabel = 'specific CO₂ emissions';

  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" class="curve-chart" role="img" aria-label="${xLabel} sweep">` +
    `<line x1="${PAD}" y1="${HEIGHT - PAD}" x2="${WIDTH - PAD}" y2="${HEIGHT - PAD}" class="axis"/>` +
    `<line x1="${PAD}" y1="${PAD}" x2="${PAD}" y2="${HEIGHT - PAD}" class="axis"/>` +
    `<text x="${WIDTH / 2}" y="${HEIGHT - 8}" text-anchor="middle" class="axis-label">${xLabel}</text>` +
    `<text x="14" y="${HEIGHT / 2}" text-anchor="middle" transform="rotate(-90 14 ${HEIGHT / 2})" class="axis-label">${yLabel}</text>` +
    `<text x="${PAD}" y="${HEIGHT - PAD + 16}" class="tick">${fmt(xMin)}</text>` +
    `<text x="${WIDTH - PAD}" y="${HEIGHT - PAD + 16}" text-anchor="end" class="tick">${fmt(xMax)}</text>` +
    `<text x="${PAD - 4}" y="${HEIGHT - PAD}" text-anchor="end" class="tick">${fmt(yMin)}</text>` +
    `<text x="${PAD - 4}" y="${PAD + 4}" text-anchor="end" class="tick">${fmt(yMax)}</text>` +
    `<polyline points="${polyline}" fill="none" class="curve-line"/>` +
    pts.map(([x, y]) => `<circle cx="${sx(x).toFixed(1)}" cy="${sy(y).toFixed(1)}" r="3" class="curve-point"/>`).join('') +
    '</svg>'
  );
}
