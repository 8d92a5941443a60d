import { describe, expect, it } from 'vitest';
import { renderCurveChart, validateRange } from '../src/curveView.js';
import { FIXTURE_COLUMNS, FIXTURE_SCENARIO } from './fixtures.js';
import type { CurvePayload } from '../src/types.js';

function curveOf(points: [number, number][]): CurvePayload {
  return { parameter: 'sumPumpPow', points, scenario: FIXTURE_SCENARIO };
}

describe('validateRange', () => {
  it('accepts a sane range', () => {
    expect(validateRange({ lo: 100, hi: 900, steps: 5 })).toBeNull();
  });

  it('rejects inverted or degenerate bounds', () => {
    expect(validateRange({ lo: 900, hi: 100, steps: 5 })).toMatch(/exceed/);
    expect(validateRange({ lo: 100, hi: 100, steps: 5 })).toMatch(/exceed/);
  });

  it('rejects non-numeric bounds and bad step counts', () => {
    expect(validateRange({ lo: NaN, hi: 1, steps: 5 })).toMatch(/numbers/);
    expect(validateRange({ lo: 0, hi: 1, steps: 0 })).toMatch(/positive integer/);
    expect(validateRange({ lo: 0, hi: 1, steps: 2.5 })).toMatch(/positive integer/);
  });
});

describe('renderCurveChart', () => {
  it('plots steps+1 points for a 5-step sweep', () => {
    const pts: [number, number][] = Array.from({ length: 6 }, (_, i) => [
      100 + i * 160,
      0.3 + 0.01 * i,
    ]);
    const html = renderCurveChart(curveOf(pts));
    expect((html.match(/<circle /g) ?? []).length).toBe(6);
    const polyline = html.match(/<polyline points="([^"]+)"/);
    expect(polyline![1].split(' ').length).toBe(6);
  });

  it('renders monotone values as a monotone polyline', () => {
    const pts: [number, number][] = [
      [0, 0.5],
      [1, 0.4],
      [2, 0.3],
      [3, 0.2],
    ];
    const html = renderCurveChart(curveOf(pts));
    const coords = html
      .match(/<polyline points="([^"]+)"/)![1]
      .split(' ')
      .map((p) => p.split(',').map(Number));
    const xs = coords.map((c) => c[0]);
    const ys = coords.map((c) => c[1]);
    for (let i = 1; i < coords.length; i++) {
      expect(xs[i]).toBeGreaterThan(xs[i - 1]);
      expect(ys[i]).toBeGreaterThan(ys[i - 1]);
    }
  });

  it('labels both axes, including the column unit', () => {
    const column = FIXTURE_COLUMNS.find((c) => c.name === 'sumPumpPow')!;
    const html = renderCurveChart(curveOf([[0, 0.1], [1, 0.2]]), column);
    expect(html).toContain('sumPumpPow (kW)');
    expect(html).toContain('specific CO₂ emissions');
  });

  it('handles an empty curve without throwing', () => {
    expect(renderCurveChart(curveOf([]))).toContain('no points');
  });
});
