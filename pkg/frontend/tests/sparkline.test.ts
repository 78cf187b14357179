import { describe, expect, test } from 'vitest';

import { seriesMax, sparklinePath, sparklineSvg } from '../src/sparkline';

const GEO = { width: 100, height: 40, pad: 0 };

describe('sparklinePath', () => {
  test('continuous series yields one M and line segments', () => {
    const d = sparklinePath([0.1, 0.2, 0.3], 0.3, GEO);
    expect(d.match(/M/g)?.length).toBe(1);
    expect(d.match(/L/g)?.length).toBe(2);
  });

  test('null values break the line into gaps, never zeros', () => {
    const d = sparklinePath([0.1, null, 0.3, 0.2], 0.3, GEO);
    // Two segments: the pen lifts over the missing day.
    expect(d.match(/M/g)?.length).toBe(2);
    expect(d.match(/L/g)?.length).toBe(1);
    // The missing day's x position appears in no command.
    const xs = [...d.matchAll(/[ML]([\d.]+) /g)].map((m) => Number(m[1]));
    const step = GEO.width / 3;
    expect(xs).not.toContain(step);
  });

  test('all-null or empty series yields an empty path', () => {
    expect(sparklinePath([null, null], 1, GEO)).toBe('');
    expect(sparklinePath([], 1, GEO)).toBe('');
  });

  test('higher proportion plots higher (smaller y)', () => {
    const d = sparklinePath([0.1, 0.3], 0.3, GEO);
    const ys = [...d.matchAll(/[ML][\d.]+ ([\d.]+)/g)].map((m) => Number(m[1]));
    expect(ys[1]).toBeLessThan(ys[0]);
  });
});

describe('seriesMax', () => {
  test('shared max across both series, ignoring nulls', () => {
    expect(seriesMax([0.1, null], [0.05, 0.2])).toBeCloseTo(0.2);
    expect(seriesMax([null], [null])).toBe(0);
  });
});

describe('sparklineSvg', () => {
  test('renders two paths with class names', () => {
    const svg = sparklineSvg([0.1, 0.2], [0.05, null]);
    expect(svg).toContain('spark-female');
    expect(svg).toContain('spark-male');
    expect(svg.startsWith('<svg')).toBe(true);
  });
});
